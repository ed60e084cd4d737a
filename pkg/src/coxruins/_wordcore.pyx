# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word-rewriting kernel.

Twin of _wordcore_py; see that module for the algorithm.  The two backends
must agree letter-for-letter; tests/test_kernel_parity.py enforces this.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_GET_SIZE, PyBytes_FromStringAndSize
from libc.string cimport memcmp, memcpy

from .errors import WordTooLong

BACKEND = "cython"


cdef inline Py_ssize_t _square_index(const char *buf, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i
    for i in range(n - 1):
        if buf[i] == buf[i + 1]:
            return i
    return -1


cdef bytes _delete_pair(const char *buf, Py_ssize_t n, Py_ssize_t i):
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n - 2)
    cdef char *dst = PyBytes_AS_STRING(out)
    memcpy(dst, buf, i)
    memcpy(dst + i, buf + i + 2, n - i - 2)
    return out


cdef bytes _splice(const char *buf, Py_ssize_t n, Py_ssize_t pos,
                   const char *rep, Py_ssize_t m):
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n)
    cdef char *dst = PyBytes_AS_STRING(out)
    memcpy(dst, buf, pos)
    memcpy(dst + pos, rep, m)
    memcpy(dst + pos + m, buf + pos + m, n - pos - m)
    return out


cdef class WordKernel:
    cdef readonly int n
    cdef readonly long word_cap
    cdef readonly long memo_budget
    cdef dict _memo
    cdef tuple _moves          # per letter: tuple of (pattern, replacement)
    cdef public str backend

    def __init__(self, rows, word_cap=1_000_000, memo_budget=2_000_000):
        cdef int a, b, m, i
        self.n = len(rows)
        self.word_cap = word_cap
        self.memo_budget = memo_budget
        self._memo = {b"": b""}
        self.backend = BACKEND
        moves = []
        for a in range(self.n):
            per_letter = []
            for b in range(self.n):
                m = rows[a][b]
                if b != a and m >= 2:
                    pat = bytes((a if i % 2 == 0 else b) for i in range(m))
                    rep = bytes((b if i % 2 == 0 else a) for i in range(m))
                    per_letter.append((pat, rep))
            moves.append(tuple(per_letter))
        self._moves = tuple(moves)

    def normal_form(self, bytes word):
        memo = self._memo
        res = memo.get(word)
        if res is not None:
            return res
        chain = []
        current = word
        while True:
            chain.append(current)
            kind, payload, seen = self._saturate(current)
            if kind == 0:       # memo hit
                res = payload
                break
            if kind == 1:       # reduced
                res = payload
                if len(memo) + len(seen) <= self.memo_budget:
                    for x in seen:
                        memo[x] = res
                break
            res = memo.get(payload)
            if res is not None:
                break
            current = payload
        for x in chain:
            memo[x] = res
        memo[res] = res
        return res

    cdef tuple _saturate(self, bytes word):
        cdef const char *buf = PyBytes_AS_STRING(word)
        cdef Py_ssize_t n = PyBytes_GET_SIZE(word)
        cdef Py_ssize_t i = _square_index(buf, n)
        if i >= 0:
            return (2, _delete_pair(buf, n, i), None)
        memo = self._memo
        moves = self._moves
        cdef long cap = self.word_cap
        seen = {word}
        queue = [word]
        best = word
        cdef Py_ssize_t qi = 0
        cdef Py_ssize_t pos, m, j
        cdef const char *xbuf
        cdef const char *pbuf
        cdef bytes x, y, pat, rep
        while qi < len(queue):
            x = <bytes>queue[qi]
            qi += 1
            xbuf = PyBytes_AS_STRING(x)
            n = PyBytes_GET_SIZE(x)
            for pos in range(n):
                for pat, rep in <tuple>moves[<unsigned char>xbuf[pos]]:
                    m = PyBytes_GET_SIZE(pat)
                    if pos + m > n:
                        continue
                    pbuf = PyBytes_AS_STRING(pat)
                    if memcmp(xbuf + pos, pbuf, m) != 0:
                        continue
                    y = _splice(xbuf, n, pos, PyBytes_AS_STRING(rep), m)
                    if y in seen:
                        continue
                    hit = memo.get(y)
                    if hit is not None:
                        return (0, hit, None)
                    j = _square_index(PyBytes_AS_STRING(y), n)
                    if j >= 0:
                        return (2, _delete_pair(PyBytes_AS_STRING(y), n, j), None)
                    seen.add(y)
                    queue.append(y)
                    if y < best:
                        best = y
                    # x may have been moved by the list resize; refresh
                    xbuf = PyBytes_AS_STRING(x)
            if len(seen) > cap:
                raise WordTooLong(
                    f"braid class of a word of length {PyBytes_GET_SIZE(word)} "
                    f"exceeds cap {cap}"
                )
        return (1, best, seen)

    def reduced_expressions(self, bytes word):
        start = self.normal_form(word)
        moves = self._moves
        cdef long cap = self.word_cap
        seen = {start}
        queue = [start]
        cdef Py_ssize_t qi = 0
        cdef Py_ssize_t pos, m, n
        cdef const char *xbuf
        cdef bytes x, y, pat, rep
        while qi < len(queue):
            x = <bytes>queue[qi]
            qi += 1
            xbuf = PyBytes_AS_STRING(x)
            n = PyBytes_GET_SIZE(x)
            for pos in range(n):
                for pat, rep in <tuple>moves[<unsigned char>xbuf[pos]]:
                    m = PyBytes_GET_SIZE(pat)
                    if pos + m > n:
                        continue
                    if memcmp(xbuf + pos, PyBytes_AS_STRING(pat), m) != 0:
                        continue
                    y = _splice(xbuf, n, pos, PyBytes_AS_STRING(rep), m)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
                        xbuf = PyBytes_AS_STRING(x)
            if len(seen) > cap:
                raise WordTooLong(
                    f"reduced class of a word of length {len(start)} "
                    f"exceeds cap {cap}"
                )
        return sorted(seen)
