"""Pure-Python word-rewriting kernel.

Twin of the compiled module in _wordcore.pyx; both expose the same WordKernel
class and must agree letter-for-letter.  Words are bytes of generator
indices.  Normal forms are computed by saturating the braid-move class of a
word: if any member exposes an adjacent equal pair, delete it and recurse on
the shorter word; otherwise the class is the full set of reduced expressions
and the shortlex-least member is canonical.

The memo table maps words to canonical words.  It only grows, so concurrent
readers are safe under the GIL; writes happen while a single normal_form call
is in flight.
"""

from .errors import WordTooLong

BACKEND = "python"


def _square_index(word: bytes) -> int:
    for i in range(len(word) - 1):
        if word[i] == word[i + 1]:
            return i
    return -1


class WordKernel:
    backend = BACKEND

    def __init__(self, rows, word_cap: int = 1_000_000,
                 memo_budget: int = 2_000_000):
        self.n = len(rows)
        self.word_cap = word_cap
        self.memo_budget = memo_budget
        self._memo: dict[bytes, bytes] = {b"": b""}
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

    def normal_form(self, word: bytes) -> bytes:
        memo = self._memo
        res = memo.get(word)
        if res is not None:
            return res
        chain = []
        current = word
        while True:
            chain.append(current)
            kind, payload, seen = self._saturate(current)
            if kind == "memo":
                res = payload
                break
            if kind == "reduced":
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

    def _saturate(self, word: bytes):
        """Explore the braid-move class of `word`.

        Returns ("shorter", word_with_square_deleted, None) as soon as some
        member has an adjacent equal pair, ("memo", canonical, None) when a
        member with known normal form is met, or ("reduced", best, seen)
        after full closure.
        """
        i = _square_index(word)
        if i >= 0:
            return "shorter", word[:i] + word[i + 2:], None
        memo = self._memo
        moves = self._moves
        cap = self.word_cap
        seen = {word}
        queue = [word]
        best = word
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for pos in range(len(x)):
                for pat, rep in moves[x[pos]]:
                    if x[pos:pos + len(pat)] != pat:
                        continue
                    y = x[:pos] + rep + x[pos + len(pat):]
                    if y in seen:
                        continue
                    hit = memo.get(y)
                    if hit is not None:
                        return "memo", hit, None
                    j = _square_index(y)
                    if j >= 0:
                        return "shorter", y[:j] + y[j + 2:], None
                    seen.add(y)
                    queue.append(y)
                    if y < best:
                        best = y
            if len(seen) > cap:
                raise WordTooLong(
                    f"braid class of a word of length {len(word)} exceeds cap {cap}"
                )
        return "reduced", best, seen

    def reduced_expressions(self, word: bytes) -> list[bytes]:
        """All reduced expressions of the element of `word`, sorted."""
        start = self.normal_form(word)
        moves = self._moves
        cap = self.word_cap
        seen = {start}
        queue = [start]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for pos in range(len(x)):
                for pat, rep in moves[x[pos]]:
                    if x[pos:pos + len(pat)] != pat:
                        continue
                    y = x[:pos] + rep + x[pos + len(pat):]
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            if len(seen) > cap:
                raise WordTooLong(
                    f"reduced class of a word of length {len(start)} "
                    f"exceeds cap {cap}"
                )
        return sorted(seen)
