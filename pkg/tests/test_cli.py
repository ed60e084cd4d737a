"""The coxeter command line, driven through main()."""

import json

import pytest

from coxruins import catalog
from coxruins.cli import main


@pytest.fixture()
def write_system(tmp_path):
    def _write(M, name="system.json"):
        path = tmp_path / name
        path.write_text(json.dumps(M.to_json_dict()))
        return str(path)

    return _write


class TestCheckSystem:
    def test_valid(self, write_system, capsys):
        path = write_system(catalog.example_triple())
        assert main(["check-system", path]) == 0
        out = capsys.readouterr().out
        assert "even: yes" in out
        assert "spherical subsets: 6" in out

    def test_invalid_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"generators": ["s","t"], "matrix": [[1,1],[1,1]]}')
        assert main(["check-system", str(path)]) == 2
        assert "invalid" in capsys.readouterr().out

    def test_missing_file(self, capsys):
        assert main(["check-system", "/nonexistent.json"]) == 2


class TestEnumerate:
    def test_counts(self, write_system, capsys):
        path = write_system(catalog.dihedral(4))
        assert main(["enumerate", path, "--radius", "8"]) == 0
        out = capsys.readouterr().out
        assert "length 4: 1" in out
        assert "total: 8" in out

    def test_csv(self, write_system, capsys):
        path = write_system(catalog.dihedral(4))
        assert main(["enumerate", path, "--radius", "2", "--csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "length,word"
        assert "0,e" in lines[1]
        assert len(lines) == 1 + 5  # e, s, t, st, ts


class TestNerve:
    def test_f_vector_and_flags(self, write_system, capsys):
        path = write_system(catalog.right_angled_square())
        assert main(["nerve", path, "--flag", "--check-sphere", "1"]) == 0
        out = capsys.readouterr().out
        assert "f-vector: [4, 4]" in out
        assert "flag: yes" in out
        assert "sphere S^1: pass" in out

    def test_non_flag_witness(self, write_system, capsys):
        path = write_system(catalog.non_flag_triangle())
        main(["nerve", path, "--flag"])
        assert "flag: no" in capsys.readouterr().out


class TestBuildRuin:
    def test_report(self, write_system, tmp_path, capsys):
        path = write_system(catalog.example_triple())
        out_path = tmp_path / "report.json"
        code = main(["build-ruin", path, "--letter", "t",
                     "--radius", "6", "--out", str(out_path)])
        assert code == 0
        report = json.loads(out_path.read_text())
        assert report["letters"] == ["t"]
        assert report["omega_cells"] > 0
        assert report["boundary_components"] >= 1
        assert report["collars"] >= 1
        assert set(report["cells_by_type"]) >= {"e", "t", "s,t"}

    def test_two_letter(self, write_system, capsys):
        path = write_system(catalog.example_triple())
        assert main(["build-ruin", path, "--letters", "s,t",
                     "--radius", "6"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["letters"] == ["s", "t"]
        assert report["collars"] is None


class TestColor:
    def test_summary(self, write_system, capsys):
        path = write_system(catalog.example_triple())
        assert main(["color", path, "--letter", "t", "--radius", "8"]) == 0
        out = capsys.readouterr().out
        assert "colors: 4" in out
        assert "boundary components:" in out

    def test_dot(self, write_system, capsys):
        path = write_system(catalog.example_triple())
        assert main(["color", path, "--letter", "t", "--radius", "4",
                     "--dot"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("graph ruin {")
        assert "--" in out
        assert "parity=1" in out


class TestHomology:
    def test_nerve_space(self, write_system, capsys):
        path = write_system(catalog.right_angled_square())
        assert main(["homology", path, "--space", "nerve"]) == 0
        out = capsys.readouterr().out
        assert "b_0 = 1" in out and "b_1 = 1" in out

    def test_pair_space(self, write_system, capsys):
        path = write_system(catalog.dihedral(4))
        assert main(["homology", path, "--space", "pair", "--letters",
                     "s,t", "--radius", "8"]) == 0
        out = capsys.readouterr().out
        assert "b_2 = 1" in out

    def test_sigma_space(self, write_system, capsys):
        path = write_system(catalog.dihedral(4))
        assert main(["homology", path, "--space", "sigma",
                     "--radius", "8"]) == 0
        out = capsys.readouterr().out
        assert "b_0 = 1" in out


class TestEuler:
    def test_square_zero_with_sign_check(self, write_system, capsys):
        path = write_system(catalog.right_angled_square())
        assert main(["euler", path]) == 0
        out = capsys.readouterr().out
        assert "chi_orb = 0" in out
        assert ">= 0: yes" in out

    def test_all_four(self, write_system, capsys):
        path = write_system(catalog.square_all_4())
        main(["euler", path])
        assert "chi_orb = -1/2" in capsys.readouterr().out


class TestVerifyLemmas:
    def test_json_output_and_exit(self, write_system, capsys):
        path = write_system(catalog.example_triple())
        code = main(["verify-lemmas", path, "--radius", "8", "--json",
                     "--only", "L5.4,L5.8"])
        assert code == 0
        blob = json.loads(capsys.readouterr().out)
        assert [r["check_id"] for r in blob] == ["L5.4", "L5.8"]
        assert all(r["verdict"] == "pass" for r in blob)

    def test_text_output(self, write_system, capsys):
        path = write_system(catalog.mini_book())
        code = main(["verify-lemmas", path, "--radius", "10",
                     "--only", "L4.1,paint"])
        assert code == 0
        out = capsys.readouterr().out
        assert "L4.1" in out and "pass" in out

    def test_fail_exit_code(self, write_system, monkeypatch, capsys):
        from coxruins import harness

        def fake_suite(system, radius, only=None, ball_cap=None):
            return [harness.VerificationReport(
                check_id="L5.1", system=system.digest(),
                parameters={"radius": radius}, verdict="fail",
                witness={"reason": "forced"}, seconds=0.0, detail="forced",
            )]

        monkeypatch.setattr("coxruins.cli.harness.verify_suite", fake_suite)
        path = write_system(catalog.example_triple())
        assert main(["verify-lemmas", path, "--radius", "4"]) == 1

    def test_replay_is_identical(self, write_system, capsys):
        path = write_system(catalog.example_triple())
        main(["verify-lemmas", path, "--radius", "8", "--json",
              "--only", "C5.10"])
        first = json.loads(capsys.readouterr().out)
        main(["verify-lemmas", path, "--radius", "8", "--json",
              "--only", "C5.10"])
        second = json.loads(capsys.readouterr().out)
        for r in first + second:
            r.pop("seconds")
        assert first == second
