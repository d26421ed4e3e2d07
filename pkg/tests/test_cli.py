"""End-to-end tests of the command-line surface and its exit codes."""

import json

import pytest

from quatbrauer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    assert code == 0, err
    return json.loads(out)


class TestHilbert:
    def test_real_place(self, capsys):
        code, out, _ = run(capsys, "hilbert", "-a", "-1", "-b", "-1", "--real")
        assert code == 0 and "= -1" in out

    def test_finite_place(self, capsys):
        data = run_json(capsys, "hilbert", "-a", "2", "-b", "3", "-p", "3")
        assert data == {"place": "3", "symbol": -1}

    def test_all_places_product(self, capsys):
        data = run_json(capsys, "hilbert", "-a", "30", "-b", "-42", "--all")
        assert data["product"] == 1
        assert set(data["symbols"]) >= {"real", "2", "3", "5", "7"}

    def test_rational_input(self, capsys):
        data = run_json(capsys, "hilbert", "-a", "1/2", "-b", "2", "-p", "2")
        assert data["symbol"] in (-1, 1)

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "hilbert", "-a", "abc", "-b", "1", "--real")
        assert code == 2 and "parse error" in err

    def test_domain_error_exit_1(self, capsys):
        code, _, err = run(capsys, "hilbert", "-a", "0", "-b", "1", "--real")
        assert code == 1 and "error" in err


class TestBrq:
    def test_class(self, capsys):
        data = run_json(capsys, "brq", "class", "-a", "2", "-b", "5")
        assert data == {"invariants": [{"place": "2", "inv": "1/2"},
                                       {"place": "5", "inv": "1/2"}]}

    def test_ex65(self, capsys):
        data = run_json(capsys, "brq", "ex65", "-n", "5", "-p", "2,3,5,7")
        assert data["same_maximal_subfields"] is True
        assert data["same_subgroup"] is False
        assert data["equal"] is False

    def test_ex65_n2(self, capsys):
        data = run_json(capsys, "brq", "ex65", "-n", "2", "-p", "2,3,5,7")
        assert data["equal"] is True

    def test_ex65_bad_places(self, capsys):
        code, _, _ = run(capsys, "brq", "ex65", "-n", "3", "-p", "2,3,5")
        assert code == 1

    def test_samesub(self, capsys, tmp_path):
        f1 = tmp_path / "c1.json"
        f2 = tmp_path / "c2.json"
        f1.write_text(json.dumps({"invariants": [{"place": "2", "inv": "1/3"},
                                                 {"place": "3", "inv": "2/3"}]}))
        f2.write_text(json.dumps({"invariants": [{"place": "2", "inv": "2/3"},
                                                 {"place": "3", "inv": "1/3"}]}))
        data = run_json(capsys, "brq", "samesub", str(f1), str(f2))
        assert data["same_maximal_subfields"] is True

    def test_samesub_unequal_index_exit_1(self, capsys, tmp_path):
        f1 = tmp_path / "c1.json"
        f2 = tmp_path / "c2.json"
        f1.write_text(json.dumps({"invariants": [{"place": "2", "inv": "1/2"},
                                                 {"place": "3", "inv": "1/2"}]}))
        f2.write_text(json.dumps({"invariants": [{"place": "2", "inv": "1/3"},
                                                 {"place": "3", "inv": "2/3"}]}))
        code, _, err = run(capsys, "brq", "samesub", str(f1), str(f2))
        assert code == 1

    def test_bad_json_exit_2(self, capsys, tmp_path):
        f1 = tmp_path / "c1.json"
        f1.write_text("not json")
        code, _, _ = run(capsys, "brq", "samesub", str(f1), str(f1))
        assert code == 2

    def test_missing_file_exit_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "brq", "samesub",
                         str(tmp_path / "nope.json"), str(tmp_path / "nope.json"))
        assert code == 2

    def test_scale(self, capsys, tmp_path):
        f1 = tmp_path / "c.json"
        f1.write_text(json.dumps({"invariants": [{"place": "2", "inv": "1/3"},
                                                 {"place": "3", "inv": "2/3"}]}))
        data = run_json(capsys, "brq", "scale", str(f1), "-m", "2")
        assert data == {"invariants": [{"place": "2", "inv": "2/3"},
                                       {"place": "3", "inv": "1/3"}]}


class TestQx:
    def test_residues(self, capsys):
        data = run_json(capsys, "qx", "residues", "-f", "x", "-g", "3")
        assert data["ramified"] == ["x"]
        assert data["residues"]["x"]["trivial"] is False

    def test_isom_true(self, capsys):
        data = run_json(capsys, "qx", "isom", "-f1", "x", "-g1", "3",
                        "-f2", "x", "-g2", "12")
        assert data["isomorphic"] is True

    def test_isom_false_residue_witness(self, capsys):
        data = run_json(capsys, "qx", "isom", "-f1", "x", "-g1", "3",
                        "-f2", "x", "-g2", "5")
        assert data["isomorphic"] is False
        assert data["witness_place"] == "x"

    def test_isom_false_constant_witness(self, capsys):
        data = run_json(capsys, "qx", "isom", "-f1", "-1", "-g1", "-1",
                        "-f2", "2", "-g2", "5")
        assert data["isomorphic"] is False
        assert "witness_invariants" in data

    def test_specialize(self, capsys):
        data = run_json(capsys, "qx", "specialize", "-f", "x", "-g", "x+1",
                        "--at", "2")
        assert data["quaternion"] == {"a": "2", "b": "3"}

    def test_specialize_at_pole_exit_1(self, capsys):
        code, _, _ = run(capsys, "qx", "specialize", "-f", "x", "-g", "x+1",
                         "--at", "0")
        assert code == 1

    def test_rational_function_entries(self, capsys):
        data = run_json(capsys, "qx", "isom",
                        "-f1", "(x^2-1)/(x+2)", "-g1", "3",
                        "-f2", "(x^2-1)/(x+2)", "-g2", "27")
        assert data["isomorphic"] is True


class TestFfx:
    def test_residues(self, capsys):
        data = run_json(capsys, "ffx", "residues", "--char", "5",
                        "-f", "x", "-g", "2")
        assert data == {"char": 5, "ramified": ["x", "inf"]}

    def test_isom(self, capsys):
        data = run_json(capsys, "ffx", "isom", "--char", "5",
                        "-f1", "x", "-g1", "2", "-f2", "x", "-g2", "8")
        assert data["isomorphic"] is True

    def test_isom_witness(self, capsys):
        data = run_json(capsys, "ffx", "isom", "--char", "5",
                        "-f1", "x", "-g1", "2", "-f2", "x", "-g2", "4")
        assert data["isomorphic"] is False and "witness_place" in data

    def test_char_two_exit_1(self, capsys):
        code, _, _ = run(capsys, "ffx", "residues", "--char", "2",
                         "-f", "x", "-g", "1")
        assert code == 1


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "--seed", "1", "selftest", "--cases", "10")
    assert code == 0
    assert "all suites passed" in out


def test_selftest_json(capsys):
    data = run_json(capsys, "--seed", "1", "selftest", "--cases", "5")
    assert data["passed"] is True
    assert len(data["suites"]) == 7
