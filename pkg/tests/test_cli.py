import io
import sys

import pytest

from coisotropy.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_weyldim(capsys):
    code, out = run_cli(["weyldim", "G2", "1,0"], capsys)
    assert code == 0 and out.strip() == "7"
    code, out = run_cli(["weyldim", "E7", "0,0,0,0,0,0,1"], capsys)
    assert code == 0 and out.strip() == "56"


def test_weyldim_verbose(capsys):
    code, out = run_cli(["weyldim", "A1", "1", "--verbose"], capsys)
    assert code == 0 and "borel dimension 2" in out
    assert "quaternionic" in out


def test_mf_check(capsys):
    code, out = run_cli(["mf-check", "su(4) + u1[1] on alt2(1) @ 1"], capsys)
    assert code == 0
    assert "multiplicity free: True" in out
    assert "Ia row 5" in out


def test_mf_check_parse_error(capsys):
    code, out = run_cli(["mf-check", "su(4 on std(1)"], capsys)
    assert code == 2 and "error:" in out


def test_cohom(capsys):
    code, out = run_cli(["cohom", "su(3) + u1[1] on std(1) @ 1"], capsys)
    assert code == 0
    assert "cohomogeneity: 1" in out
    assert "coisotropic: True" in out


def test_polyscan(capsys):
    code, out = run_cli(["polyscan", "--limit", "60"], capsys)
    assert code == 0 and out.count("PASS") == 4


def test_spin_scan(capsys):
    code, out = run_cli(["spin-scan", "--max-rank", "8"], capsys)
    assert code == 0 and "G2" in out


def test_triple_test(capsys):
    code, out = run_cli(["triple-test"], capsys)
    assert code == 0 and out.count("PASS") == 3


def test_table_rows_and_records(capsys, tmp_path):
    report = tmp_path / "out.txt"
    code, out = run_cli(
        ["--report", str(report), "--format", "records", "table", "1", "--rows", "sp1,sp3"],
        capsys,
    )
    assert code == 0
    assert "row=sp1" in out and "outcome=coisotropic" in out
    assert report.read_text() == out


def test_table_text_format(capsys):
    code, out = run_cli(["table", "3", "--rows", "p6,pE1"], capsys)
    assert code == 0
    assert "PASS" in out and "0 mismatches" in out


def test_validate_data(capsys):
    code, out = run_cli(["validate-data"], capsys)
    assert code == 0 and "PASS" in out


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 2
    assert main([]) == 2


def test_lemma21_small(capsys):
    code, out = run_cli(["lemma21", "--max-rank", "6"], capsys)
    assert code == 0
    assert "PASS first inequality exception list" in out
    assert "borel-f4 stated=31 formula=28" in out
