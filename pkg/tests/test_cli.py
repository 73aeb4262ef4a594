import json

import pytest

from derange.cli import COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_rs_table(capsys):
    code, out = run(capsys, "rs", "--family", "gl", "--q", "2", "--n", "1..4")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].split("\t") == list(COLUMNS)
    assert len(lines) == 5
    row = dict(zip(COLUMNS, lines[2].split("\t")))
    assert row["exact"] == "1/3"
    assert row["provenance"] == "series"


def test_rs_limit_has_bound_row(capsys):
    code, out = run(capsys, "rs", "--family", "sp", "--q", "2", "--limit")
    assert code == 0
    stats = [line.split("\t")[1] for line in out.strip().split("\n")[1:]]
    assert stats == ["rs-limit", "rs-limit-bound"]


def test_json_mirrors_tsv(capsys):
    _, tsv = run(capsys, "rs", "--family", "gl", "--q", "3", "--n", "2")
    code, out = run(capsys, "--format", "json", "rs", "--family", "gl", "--q", "3", "--n", "2")
    assert code == 0
    rows = json.loads(out)
    assert [tuple(r.keys()) for r in rows] == [COLUMNS]
    tsv_row = dict(zip(COLUMNS, tsv.splitlines()[1].split("\t")))
    assert rows[0] == tsv_row


def test_float_matches_exact(capsys):
    _, out = run(capsys, "weyl", "--group", "sn", "--n", "9", "--fix-kset", "2")
    row = dict(zip(COLUMNS, out.strip().split("\n")[1].split("\t")))
    num, den = row["exact"].split("/")
    assert float(row["float"]) == pytest.approx(int(num) / int(den), rel=1e-12)


def test_deterministic_and_jobs_equivalent(capsys):
    _, a = run(capsys, "rs", "--family", "u", "--q", "2", "--n", "1..8")
    _, b = run(capsys, "rs", "--family", "u", "--q", "2", "--n", "1..8")
    _, c = run(capsys, "--jobs", "4", "rs", "--family", "u", "--q", "2", "--n", "1..8")
    assert a == b == c


def test_verify_identities(capsys):
    code, out = run(capsys, "verify", "--suite", "identities", "--q", "2", "--order", "12")
    assert code == 0
    assert all(line.split("\t")[6] == "pass" for line in out.strip().split("\n")[1:])


def test_verify_bounds_exit_zero(capsys):
    code, out = run(capsys, "verify", "--suite", "bounds")
    assert code == 0


def test_oracle_subcommand(capsys):
    code, out = run(capsys, "oracle", "--family", "gl", "--n", "2", "--q", "2", "--stat", "rs")
    assert code == 0
    assert out.strip().split("\n")[1].split("\t")[3] == "1/3"


def test_constants(capsys):
    code, out = run(capsys, "constants")
    assert code == 0
    assert len(out.strip().split("\n")) == 5


def test_usage_errors_exit_two(capsys):
    assert main(["rs", "--family", "gl", "--q", "2"]) == 2
    assert main(["rs", "--family", "nope", "--q", "2", "--n", "2"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["rs", "--family", "gl"])  # argparse: missing --q
    assert exc.value.code == 2


def test_derange_order_env(capsys, monkeypatch):
    monkeypatch.setenv("DERANGE_ORDER", "8")
    code, out = run(capsys, "rs", "--family", "gl", "--q", "2", "--n", "1..3")
    assert code == 0


def test_bound_subcommand(capsys):
    code, out = run(
        capsys, "bound", "--family", "u", "--q", "2", "--action", "totally-singular",
        "--k", "2", "--limit",
    )
    assert code == 0
    value = float(out.strip().split("\n")[1].split("\t")[4])
    assert value >= 1 / 26
