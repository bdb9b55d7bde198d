import json

import pytest

from staride import harness
from staride.cli import main
from staride.verdict import Bounds, InputError, Status

FREE = '''scenario "free"
vars y, z
rule nonneg
bounds degree 6 window 1
ideal A = gens(y, z)
ideal Y = gens(y)
'''


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, body, name="s.stx"):
    p = tmp_path / name
    p.write_text(body)
    return str(p)


def test_all_pass_exit_0(tmp_path, capsys):
    f = write(tmp_path, FREE + "assert divisorial(Y) is proved\nassert divisorial(A) is refuted\nassert member(A, y*z) is proved\n")
    code, out, _ = run(capsys, "check", f)
    assert code == 0 and "overall: pass" in out


def test_contradiction_exit_1(tmp_path, capsys):
    f = write(tmp_path, FREE + "assert divisorial(A) is proved step \"2: wrong\"\n")
    code, out, _ = run(capsys, "check", f, "--report", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["schema"] == "staride.report/1"
    a = doc["assertions"][0]
    assert a["outcome"] == "fail" and a["step"] == "2: wrong" and a["verdict"]["witness"] == "1"


def test_deviation_only_exit_2(tmp_path, capsys):
    body = '''scenario "cone"
vars y, z
family t
rule nonneg
rule linear: deg(y,z) >= deg(t[*])
ideal Q = constraint{deg(y,z) >= 1} & ring certify t
assert v_finite(Q) is proved
'''
    code, out, _ = run(capsys, "check", write(tmp_path, body))
    assert code == 2 and "DEVIATION" in out


def test_parse_error_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "check", write(tmp_path, FREE + "assert prime(B) is proved\n"))
    assert code == 3 and "s.stx:7:" in err and "unknown identifier" in err


def test_missing_file_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "check", str(tmp_path / "nope.stx"))
    assert code == 3 and "cannot read" in err


def test_empty_fixture_file_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "suite", "props", "--fixtures", write(tmp_path, FREE))
    assert code == 3 and "no fixtures" in err


def test_bad_bounds_exit_3(capsys):
    code, _, err = run(capsys, "run-example", "3.1", "--family-window", "0")
    assert code == 3 and "family window" in err


def test_unsupported_content_is_input_error(tmp_path, capsys):
    body = FREE + "poly f = y + z + X\nupper P = u2z(f)\n"
    code, _, err = run(capsys, "check", write(tmp_path, body))
    assert code == 3 and "unsupported" in err


def test_run_example_text_and_timings(capsys):
    code, out, _ = run(capsys, "run-example", "3.1", "--timings")
    assert code == 0 and "overall: pass" in out and "s]" in out
    code, out, _ = run(capsys, "run-example", "3.1", "--report", "json")
    assert "seconds" not in out


def test_run_example_flags_reach_bounds(capsys):
    code, out, _ = run(capsys, "run-example", "3.1", "--degree-bound", "6", "--family-window", "2", "--seed", "5", "--report", "json")
    doc = json.loads(out)
    assert doc["bounds"] == {"degree": 6, "window": 2, "seed": 5, "dual_degree": 3}
    assert code == 0


def test_precondition_failure_aborts_scenario(tmp_path):
    body = FREE + "assert max_converse(A, y^-1) is proved step \"1\"\nassert prime(Y) is proved step \"2\"\n"
    rep = harness.check_text(body, "p.stx")[0]
    assert [r.outcome for r in rep.results] == ["fail", "fail"]
    assert "step 1" in rep.results[0].error and "skipped" in rep.results[1].error
    assert rep.exit_code == 1


def test_fixtures_and_suites(tmp_path):
    body = FREE + "fixture Y = Y expect prime is proved, maximal-divisorial is proved, t-maximal is proved\n"
    rep = harness.run_suites(body, "f.stx", Bounds(degree=6, window=1))
    names = [s.predicate for s in rep.suites]
    assert names == ["star axioms (v)", "inclusion chain", "vtmax implications", "maximal divisorial representation"]
    assert rep.overall == "pass"


def test_outcome_table():
    assert harness.outcome("proved", Status.PROVED) == "pass"
    assert harness.outcome("proved", Status.BOUNDED) == "deviation"
    assert harness.outcome("proved", Status.REFUTED) == "fail"
    assert harness.outcome("holds", Status.BOUNDED) == "pass"
    assert harness.outcome("refuted", Status.PROVED) == "fail"
    assert harness.outcome("refuted", Status.INCONCLUSIVE) == "deviation"
    assert harness.outcome("inconclusive", Status.PROVED) == "fail"


def test_unknown_example():
    with pytest.raises(InputError):
        harness.load_example("3.3")
