import pytest

import stograph as sg
from stograph.cli import EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, AnalysisReport, main
from stograph.errors import VerdictConflictError
from stograph.fileio import parse_profile_file, profiles_equal, write_profile_file
from stograph.verdicts import Certificate, Status, TheoremTag, Verdict, unknown


def test_build_and_reparse_round_trip(tmp_path, capsys):
    out = tmp_path / "gs_cubic.prof"
    assert main(["build", "gs", "--exponent", "3", "--horizon", "30", "-o", str(out)]) == EXIT_OK
    parsed = parse_profile_file(out.read_text())
    assert profiles_equal(parsed, sg.build_spherically_symmetric(3, 30))


def test_analyze_profile_all_criteria(tmp_path, capsys):
    out = tmp_path / "gs.prof"
    out.write_text(write_profile_file(sg.build_spherically_symmetric(3, 24)))
    code = main(["analyze", "--profile", str(out), "--criteria", "all"])
    captured = capsys.readouterr().out
    assert code == EXIT_OK
    assert "Incomplete" in captured
    assert "WeaklySymmetric" in captured
    assert "verdict:" in captured


def test_analyze_graph_window(tmp_path, capsys):
    gpath = tmp_path / "path.graph"
    assert main(["build", "path", "--horizon", "40", "-o", str(gpath)]) == EXIT_OK
    code = main(["analyze", "--graph", str(gpath)])
    captured = capsys.readouterr().out
    assert code == EXIT_OK
    assert "Complete" in captured


def test_oracle_scan_with_csv(tmp_path, capsys):
    prof = tmp_path / "gs.prof"
    prof.write_text(write_profile_file(sg.build_spherically_symmetric(3, 26)))
    csv = tmp_path / "scan.csv"
    code = main(
        ["oracle", "--profile", str(prof), "--lambda", "1.0", "--radii", "10,14,18", "--csv", str(csv)]
    )
    assert code == EXIT_OK
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "radius,lambda,root_value,residual,iterations"
    assert len(lines) == 4
    assert "Incomplete" in capsys.readouterr().out


def test_oracle_single_window(tmp_path, capsys):
    gpath = tmp_path / "tree.graph"
    assert main(["build", "tree", "--k", "2", "--horizon", "6", "-o", str(gpath)]) == EXIT_OK
    code = main(["oracle", "--graph", str(gpath), "--tmax", "1.0", "--mc-paths", "200", "--seed", "5"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "u_R(root)" in out and "heat deficit" in out and "mc exit estimate" in out


def test_surgery_command(tmp_path, capsys):
    t = tmp_path / "tree.graph"
    p = tmp_path / "path.graph"
    glued = tmp_path / "glued.graph"
    main(["build", "tree", "--k", "2", "--horizon", "5", "-o", str(t)])
    main(["build", "path", "--horizon", "5", "-o", str(p)])
    code = main(
        ["surgery", "--graph", str(t), "--graph2", str(p), "--glue", "0,0,1.0", "--check-w", "second", "-o", str(glued)]
    )
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "cond2=True" in out
    assert glued.exists()


def test_report_command(tmp_path, capsys):
    prof = tmp_path / "gs.prof"
    prof.write_text(write_profile_file(sg.build_spherically_symmetric(3, 22)))
    code = main(["report", "--profile", str(prof), "--radii", "10,14,18"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "oracle scan" in out and "verdict: Incomplete" in out


def test_missing_input_is_input_error(capsys):
    assert main(["analyze", "--profile", "/nonexistent.prof"]) == EXIT_INPUT
    assert main(["analyze"]) == EXIT_INPUT
    assert main(["oracle", "--profile", "x", "--graph", "y"]) == EXIT_INPUT


def test_bad_file_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("# stograph graph v1\nvertices 2\nedge 0 0 1.0\n")
    assert main(["analyze", "--graph", str(bad)]) == EXIT_INPUT


def test_conflicting_verdicts_abort():
    report = AnalysisReport("synthetic")
    report.add("a", Verdict(Status.COMPLETE, Certificate(TheoremTag.KPLUS, {})), "", 0.0)
    report.add("b", Verdict(Status.INCOMPLETE, Certificate(TheoremTag.WEAKLY_SYMMETRIC, {})), "", 0.0)
    with pytest.raises(VerdictConflictError):
        report.consolidate()


def test_consolidation_prefers_caveat_free(capsys):
    report = AnalysisReport("synthetic")
    report.add("a", unknown("nope"), "", 0.0)
    v = Verdict(Status.COMPLETE, Certificate(TheoremTag.KPLUS, {}))
    report.add("b", v, "", 0.0)
    assert report.consolidate() is v
    empty = AnalysisReport("none")
    empty.add("a", unknown("nope"), "", 0.0)
    assert empty.consolidate().status is Status.UNKNOWN
