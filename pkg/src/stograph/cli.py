"""Command-line interface: build, analyze, oracle scans, surgery, reports.

Exit codes: 0 = a verdict was produced (Unknown included), 2 = input error,
3 = internal inconsistency (two non-Unknown verdicts disagree; that is a bug
surface, never a valid analysis outcome).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import builders, criteria, fileio, global_degree, oracle, surgery
from .core import GraphWindow, RadialProfile, validate_graph
from .errors import StographError, VerdictConflictError
from .verdicts import Status, Verdict, unknown

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3


@dataclass
class AnalysisReport:
    """Everything one analysis run produced, plus the consolidated verdict."""

    input_descriptor: str
    entries: List[Tuple[str, Verdict, str, float]] = field(default_factory=list)
    oracle_rows: List[Tuple[int, float, float, float, int]] = field(default_factory=list)
    consolidated: Optional[Verdict] = None

    def add(self, name: str, verdict: Verdict, params: str, elapsed: float) -> None:
        self.entries.append((name, verdict, params, elapsed))

    def consolidate(self) -> Verdict:
        statuses = {e[1].status for e in self.entries} - {Status.UNKNOWN}
        if len(statuses) > 1:
            lines = "; ".join(f"{n}: {v.status.value}" for n, v, _, _ in self.entries if not v.is_unknown)
            raise VerdictConflictError(f"conflicting non-Unknown verdicts: {lines}")
        if not statuses:
            self.consolidated = unknown("no criterion produced a verdict")
            return self.consolidated
        decided = [e[1] for e in self.entries if not e[1].is_unknown]
        decided.sort(key=lambda v: len(v.caveats))
        self.consolidated = decided[0]
        return self.consolidated

    def render(self) -> str:
        lines = [f"input: {self.input_descriptor}"]
        for name, verdict, params, elapsed in self.entries:
            lines.append(f"  {name:<22} {verdict}  [{elapsed * 1e3:.1f} ms]" + (f"  {params}" if params else ""))
        if self.oracle_rows:
            lines.append("  oracle scan (radius, lambda, root_value, residual, iterations):")
            for row in self.oracle_rows:
                lines.append(f"    {row[0]:>4} {row[1]:g} {row[2]:.8f} {row[3]:.2e} {row[4]}")
        if self.consolidated is not None:
            lines.append(f"verdict: {self.consolidated}")
        return "\n".join(lines)


PROFILE_CRITERIA = ("weakly-symmetric", "kplus", "ratio-curvature", "bounded-degree")


def _run_profile_criteria(p: RadialProfile, names: Sequence[str], report: AnalysisReport) -> None:
    runners = {
        "weakly-symmetric": lambda: criteria.weakly_symmetric_test(p),
        "kplus": lambda: criteria.kplus_series_test(p),
        "ratio-curvature": lambda: criteria.ratio_curvature_test(p),
        "bounded-degree": lambda: global_degree.bounded_degree_completeness_test(p),
    }
    for name in names:
        if name not in runners:
            raise StographError(f"unknown criterion {name!r}; available: {', '.join(PROFILE_CRITERIA)}")
        t0 = time.perf_counter()
        try:
            verdict = runners[name]()
            params = ""
        except StographError as exc:
            verdict = unknown(f"not applicable: {exc}")
            params = ""
        except ValueError as exc:
            verdict = unknown(f"not applicable: {exc}")
            params = ""
        report.add(name, verdict, params, time.perf_counter() - t0)


def _load_profile(path: str) -> RadialProfile:
    return fileio.parse_profile_file(Path(path).read_bytes())


def _load_graph(path: str) -> GraphWindow:
    return fileio.parse_graph_file(Path(path).read_bytes())


def _write_oracle_csv(path: str, rows, lam: float) -> None:
    lines = ["radius,lambda,root_value,residual,iterations"]
    for r, l, v, res, it in rows:
        lines.append(f"{int(r)},{float(l)!r},{float(v)!r},{float(res)!r},{int(it)}")
    Path(path).write_text("\n".join(lines) + "\n")


def _cmd_analyze(args) -> int:
    report = AnalysisReport(input_descriptor=args.profile or args.graph)
    names = PROFILE_CRITERIA if args.criteria == "all" else tuple(s.strip() for s in args.criteria.split(","))
    if args.profile:
        p = _load_profile(args.profile)
        _run_profile_criteria(p, names, report)
    else:
        g = _load_graph(args.graph)
        t0 = time.perf_counter()
        verdict = global_degree.bounded_degree_completeness_test(g, n=args.n, k_max=args.kmax)
        report.add("bounded-degree", verdict, f"n={args.n} kmax={args.kmax}", time.perf_counter() - t0)
    report.consolidate()
    print(report.render())
    if args.csv:
        rows = [f"criterion,status,caveats,detail"]
        for name, v, _, _ in report.entries:
            caveats = "|".join(c.value for c in v.caveats)
            rows.append(f"{name},{v.status.value},{caveats},{v.detail!r}")
        Path(args.csv).write_text("\n".join(rows) + "\n")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    radii = tuple(int(r) for r in args.radii.split(",")) if args.radii else None
    report = AnalysisReport(input_descriptor=args.profile or args.graph)
    if args.profile:
        p = _load_profile(args.profile)
        if not radii or len(radii) < 2:
            raise StographError("oracle scans need --radii with at least two radii")
        chain = builders.radial_quotient_chain(p, radii)
        scan = oracle.elliptic_limit_scan(chain, args.lam, args.tol, args.theta)
        report.oracle_rows = list(scan.rows(args.lam))
        report.add("oracle-elliptic", scan.verdict, f"lambda={args.lam}", 0.0)
        report.consolidate()
        print(report.render())
        if args.csv:
            _write_oracle_csv(args.csv, scan.rows(args.lam), args.lam)
        return EXIT_OK
    g = _load_graph(args.graph)
    sol = oracle.elliptic_window_solve(g, args.lam, args.tol)
    root = g.root if g.root is not None else 0
    print(f"u_R(root) = {sol.value(root)!r} (residual {sol.residual:.2e}, iterations {sol.iterations})")
    if args.tmax:
        curve = oracle.dirichlet_heat_mass(g, args.tmax, min(args.tol * 1e3, 1e-4))
        deficit = 1.0 - curve.at(root, args.tmax)
        print(f"heat deficit 1 - mass(root, {args.tmax}) = {deficit!r}")
        if args.mc_paths:
            est = oracle.mc_explosion_estimate(g, args.tmax, args.mc_paths, args.seed)
            print(f"mc exit estimate = {est.estimate!r} +- {est.stderr:.2e} ({est.paths} paths, seed {est.seed})")
    return EXIT_OK


def _cmd_build(args) -> int:
    out = Path(args.output)
    if args.family == "gs":
        if args.exp2:
            p = builders.build_spherically_symmetric("exp", args.horizon)
        else:
            p = builders.build_spherically_symmetric(args.exponent, args.horizon)
        out.write_text(fileio.write_profile_file(p))
    elif args.family == "path":
        out.write_text(fileio.write_graph_file(builders.build_path(args.horizon)))
    elif args.family == "pendant":
        rules = {"linear": lambda n: n, "none": lambda n: 0}
        if args.leaves.startswith("constant:"):
            c = int(args.leaves.split(":", 1)[1])
            rule = lambda n: c
        else:
            rule = rules.get(args.leaves)
            if rule is None:
                raise StographError("leaves must be 'linear', 'none', or 'constant:<c>'")
        out.write_text(fileio.write_graph_file(builders.build_pendant_tree(rule, args.horizon)))
    elif args.family == "tree":
        out.write_text(fileio.write_graph_file(builders.build_kary_tree_window(args.k, args.horizon)))
    else:
        raise StographError(f"unknown family {args.family!r}")
    print(f"wrote {out}")
    return EXIT_OK


def _cmd_surgery(args) -> int:
    g1 = _load_graph(args.graph)
    g2 = _load_graph(args.graph2)
    x1, x2, w = args.glue.split(",")
    glued = surgery.glue_at_edge(g1, g2, int(x1), int(x2), float(w))
    print(f"glued window: {glued.n} vertices, {glued.n_edges} edges; validation: {validate_graph(glued)}")
    if args.check_w == "second":
        W = list(range(g1.n, glued.n))
        conds = surgery.stability_conditions_check(glued, W, args.n)
        print(
            f"stability conditions at n={args.n}: cond1={conds.cond1} "
            f"(interface degree sup {conds.interface_degree_sup:g}), "
            f"cond2={conds.cond2} (outward weight sup {conds.outward_weight_sup:g})"
        )
    if args.output:
        Path(args.output).write_text(fileio.write_graph_file(glued))
        print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_report(args) -> int:
    report = AnalysisReport(input_descriptor=args.profile)
    p = _load_profile(args.profile)
    _run_profile_criteria(p, PROFILE_CRITERIA, report)
    radii = tuple(int(r) for r in args.radii.split(","))
    chain = builders.radial_quotient_chain(p, radii)
    scan = oracle.elliptic_limit_scan(chain, args.lam, args.tol, args.theta)
    report.oracle_rows = list(scan.rows(args.lam))
    report.add("oracle-elliptic", scan.verdict, f"lambda={args.lam} radii={radii}", 0.0)
    report.consolidate()
    print(report.render())
    if args.csv:
        _write_oracle_csv(args.csv, scan.rows(args.lam), args.lam)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="stograph", description="stochastic completeness of weighted graphs")
    sub = top.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run analytic criteria on a profile or graph window")
    pa.add_argument("--profile")
    pa.add_argument("--graph")
    pa.add_argument("--criteria", default="all")
    pa.add_argument("--lambda", dest="lam", type=float, default=1.0)
    pa.add_argument("--n", type=float, default=1.0)
    pa.add_argument("--kmax", type=int, default=10)
    pa.add_argument("--csv")
    pa.set_defaults(func=_cmd_analyze)

    po = sub.add_parser("oracle", help="numerical oracle: elliptic scan / heat / Monte Carlo")
    po.add_argument("--profile")
    po.add_argument("--graph")
    po.add_argument("--lambda", dest="lam", type=float, default=1.0)
    po.add_argument("--radii")
    po.add_argument("--tmax", type=float, default=0.0)
    po.add_argument("--mc-paths", type=int, default=0)
    po.add_argument("--seed", type=int, default=0)
    po.add_argument("--theta", type=float, default=oracle.DEFAULT_THETA)
    po.add_argument("--tol", type=float, default=oracle.DEFAULT_TOL)
    po.add_argument("--csv")
    po.set_defaults(func=_cmd_oracle)

    pb = sub.add_parser("build", help="write named graph families to files")
    pb.add_argument("family", choices=["gs", "path", "pendant", "tree"])
    pb.add_argument("--exponent", type=float, default=3.0)
    pb.add_argument("--exp2", action="store_true", help="spheres S(r) = 2^r instead of a polynomial rule")
    pb.add_argument("--horizon", type=int, default=20)
    pb.add_argument("--k", type=int, default=2)
    pb.add_argument("--leaves", default="linear")
    pb.add_argument("-o", "--output", required=True)
    pb.set_defaults(func=_cmd_build)

    ps = sub.add_parser("surgery", help="glue two windows and check stability conditions")
    ps.add_argument("--graph", required=True)
    ps.add_argument("--graph2", required=True)
    ps.add_argument("--glue", required=True, metavar="x1,x2,w")
    ps.add_argument("--check-w", choices=["second", "none"], default="none")
    ps.add_argument("--n", type=float, default=2.0)
    ps.add_argument("-o", "--output")
    ps.set_defaults(func=_cmd_surgery)

    pr = sub.add_parser("report", help="criteria plus oracle scan, consolidated")
    pr.add_argument("--profile", required=True)
    pr.add_argument("--lambda", dest="lam", type=float, default=1.0)
    pr.add_argument("--radii", default="8,12,16,20")
    pr.add_argument("--theta", type=float, default=oracle.DEFAULT_THETA)
    pr.add_argument("--tol", type=float, default=oracle.DEFAULT_TOL)
    pr.add_argument("--csv")
    pr.set_defaults(func=_cmd_report)
    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("analyze", "oracle") and bool(getattr(args, "profile", None)) == bool(getattr(args, "graph", None)):
        print("error: exactly one of --profile / --graph is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except VerdictConflictError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (StographError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
