import numpy as np
import pytest

import stograph as sg
from stograph.core import GraphWindow
from stograph.errors import FrontierError
from stograph.verdicts import Certificate, Status, TheoremTag, Verdict


def test_restrict_full_set_is_identity(path_window):
    g = sg.restrict_subgraph(path_window, range(path_window.n))
    assert g.n == path_window.n
    assert g.frontier == path_window.frontier
    assert sg.validate_graph(g).ok


def test_restrict_degrees_never_increase(pendant_window):
    W = list(range(0, pendant_window.n, 2))
    sub = sg.restrict_subgraph(pendant_window, W)
    for new_id, old_id in enumerate(sub.labels):
        assert sg.weighted_degree(sub, new_id) <= sg.weighted_degree(pendant_window, old_id)
    assert sg.validate_graph(sub).ok


def test_restrict_path_tail_gets_membership_frontier(path_window):
    sub = sg.restrict_subgraph(path_window, range(1, 61))
    # old vertex 1 (new id 0) lost its neighbor 0 and becomes frontier
    assert 0 in sub.frontier
    assert sub.labels[0] == 1
    assert sg.validate_graph(sub).ok


def test_stability_conditions_on_glued_quotient(glued_quotient):
    W = list(range(15, 30))  # the spherically symmetric part
    conds = sg.stability_conditions_check(glued_quotient, W, 2.0)
    assert conds.cond2  # single unit edge leaves W at its root
    assert conds.outward_weight_sup == 1.0
    assert not conds.cond1  # the interface vertex has large W-degree
    assert conds.interface_degree_sup == 8.0


def test_stability_conditions_pendant_spine(pendant_window):
    # spine plus the frontier vertex's own leaves, so every interface vertex
    # (an interior spine vertex shedding its leaves) is interior in g
    W = list(range(0, 41)) + list(range(pendant_window.n - 40, pendant_window.n))
    conds = sg.stability_conditions_check(pendant_window, W, 3.0)
    assert conds.cond1  # interface spine vertices keep exactly two spine edges
    assert conds.interface_degree_sup <= 3.0


def test_stability_interface_on_frontier_rejected(path_window):
    # vertex 60 is frontier and its edge to 59 leaves W = {60}
    with pytest.raises(FrontierError):
        sg.stability_conditions_check(path_window, [60], 2.0)


def test_high_degree_subgraph_thresholds(path_window):
    empty = sg.high_degree_subgraph(path_window, 10.0)
    assert empty.n == 0
    survivors = sg.high_degree_subgraph(path_window, 1.0)
    # interior vertices with two neighbors survive, minus the frontier-adjacent one
    assert set(survivors.labels) == set(range(1, 59))


def test_high_degree_subgraph_cubic_threshold():
    p = sg.build_spherically_symmetric(3, 7)
    g = sg.materialize_window(p, 6)
    stats = sg.radial_statistics(g)
    sub = sg.high_degree_subgraph(g, 100.0)
    kept_radii = {int(stats.radius[old]) for old in sub.labels}
    # Deg(r) = (r)^3 + (r+2)^3 exceeds 100 from radius 3 on; radii 5,6 are
    # excluded as frontier-adjacent/frontier
    assert kept_radii == {3, 4}


def test_high_degree_subgraphs_nest(pendant_window):
    big = set(sg.high_degree_subgraph(pendant_window, 5.0).labels)
    small = set(sg.high_degree_subgraph(pendant_window, 9.0).labels)
    assert small <= big


def test_glue_counts_and_degree_shift(path_window):
    other = sg.build_path(10)
    glued = sg.glue_at_edge(path_window, other, 0, 0, 2.5)
    assert glued.n == path_window.n + other.n
    assert glued.n_edges == 60 + 10 + 1
    assert sg.validate_graph(glued).ok
    assert sg.weighted_degree(glued, 0) == sg.weighted_degree(path_window, 0) + 2.5
    assert glued.labels[path_window.n] == ("b", 0)
    with pytest.raises(ValueError):
        sg.glue_at_edge(path_window, other, 0, 0, 0.0)


def test_propagate_incomplete_through_cond2(glued_quotient, cubic_profile):
    W = list(range(15, 30))
    conds = sg.stability_conditions_check(glued_quotient, W, 2.0)
    verdict_W = sg.weakly_symmetric_test(cubic_profile)
    out = sg.propagate_verdict(glued_quotient, W, verdict_W, conds, 2.0)
    assert out.status is Status.INCOMPLETE
    assert out.certificate.tag is TheoremTag.STABILITY
    assert out.certificate.chained is verdict_W.certificate
    assert out.certificate.chain_depth() == 1


def test_propagate_unknown_passes_through(glued_quotient):
    W = list(range(15, 30))
    conds = sg.stability_conditions_check(glued_quotient, W, 2.0)
    out = sg.propagate_verdict(glued_quotient, W, sg.verdicts.unknown("n/a"), conds, 2.0)
    assert out.status is Status.UNKNOWN


def test_propagate_complete_requires_high_degree_subgraph(pendant_window):
    n = 5.0
    hd = sg.high_degree_subgraph(pendant_window, n)
    W = [int(l) for l in hd.labels]
    conds = sg.stability_conditions_check(pendant_window, W, n)
    sub_verdict = Verdict(
        Status.COMPLETE,
        Certificate(TheoremTag.BOUNDED_GLOBAL_DEGREE, {"bound": 2.0, "n": n, "k": 1}),
    )
    out = sg.propagate_verdict(pendant_window, W, sub_verdict, conds, n)
    assert out.status is Status.COMPLETE
    assert out.certificate.parameters["rule"] == "high-degree-contrapositive"
    # a W that is not the certified high-degree subgraph cannot transfer completeness
    other_W = W[:-1]
    other_conds = sg.stability_conditions_check(pendant_window, other_W, n)
    assert sg.propagate_verdict(pendant_window, other_W, sub_verdict, other_conds, n).status is Status.UNKNOWN


def test_propagate_rejects_mismatched_conditions(glued_quotient, cubic_profile):
    W = list(range(15, 30))
    conds = sg.stability_conditions_check(glued_quotient, W, 2.0)
    verdict_W = sg.weakly_symmetric_test(cubic_profile)
    with pytest.raises(ValueError):
        sg.propagate_verdict(glued_quotient, W[:-1], verdict_W, conds, 2.0)
    with pytest.raises(ValueError):
        sg.propagate_verdict(glued_quotient, W, verdict_W, conds, 3.0)


def test_propagate_incomplete_needs_a_condition():
    # two windows joined by a heavy interface: neither condition holds at n=1
    a = sg.build_path(6)
    b = sg.build_path(6)
    glued = sg.glue_at_edge(a, b, 0, 0, 5.0)
    W = list(range(7, 14))
    conds = sg.stability_conditions_check(glued, W, 1.0)
    assert not (conds.cond1 or conds.cond2)
    fake = Verdict(Status.INCOMPLETE, Certificate(TheoremTag.WEAKLY_SYMMETRIC, {}))
    out = sg.propagate_verdict(glued, W, fake, conds, 1.0)
    assert out.status is Status.UNKNOWN
