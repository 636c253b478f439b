import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import stograph as sg
from stograph.core import GraphWindow
from stograph.global_degree import GlobalDegreeSchedule, THRESHOLD_EPS
from stograph.verdicts import Status


def brute_force_iteration(g: GraphWindow, thresholds, k_max):
    """Independent dict-based implementation of the degree recursion."""
    adj = {x: list(zip(*g.adjacency.neighbors(x))) if len(g.adjacency.neighbors(x)[0]) else [] for x in range(g.n)}
    deg = {x: math.fsum(w for _, w in adj[x]) / g.mu[x] for x in range(g.n)}
    tables = [deg]
    for k in range(k_max):
        a = thresholds[min(k, len(thresholds) - 1)]
        prev = tables[-1]
        tables.append(
            {x: math.fsum(w for y, w in adj[x] if prev[y] > a + THRESHOLD_EPS) / g.mu[x] for x in range(g.n)}
        )
    return tables


def test_schedule_validation():
    with pytest.raises(ValueError):
        GlobalDegreeSchedule((2.0, 1.0))
    with pytest.raises(ValueError):
        GlobalDegreeSchedule((-1.0,))
    s = GlobalDegreeSchedule((1.0, 2.0))
    assert s.at(0) == 1.0 and s.at(7) == 2.0


def test_step_bootstrap_equals_weighted_degree(path_window):
    degs = sg.weighted_degree_all(path_window)
    # threshold below every positive degree keeps every neighbor
    stepped = sg.global_degree_step(path_window, degs, 0.0)
    assert np.array_equal(stepped, degs)


def test_empty_sum_convention():
    g = GraphWindow.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
    prev = np.array([1.0, 2.0, 1.0])
    out = sg.global_degree_step(g, prev, 1.5)
    assert out[1] == 0.0  # both neighbors fall at or below the threshold
    with pytest.raises(ValueError):
        sg.global_degree_step(g, prev, -0.5)


def test_path_wave_pattern(path_window):
    """The threshold-1 iteration on the half line is a traveling wave: at
    step k the values are 0 up to j = k-2, then 1 on {k-1, k}, then 2."""
    table = sg.global_degree_limit(path_window, GlobalDegreeSchedule.constant(1.0), k_max=25)
    brute = brute_force_iteration(path_window, (1.0,), 25)
    for k in range(len(table.values)):
        safe = table.safe(k)
        for j in range(61):
            if safe[j]:
                assert table.value(j, k) == brute[k][j]
                if k >= 1:
                    expected = 0.0 if j <= k - 2 else (1.0 if j <= k else 2.0)
                    assert table.value(j, k) == expected


def test_zero_schedule_is_constant_in_k(pendant_window):
    table = sg.global_degree_limit(pendant_window, GlobalDegreeSchedule.constant(0.0), k_max=4)
    for k in range(1, len(table.values)):
        safe = table.safe(k)
        assert np.array_equal(table.values[k][safe], table.values[0][safe])


def test_pendant_first_iterate_collapses(pendant_window):
    # one threshold-1 step strips every pendant leaf: spine values drop from
    # n+2 to at most 2, leaves to at most 1; later steps only decrease further
    table = sg.global_degree_limit(pendant_window, GlobalDegreeSchedule.constant(1.0), k_max=6)
    safe = table.safe(1)
    spine = np.arange(0, 41)
    leaves = np.arange(41, pendant_window.n)
    assert np.all(table.values[1][spine[safe[spine]]] <= 2.0)
    assert np.all(table.values[1][leaves[safe[leaves]]] <= 1.0)
    assert np.max(table.values[1][safe]) == 2.0


def test_zero_schedule_converges_immediately(path_window):
    table = sg.global_degree_limit(path_window, GlobalDegreeSchedule.constant(0.0), k_max=5)
    assert table.converged_at == 1


def test_interior_valid_radius_shrinks(path_window):
    table = sg.global_degree_limit(path_window, GlobalDegreeSchedule.constant(1.0), k_max=5)
    radii = [table.interior_valid_radius(k) for k in range(4)]
    assert radii == [59 - k for k in range(4)]


@st.composite
def random_windows(draw):
    n = draw(st.integers(min_value=2, max_value=18))
    possible = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(possible), min_size=1, max_size=40, unique=True))
    weights = draw(
        st.lists(
            st.floats(min_value=0.05, max_value=10.0, allow_nan=False),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    mu = draw(
        st.lists(
            st.floats(min_value=0.1, max_value=5.0, allow_nan=False), min_size=n, max_size=n
        )
    )
    frontier = draw(st.sets(st.integers(min_value=0, max_value=n - 1), max_size=2))
    edges = [(u, v, w) for (u, v), w in zip(chosen, weights)]
    return GraphWindow.from_edges(n, edges, mu=mu, frontier=frontier)


@given(
    g=random_windows(),
    thresholds=st.lists(st.floats(min_value=0.0, max_value=6.0), min_size=1, max_size=5).map(
        lambda xs: tuple(sorted(xs))
    ),
)
@settings(max_examples=60, deadline=None)
def test_monotone_in_k_exactly(g, thresholds):
    table = sg.global_degree_limit(g, GlobalDegreeSchedule(thresholds), k_max=8)
    for k in range(1, len(table.values)):
        assert np.all(table.values[k] <= table.values[k - 1])


@given(g=random_windows(), n=st.floats(min_value=1.0, max_value=4.0), gap=st.floats(min_value=0.1, max_value=3.0))
@settings(max_examples=60, deadline=None)
def test_monotone_in_parameter_exactly(g, n, gap):
    m = n + gap
    tn = sg.global_degree_limit(g, GlobalDegreeSchedule.constant(n), k_max=8)
    tm = sg.global_degree_limit(g, GlobalDegreeSchedule.constant(m), k_max=8)
    for k in range(min(len(tn.values), len(tm.values))):
        assert np.all(tn.values[k] >= tm.values[k])
        assert np.all(tn.values[k] >= 0.0)


def test_bounded_test_path_window(path_window):
    v = sg.bounded_degree_completeness_test(path_window, n=1.0, k_max=3)
    assert v.status is Status.COMPLETE
    assert v.certificate.parameters["k"] == 0
    assert v.certificate.parameters["bound"] == 2.0


def test_bounded_test_pendant_window(pendant_window):
    v = sg.bounded_degree_completeness_test(pendant_window, n=1.0, k_max=6)
    assert v.status is Status.COMPLETE
    assert v.certificate.parameters["bound"] <= 2.0
    assert v.certificate.parameters["k"] >= 1


def test_bounded_test_cubic_window_unknown():
    p = sg.build_spherically_symmetric(3, 7)
    g = sg.materialize_window(p, 6)
    v = sg.bounded_degree_completeness_test(g, n=2.0, k_max=4)
    assert v.status is Status.UNKNOWN


def test_bounded_test_profiles(ray_profile, cubic_profile, kary2_profile):
    assert sg.bounded_degree_completeness_test(ray_profile).status is Status.COMPLETE
    assert not sg.bounded_degree_completeness_test(ray_profile).caveats
    assert sg.bounded_degree_completeness_test(cubic_profile).status is Status.UNKNOWN
    assert sg.bounded_degree_completeness_test(kary2_profile).status is Status.COMPLETE


def test_bounded_test_rejects_bad_n(path_window):
    with pytest.raises(ValueError):
        sg.bounded_degree_completeness_test(path_window, n=0.5, k_max=3)
