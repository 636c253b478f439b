import math

import numpy as np
import pytest

import stograph as sg
from stograph.core import GraphWindow
from stograph.errors import OracleError
from stograph.verdicts import Caveat, Status


def test_star_window_closed_form():
    # one interior vertex with d unit edges to frontier: u = d / (d + lam)
    for d, lam in [(3, 1.0), (5, 2.0), (2, 0.5)]:
        g = GraphWindow.from_edges(
            d + 1, [(0, i, 1.0) for i in range(1, d + 1)], frontier=set(range(1, d + 1)), root=0
        )
        sol = sg.elliptic_window_solve(g, lam, 1e-12)
        assert sol.value(0) == pytest.approx(d / (d + lam), abs=1e-12)


def test_all_frontier_window_is_identically_one():
    g = GraphWindow.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)], frontier={0, 1, 2})
    sol = sg.elliptic_window_solve(g, 1.0, 1e-12)
    assert np.all(sol.values == 1.0)


def brute_force_elliptic(g: GraphWindow, lam: float) -> np.ndarray:
    """Dense direct solve of the interior system, independently assembled."""
    interior = [x for x in range(g.n) if x not in g.frontier]
    pos = {x: i for i, x in enumerate(interior)}
    A = np.zeros((len(interior), len(interior)))
    b = np.zeros(len(interior))
    for x in interior:
        i = pos[x]
        nbrs, w = g.neighbors(x)
        A[i, i] = lam * g.mu[x] + w.sum()
        for y, ww in zip(nbrs, w):
            if int(y) in pos:
                A[i, pos[int(y)]] -= ww
            else:
                b[i] += ww
    u = np.linalg.solve(A, b)
    out = np.ones(g.n)
    for x, i in pos.items():
        out[x] = u[i]
    return out


def test_path_window_lambda_monotonicity_vs_brute_force():
    g = sg.build_path(5)
    u1 = sg.elliptic_window_solve(g, 1.0, 1e-12).values
    u2 = sg.elliptic_window_solve(g, 2.0, 1e-12).values
    assert np.allclose(u1, brute_force_elliptic(g, 1.0), atol=1e-10)
    assert np.allclose(u2, brute_force_elliptic(g, 2.0), atol=1e-10)
    assert np.all(u2[:5] < u1[:5])


def test_elliptic_requires_positive_lambda_and_frontier():
    g = sg.build_path(4)
    with pytest.raises(ValueError):
        sg.elliptic_window_solve(g, 0.0, 1e-10)
    no_frontier = GraphWindow.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
    with pytest.raises(ValueError):
        sg.elliptic_window_solve(no_frontier, 1.0, 1e-10)


def test_solution_bounds_and_window_monotonicity(cubic_profile):
    chain = sg.radial_quotient_chain(cubic_profile, [6, 10, 14])
    sols = [sg.elliptic_window_solve(w, 1.0, 1e-12) for w in chain]
    for sol in sols:
        assert np.all(sol.values >= 0.0) and np.all(sol.values <= 1.0)
    # growing the window never increases the solution at a shared vertex
    for a, b in zip(sols, sols[1:]):
        shared = min(len(a.values), len(b.values)) - 1  # last shared label was a's frontier
        assert np.all(b.values[:shared] <= a.values[:shared] + 1e-10)


def test_elliptic_scan_verdicts(cubic_profile, kary2_profile, ray_profile):
    inc = sg.elliptic_limit_scan(sg.radial_quotient_chain(cubic_profile, [12, 18, 24, 30]), 1.0)
    assert inc.verdict.status is Status.INCOMPLETE
    assert all(b <= a for a, b in zip(inc.root_values, inc.root_values[1:]))
    com = sg.elliptic_limit_scan(sg.radial_quotient_chain(kary2_profile, [8, 12, 16, 20]), 1.0)
    assert com.verdict.status is Status.COMPLETE
    assert Caveat.HORIZON_LIMITED in com.verdict.caveats
    ray = sg.elliptic_limit_scan(sg.radial_quotient_chain(ray_profile, [8, 14, 20]), 1.0)
    assert ray.verdict.status is Status.COMPLETE


def test_heat_mass_basic_properties(kary2_profile):
    w = sg.radial_quotient_window(kary2_profile, 8)
    curve = sg.dirichlet_heat_mass(w, 2.0, 1e-6)
    assert curve.times[0] == 0.0
    interior = w.interior_mask()
    assert np.all(curve.mass[0, interior] == 1.0)
    assert np.all(curve.mass >= 0.0) and np.all(curve.mass <= 1.0)
    diffs = np.diff(curve.mass, axis=0)
    assert np.all(diffs <= 1e-10)


def test_heat_mass_grows_with_window(kary2_profile):
    w1 = sg.radial_quotient_window(kary2_profile, 6)
    w2 = sg.radial_quotient_window(kary2_profile, 9)
    c1 = sg.dirichlet_heat_mass(w1, 1.5, 1e-7)
    c2 = sg.dirichlet_heat_mass(w2, 1.5, 1e-7)
    for t in (0.3, 0.9, 1.5):
        for x in range(5):
            assert c2.at(x, t) >= c1.at(x, t) - 1e-6


def test_heat_mass_stepping_path_agrees_with_spectral():
    # force the sequential branch by a large explicit tree window
    g = sg.build_kary_tree_window(2, 9)  # 1023 vertices > spectral threshold
    curve = sg.dirichlet_heat_mass(g, 1.0, 1e-4)
    q = sg.radial_quotient_window(sg.build_kary_tree(2, 11), 9)
    ref = sg.dirichlet_heat_mass(q, 1.0, 1e-7)
    assert curve.at(0, 1.0) == pytest.approx(ref.at(0, 1.0), abs=5e-4)


def test_laplace_transform_identity_scales_with_tol(path_window):
    lam, T, tol = 1.0, 12.0, 1e-5
    sol = sg.elliptic_window_solve(path_window, lam, 1e-10)
    curve = sg.dirichlet_heat_mass(path_window, T, tol)
    budget = math.exp(-lam * T) + 10 * tol
    for x in range(path_window.n):
        if x in path_window.frontier:
            continue
        integral = sg.exp_weighted_integral(curve.times, curve.mass[:, x], lam)
        assert abs(sol.value(x) + lam * integral - 1.0) <= budget


def test_heat_deficit_scan_agrees_with_elliptic(cubic_profile, kary2_profile):
    # horizon T sized so the tree walk (unit radial drift) cannot reach the
    # largest frontier: the deficit then separates the two graphs cleanly
    for prof, radii, T in [(cubic_profile, [10, 15, 20], 4.0), (kary2_profile, [10, 15, 20], 4.0)]:
        chain = sg.radial_quotient_chain(prof, radii)
        e = sg.elliptic_limit_scan(chain, 1.0)
        h = sg.heat_deficit_scan(chain, T, 1e-6)
        assert e.verdict.status is h.verdict.status
        assert e.verdict.status is not Status.UNKNOWN


def test_mc_zero_horizon_and_determinism(exp2_profile):
    w = sg.radial_quotient_window(exp2_profile, 8)
    assert sg.mc_explosion_estimate(w, 0.0, 100, seed=7).estimate == 0.0
    a = sg.mc_explosion_estimate(w, 1.0, 500, seed=11)
    b = sg.mc_explosion_estimate(w, 1.0, 500, seed=11)
    assert a.estimate == b.estimate
    c = sg.mc_explosion_estimate(w, 1.0, 500, seed=12)
    assert a.estimate != c.estimate or a.seed != c.seed


def test_mc_agrees_with_heat_deficit(kary2_profile):
    w = sg.radial_quotient_window(kary2_profile, 6)
    T = 1.0
    curve = sg.dirichlet_heat_mass(w, T, 1e-7)
    deficit = 1.0 - curve.at(0, T)
    est = sg.mc_explosion_estimate(w, T, 4000, seed=3)
    assert est.within(deficit)
    assert est.stderr == pytest.approx(math.sqrt(est.estimate * (1 - est.estimate) / 4000))


def test_mc_root_on_frontier_rejected():
    g = GraphWindow.from_edges(2, [(0, 1, 1.0)], frontier={0, 1}, root=0)
    with pytest.raises(ValueError):
        sg.mc_explosion_estimate(g, 1.0, 10, seed=0)


def test_scan_detects_non_monotone_sequences(cubic_profile):
    # an artificial chain with a mismatched root ordering cannot be built via
    # WindowChain; simulate the defense by feeding decreasing radii windows
    w1 = sg.radial_quotient_window(cubic_profile, 10)
    w2 = sg.radial_quotient_window(cubic_profile, 6)
    with pytest.raises(ValueError):
        sg.WindowChain((w1, w2))
