"""Numerical oracle: decides completeness on window exhaustions.

Three independent routes, all driven by Dirichlet boundary data on the
frontier:

* elliptic: solve (Delta + lambda) u = 0 at interior vertices with u = 1 on
  the frontier.  As the window grows, u_R(root) decreases; a limit above a
  positivity threshold is the bounded lambda-harmonic witness of
  incompleteness, a collapse to ~0 is (horizon-limited) evidence of
  completeness.
* parabolic: integrate u' = -Delta u with u = 0 on the frontier and u(0) = 1
  (the killed heat semigroup) by implicit Euler; the mass deficit
  1 - u(root, T) is the window exit probability by time T.
* Monte Carlo: simulate the continuous-time chain (holding rate Deg(x),
  jump law b(x,y)/sum b(x,.)) and count frontier hits before T.

The Laplace-transform identity u_R(x) + lambda * int_0^inf e^(-lambda t)
mass(x, t) dt = 1 ties the first two routes together and is used as a
cross-validation invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .builders import WindowChain
from .core import GraphWindow, radial_statistics
from .errors import OracleError
from .verdicts import Caveat, Certificate, Status, TheoremTag, Verdict, unknown

__all__ = [
    "EllipticSolution",
    "HeatMassCurve",
    "McEstimate",
    "ScanResult",
    "elliptic_window_solve",
    "elliptic_limit_scan",
    "dirichlet_heat_mass",
    "heat_deficit_scan",
    "mc_explosion_estimate",
    "exp_weighted_integral",
]

DEFAULT_THETA = 1e-2
DEFAULT_REL_TOL = 1e-2
DEFAULT_TOL = 1e-10
SPECTRAL_LIMIT = 600  # interior size up to which the heat flow is solved spectrally


def _interior_system(g: GraphWindow, lam: float):
    """Interior-block SPD system in mu-scaled form.

    Row x (interior): mu(x) (Deg(x) + lam) u(x) - sum_{y interior} b(x,y) u(y)
    equals sum_{y frontier} b(x,y); symmetric positive definite for lam > 0.
    """
    interior = np.nonzero(g.interior_mask())[0]
    idx = -np.ones(g.n, dtype=np.int64)
    idx[interior] = np.arange(len(interior))
    adj = g.adjacency
    rows, cols, vals = [], [], []
    rhs = np.zeros(len(interior))
    diag = np.zeros(len(interior))
    for i, x in enumerate(interior):
        nbrs, w = adj.neighbors(int(x))
        diag[i] = g.mu[x] * lam + math.fsum(w.tolist())
        for y, ww in zip(nbrs, w):
            j = idx[y]
            if j >= 0:
                rows.append(i)
                cols.append(int(j))
                vals.append(-float(ww))
            else:
                rhs[i] += float(ww)
    m = sp.csr_matrix((vals, (rows, cols)), shape=(len(interior), len(interior)))
    m = m + sp.diags(diag)
    return interior, m.tocsc(), rhs


@dataclass(frozen=True, eq=False)
class EllipticSolution:
    lam: float
    values: np.ndarray  # per vertex, frontier entries = 1
    residual: float
    iterations: int

    def value(self, x: int) -> float:
        return float(self.values[x])


def elliptic_window_solve(g: GraphWindow, lam: float, tol: float = DEFAULT_TOL) -> EllipticSolution:
    """Solve Delta u + lam u = 0 at interior vertices, u = 1 on the frontier.

    Equivalently the fixed point u(x) = sum_y b(x,y) u(y) / (mu(x)(Deg(x)+lam)):
    the mu-scaled system is strictly diagonally dominant and SPD, solved
    directly for moderate sizes and by Jacobi-preconditioned CG above that.
    The solution is unique and lies in [0, 1].
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if not g.frontier:
        raise ValueError("elliptic window solve needs a nonempty frontier")
    interior, m, rhs = _interior_system(g, lam)
    iterations = 1
    if len(interior) == 0:
        u_int = np.zeros(0)
    elif len(interior) <= 40000:
        u_int = spla.spsolve(m, rhs)
    else:
        d = m.diagonal()
        precond = spla.LinearOperator(m.shape, matvec=lambda z: z / d)
        count = [0]

        def cb(_):
            count[0] += 1

        u_int, info = spla.cg(m, rhs, rtol=tol, atol=0.0, maxiter=20000, M=precond, callback=cb)
        iterations = count[0]
        if info != 0:
            raise OracleError(f"conjugate gradient did not converge (info={info})")

    values = np.ones(g.n)
    values[interior] = u_int
    # residual |Delta u + lam u| relative to the row scale Deg + lam; the
    # absolute form is dominated by evaluation round-off once Deg is huge
    residual = 0.0
    adj = g.adjacency
    for x in interior:
        nbrs, w = adj.neighbors(int(x))
        acc = math.fsum((float(ww) * (values[x] - values[y])) for y, ww in zip(nbrs, w))
        row_scale = math.fsum(w.tolist()) / g.mu[x] + lam
        residual = max(residual, abs(acc / g.mu[x] + lam * values[x]) / row_scale)
    if residual > max(tol * 1e3, 1e-7):
        raise OracleError(f"elliptic residual {residual:.3e} above tolerance")
    excess = max(float((-values).max(initial=0.0)), float((values - 1.0).max(initial=0.0)))
    if excess > 1e-8:
        raise OracleError(f"solution leaves [0,1] by {excess:.3e}")
    np.clip(values, 0.0, 1.0, out=values)
    return EllipticSolution(lam, values, residual, iterations)


@dataclass(frozen=True, eq=False)
class ScanResult:
    verdict: Verdict
    radii: Tuple[int, ...]
    root_values: Tuple[float, ...]
    residuals: Tuple[float, ...]
    iterations: Tuple[int, ...]

    def rows(self, lam: float):
        for r, v, res, it in zip(self.radii, self.root_values, self.residuals, self.iterations):
            yield r, lam, v, res, it


def _window_radius(g: GraphWindow) -> int:
    return radial_statistics(g).max_radius


def _limit_verdict(
    values: Tuple[float, ...],
    theta: float,
    rel_tol: float,
    tag: TheoremTag,
    parameters: dict,
) -> Verdict:
    v_prev, v_last = values[-2], values[-1]
    rel_change = (v_prev - v_last) / max(v_last, 1e-300)
    parameters = dict(parameters, final_value=v_last, relative_change=rel_change, theta=theta, rel_tol=rel_tol)
    caveats = (Caveat.HORIZON_LIMITED,)
    if v_last < theta:
        cert = Certificate(tag, parameters, verified_region=f"radii {parameters['radii']}")
        return Verdict(Status.COMPLETE, cert, caveats, "limit value fell below the positivity threshold")
    if rel_change < rel_tol:
        cert = Certificate(tag, parameters, verified_region=f"radii {parameters['radii']}")
        return Verdict(
            Status.INCOMPLETE, cert, caveats, "root value stabilized above the positivity threshold"
        )
    return unknown("root values neither stabilized nor collapsed at the largest radius", caveats)


def elliptic_limit_scan(
    chain: WindowChain,
    lam: float = 1.0,
    tol: float = DEFAULT_TOL,
    theta: float = DEFAULT_THETA,
    rel_tol: float = DEFAULT_REL_TOL,
) -> ScanResult:
    """Track u_R(root) along a nested window chain.

    The sequence must be non-increasing in R (up to solver tolerance); a
    stabilized positive limit witnesses incompleteness, a collapse below
    theta is horizon-limited evidence of completeness.
    """
    radii, values, residuals, iters = [], [], [], []
    for w in chain:
        if w.root is None:
            raise ValueError("chain windows must carry roots")
        sol = elliptic_window_solve(w, lam, tol)
        radii.append(_window_radius(w))
        values.append(sol.value(w.root))
        residuals.append(sol.residual)
        iters.append(sol.iterations)
    for a, b in zip(values, values[1:]):
        if b > a + max(100 * tol, 1e-8):
            raise OracleError(f"root values increased along the exhaustion ({a} -> {b}); nesting or solver bug")
    verdict = _limit_verdict(
        tuple(values), theta, rel_tol, TheoremTag.ORACLE_ELLIPTIC, {"lambda": lam, "radii": tuple(radii)}
    )
    return ScanResult(verdict, tuple(radii), tuple(values), tuple(residuals), tuple(iters))


# ---------------------------------------------------------------------------
# Dirichlet heat mass (killed semigroup)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HeatMassCurve:
    """Killed heat solution on a window: mass[i, x] at times[i].

    mass(., 0) = 1 at interior vertices, 0 on the frontier, non-increasing in
    t and valued in [0, 1]; produced by implicit Euler with the recorded step.
    """

    times: np.ndarray
    mass: np.ndarray  # shape (len(times), n)
    step: float
    halvings: int
    sup_difference: float  # between the last two step sizes, at grid times

    def at(self, x: int, t: float) -> float:
        if t <= self.times[0]:
            return float(self.mass[0, x])
        if t >= self.times[-1]:
            return float(self.mass[-1, x])
        return float(np.interp(t, self.times, self.mass[:, x]))


def _heat_grid(t_max: float, dense: bool) -> np.ndarray:
    # geometric section resolves every transient scale relatively; the
    # uniform section carries the slow modes for the weighted quadrature
    pts = [0.0, t_max]
    t = min(1e-10, t_max / 10.0)
    ratio = 2.0 ** (1.0 / 16.0) if dense else 2.0
    while t < t_max:
        pts.append(t)
        t *= ratio
    n_uniform = 4000 if dense else 200
    pts.extend(np.linspace(0.0, t_max, n_uniform + 1).tolist())
    return np.unique(np.asarray(pts))


def _interior_heat_operator(g: GraphWindow):
    """Interior Dirichlet Laplacian blocks: returns (interior ids, L, mu_int)."""
    interior = np.nonzero(g.interior_mask())[0]
    idx = -np.ones(g.n, dtype=np.int64)
    idx[interior] = np.arange(len(interior))
    adj = g.adjacency
    rows, cols, vals = [], [], []
    diag = np.zeros(len(interior))
    for i, x in enumerate(interior):
        nbrs, w = adj.neighbors(int(x))
        diag[i] = math.fsum(w.tolist())
        for y, ww in zip(nbrs, w):
            j = idx[y]
            if j >= 0:
                rows.append(i)
                cols.append(int(j))
                vals.append(-float(ww))
    L = sp.csr_matrix((vals, (rows, cols)), shape=(len(interior), len(interior))) + sp.diags(diag)
    return interior, L.tocsc(), g.mu[interior]


def _spectral_curve(eigvals, eig_basis, times, h):
    # implicit-Euler iterate (1 + h nu)^(-t/h) per mode, geometric interpolation
    # between integer steps; exact at step multiples and stable for any h > 0
    with np.errstate(over="ignore"):
        expo = np.outer(times / h, np.log1p(h * eigvals))
    factors = np.exp(-expo)
    return factors @ eig_basis


def dirichlet_heat_mass(
    g: GraphWindow,
    t_max: float,
    tol: float = 1e-6,
    max_halvings: int = 60,
) -> HeatMassCurve:
    """Integrate u' = -Delta u, u = 0 on the frontier, u(0) = 1 interior.

    Implicit Euler with initial step h <= min(0.1 / max Deg, t_max / 100),
    halved until two successive curves differ by less than tol at every grid
    point.  Small interior blocks use the spectral form of the iteration
    (the eigenbasis is shared by every step size); larger windows step
    sequentially with a reused sparse factorization and a coarser grid.
    """
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    interior, L, mu_int = _interior_heat_operator(g)
    n_int = len(interior)
    if n_int == 0:
        times = np.array([0.0, t_max])
        return HeatMassCurve(times, np.zeros((2, g.n)), t_max, 0, 0.0)
    max_deg = float((L.diagonal() / mu_int).max())
    h0 = min(0.1 / max(max_deg, 1e-300), t_max / 100.0)
    spectral = n_int <= SPECTRAL_LIMIT
    times = _heat_grid(t_max, dense=spectral)

    if spectral:
        s = np.sqrt(mu_int)
        C = (L.multiply(1.0 / s[:, None])).multiply(1.0 / s[None, :])
        eigvals, Q = np.linalg.eigh(C.toarray())
        eigvals = np.clip(eigvals, 0.0, None)
        w0 = Q.T @ s  # coefficients of the all-ones interior state
        basis = (Q * w0[None, :]).T / s[None, :]  # (modes, n_int)

        def run(h):
            return _spectral_curve(eigvals, basis, times, h)

    else:
        times = np.unique(np.round(times / h0) * h0)
        times = times[(times >= 0) & (times <= t_max + h0 / 2)]

        def run(h):
            lu = spla.splu(sp.diags(mu_int).tocsc() + h * L)
            steps = np.round(times / h).astype(np.int64)
            out = np.empty((len(times), n_int))
            u = np.ones(n_int)
            n = 0
            for i, target in enumerate(steps):
                while n < target:
                    u = lu.solve(mu_int * u)
                    n += 1
                out[i] = u
            return out

    h = h0
    prev = run(h)
    sup_diff = math.inf
    halvings = 0
    for halvings in range(1, max_halvings + 1):
        h = h / 2.0
        if h < 1e-300:
            raise OracleError("heat step size underflow")
        cur = run(h)
        sup_diff = float(np.max(np.abs(cur - prev)))
        prev = cur
        if sup_diff < tol:
            break
    else:
        raise OracleError(f"heat curves did not stabilize below tol={tol} (last diff {sup_diff:.3e})")

    mass = np.zeros((len(times), g.n))
    mass[:, interior] = np.clip(prev, 0.0, 1.0)
    # the initial condition is exact by definition
    mass[np.nonzero(times == 0.0)[0][:, None], interior[None, :]] = 1.0
    return HeatMassCurve(times, mass, h, halvings, sup_diff)


def exp_weighted_integral(times: np.ndarray, values: np.ndarray, lam: float) -> float:
    """int e^(-lam t) f(t) dt over the grid: piecewise-quadratic f through
    consecutive point triples, exponential moments integrated in closed form."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    times = np.asarray(times, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    total = 0.0
    i = 0
    n = len(times)
    while i + 1 < n:
        if i + 2 < n:
            t0, t1, t2 = times[i], times[i + 1], times[i + 2]
            v0, v1, v2 = values[i], values[i + 1], values[i + 2]
            s1, s2 = t1 - t0, t2 - t0
            c = ((v2 - v0) / s2 - (v1 - v0) / s1) / (s2 - s1)
            b = (v1 - v0) / s1 - c * s1
            E = math.exp(-lam * t0)
            d = lam * s2
            ed = math.exp(-d)
            om = -math.expm1(-d)
            m0 = E * om / lam
            m1 = E * (om - d * ed) / lam**2
            m2 = E * (2.0 * om - (d * d + 2.0 * d) * ed) / lam**3
            total += v0 * m0 + b * m1 + c * m2
            i += 2
        else:
            t0, t1 = times[i], times[i + 1]
            v0, v1 = values[i], values[i + 1]
            dt = t1 - t0
            E = math.exp(-lam * t0)
            d = lam * dt
            om = -math.expm1(-d)
            total += v0 * E * om / lam + (v1 - v0) / dt * E * (om - d * math.exp(-d)) / lam**2
            i += 1
    return total


def heat_deficit_scan(
    chain: WindowChain,
    t_max: float,
    tol: float = 1e-6,
    theta: float = DEFAULT_THETA,
    rel_tol: float = DEFAULT_REL_TOL,
) -> ScanResult:
    """Track the exit probability 1 - mass(root, T) along a window chain.

    Deficits decrease as the window grows (killed-semigroup monotonicity);
    stabilization above theta witnesses incompleteness, collapse below theta
    is horizon-limited completeness evidence.
    """
    radii, values = [], []
    for w in chain:
        if w.root is None:
            raise ValueError("chain windows must carry roots")
        curve = dirichlet_heat_mass(w, t_max, tol)
        radii.append(_window_radius(w))
        values.append(1.0 - curve.at(w.root, t_max))
    for a, b in zip(values, values[1:]):
        if b > a + max(100 * tol, 1e-8):
            raise OracleError(f"heat deficits increased along the exhaustion ({a} -> {b})")
    verdict = _limit_verdict(
        tuple(values), theta, rel_tol, TheoremTag.ORACLE_HEAT, {"t_max": t_max, "radii": tuple(radii)}
    )
    return ScanResult(verdict, tuple(radii), tuple(values), (0.0,) * len(values), (0,) * len(values))


# ---------------------------------------------------------------------------
# Monte Carlo explosion sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    stderr: float
    paths: int
    seed: int

    def within(self, p: float, k_sigma: float = 3.0) -> bool:
        """k-sigma agreement with a reference probability.

        The plug-in variance p(1-p)/N degenerates to zero when every path
        (or none) exits, so the comparison uses the add-one boundary
        correction; the reported ``stderr`` stays the plug-in value.
        """
        p_bar = (self.estimate * self.paths + 1.0) / (self.paths + 2.0)
        sigma = math.sqrt(p_bar * (1.0 - p_bar) / self.paths)
        return abs(self.estimate - p) <= k_sigma * max(self.stderr, sigma)


def mc_explosion_estimate(g: GraphWindow, t_max: float, paths: int, seed: int) -> McEstimate:
    """Fraction of chain paths from the root that hit the frontier before t_max.

    The chain holds at x for Exp(Deg(x)) time and jumps to y with probability
    b(x,y)/sum_z b(x,z).  Paths use per-index derived seeds, so the result is
    reproducible bit-for-bit for a fixed (seed, paths) regardless of order.
    """
    if paths < 1:
        raise ValueError("need at least one path")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    if g.root is None:
        raise ValueError("Monte Carlo start requires a root")
    if g.root in g.frontier:
        raise ValueError("root lies on the frontier")
    adj = g.adjacency
    mu = g.mu
    frontier = g.frontier_mask()
    cache = {}

    def tables(x: int):
        t = cache.get(x)
        if t is None:
            nbrs, w = adj.neighbors(x)
            cum = np.cumsum(w)
            total = float(cum[-1]) if len(cum) else 0.0
            t = (nbrs, cum, total)
            cache[x] = t
        return t

    hits = 0
    if t_max > 0:
        for i in range(paths):
            rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i,)))
            x = g.root
            t = 0.0
            while True:
                nbrs, cum, total = tables(x)
                rate = total / mu[x]
                if rate <= 0:
                    break  # absorbed at an isolated vertex; never exits
                t += rng.exponential(1.0 / rate)
                if t > t_max:
                    break
                j = int(np.searchsorted(cum, rng.random() * total, side="right"))
                j = min(j, len(nbrs) - 1)
                x = int(nbrs[j])
                if frontier[x]:
                    hits += 1
                    break
    p_hat = hits / paths
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / paths)
    return McEstimate(p_hat, stderr, paths, seed)
