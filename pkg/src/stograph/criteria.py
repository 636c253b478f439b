"""Analytic completeness/incompleteness criteria and certificate checkers.

Every criterion works on a RadialProfile (weakly symmetric data with exact
tails) or, where stated, a GraphWindow.  The common skeleton: verify a series
hypothesis with ``series_divergence_judge``, check the criterion's inequality
exactly per radius up to the horizon, and decide the tail by leading-order
growth comparison plus exact sampling just beyond the horizon.  Analytic
verdicts require exact-tail judgments; partial sums alone only ever produce
Unknown.

Completeness-only criteria never emit Incomplete and vice versa; the weakly
symmetric series test is the single two-sided criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .core import (
    GraphWindow,
    RadialProfile,
    apply_laplacian,
    radial_statistics,
    weighted_degree_all,
)
from .errors import BoundedDegreeRedirect, FrontierError, HypothesisNotEstablished
from .growth import (
    ExpTail,
    ExplicitRuleTail,
    FactorialTail,
    GrowthClass,
    PolyTail,
    RadialSequence,
    Tail,
    ZERO_CLASS,
    eventually_positive,
)
from .verdicts import (
    Caveat,
    Certificate,
    SeriesJudgment,
    SeriesMethod,
    SeriesStatus,
    Status,
    TheoremTag,
    Verdict,
    unknown,
)

__all__ = [
    "RadialTestFunction",
    "series_divergence_judge",
    "oy_violation_check",
    "khasminskii_check",
    "phi_transform",
    "series_completeness_test",
    "curvature_completeness_test",
    "kplus_series_test",
    "incompleteness_series_test",
    "ratio_curvature_test",
    "weakly_symmetric_test",
]

TAIL_SAMPLES = 32


@dataclass(frozen=True)
class RadialTestFunction:
    """Radial function f(r) = sum_{l<=r} increments(l).

    All of the paper-style test functions (violating functions, Khas'minskii
    gammas) are partial sums of a nonnegative radial sequence; supplying the
    increments keeps Laplacian evaluation exact:

        Delta f at sphere r  =  g-(r) inc(r) - g+(r) inc(r+1).
    """

    increments: RadialSequence
    name: str = ""

    @classmethod
    def from_increments(cls, values: Sequence[float], tail: Optional[Tail] = None, name: str = "") -> "RadialTestFunction":
        return cls(RadialSequence(tuple(values), tail), name)

    @classmethod
    def from_values(cls, values: Sequence[float], tail: Optional[Tail] = None, name: str = "") -> "RadialTestFunction":
        vals = [float(values[0])] + [float(b) - float(a) for a, b in zip(values, values[1:])]
        return cls(RadialSequence(tuple(vals), tail), name)

    def value(self, r: int) -> float:
        return self.increments.partial_sum(r)


# ---------------------------------------------------------------------------
# series judgment
# ---------------------------------------------------------------------------


def series_divergence_judge(
    terms: Union[Sequence[float], np.ndarray, RadialSequence],
    tail: Union[Tail, GrowthClass, None] = None,
) -> SeriesJudgment:
    """Decide sum(terms) = +inf from an exact tail descriptor.

    Polynomial-class tails diverge iff the exponent is >= -1; growing
    exponential or factorial classes diverge, decaying ones converge.  With
    no tail the status is Inconclusive and only the partial sum is reported.
    """
    if isinstance(terms, RadialSequence):
        if tail is None:
            tail = terms.tail
        explicit = terms.values
    else:
        explicit = tuple(float(t) for t in terms)
    for i, t in enumerate(explicit):
        if t < 0:
            raise ValueError(f"series term {i} is negative: {t}")
    partial = math.fsum(explicit)
    if tail is None:
        return SeriesJudgment(SeriesStatus.INCONCLUSIVE, SeriesMethod.PARTIAL_SUM_HEURISTIC, partial, len(explicit))
    growth = tail.growth if isinstance(tail, Tail) else tail
    if growth.scale < 0:
        raise ValueError("series tail class has negative scale; terms must be nonnegative")
    status = SeriesStatus.DIVERGENT if growth.diverges() else SeriesStatus.CONVERGENT
    return SeriesJudgment(status, SeriesMethod.EXACT_TAIL, partial, len(explicit))


# ---------------------------------------------------------------------------
# leading-order class of the two-term radial Laplacian gap
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _GapClass:
    """Leading class of gap(r) = g+(r) a(r+1) - g-(r) a(r) on the tail.

    ``exact`` marks classes obtained from closed forms that are exact (not
    just leading-order) for all large r; ZERO_CLASS with exact=True means
    the gap vanishes identically on the tail.
    """

    growth: Optional[GrowthClass]
    exact: bool = False


_CONST_ORDER = (0.0, 0.0, 0.0, 0.0)


def _gap_class(p: RadialProfile, a_tail: Optional[Tail]) -> _GapClass:
    """a_tail continues the sequence a; None means a == 1 identically."""
    if a_tail is None:
        a_tail = PolyTail(0.0, 1.0)
    gpc, gmc = p.gp_class, p.gm_class
    if gpc is None or gmc is None:
        return _GapClass(None)
    ac = a_tail.growth
    lhs = gpc.mul(ac.shift(1))
    rhs = gmc.mul(ac)
    generic = lhs.sub(rhs)
    if generic is not None:
        return _GapClass(generic)

    # exact leading-order tie: refine with tail-kind structure
    s_tail = p.tail
    if p.join_complete and isinstance(s_tail, PolyTail) and isinstance(a_tail, PolyTail):
        # gap = sS sa [ (r+2)^(pS+pa) - r^pS (r+1)^pa ] ~ sS sa (2 pS + pa) r^(pS+pa-1)
        pS, sS = s_tail.exponent, s_tail.scale
        pa, sa = a_tail.exponent, a_tail.scale
        coef = sS * sa * (2.0 * pS + pa)
        if coef != 0.0:
            return _GapClass(GrowthClass(coef, power=pS + pa - 1.0))
        if pS == 0.0 and pa == 0.0:
            return _GapClass(ZERO_CLASS, exact=True)
        return _GapClass(None)
    if p.join_complete and isinstance(s_tail, ExpTail) and isinstance(a_tail, ExpTail):
        # gap = sS sa q^(r-1) beta^r (q^2 beta - 1), exactly
        q, sS = s_tail.base, s_tail.scale
        beta, sa = a_tail.base, a_tail.scale
        coef = sS * sa * (q * q * beta - 1.0) / q
        if coef == 0.0:
            return _GapClass(ZERO_CLASS, exact=True)
        return _GapClass(GrowthClass(coef, base=q * beta), exact=True)
    if (
        isinstance(p.gplus_tail, PolyTail)
        and p.gplus_tail.exponent == 0.0
        and gmc.order_key() == _CONST_ORDER
    ):
        cplus, cminus = p.gplus_tail.scale, gmc.scale
        if isinstance(a_tail, ExpTail):
            beta, sa = a_tail.base, a_tail.scale
            coef = sa * (cplus * beta - cminus)
            if coef == 0.0:
                return _GapClass(ZERO_CLASS, exact=True)
            return _GapClass(GrowthClass(coef, base=beta), exact=True)
        if isinstance(a_tail, PolyTail) and cplus == cminus:
            pa, sa = a_tail.exponent, a_tail.scale
            if pa == 0.0:
                return _GapClass(ZERO_CLASS, exact=True)
            return _GapClass(GrowthClass(cplus * sa * pa, power=pa - 1.0))
    return _GapClass(None)


def _gap_value(p: RadialProfile, inc: Optional[RadialSequence], r: int) -> float:
    """gap(r) = g+(r) a(r+1) - g-(r) a(r); a == 1 when inc is None."""
    a_next = 1.0 if inc is None else inc.value(r + 1)
    a_here = 1.0 if inc is None else inc.value(r)
    return p.gp(r) * a_next - p.gm(r) * a_here


def _exact_range(p: RadialProfile, inc: Optional[RadialSequence]) -> int:
    """Largest radius at which the gap is exactly evaluable."""
    r = p.horizon
    if inc is not None and inc.tail is None:
        r = min(r, inc.horizon - 1)
    return r


def _last_violation(ok: Sequence[bool]) -> Optional[int]:
    for r in range(len(ok) - 1, -1, -1):
        if not ok[r]:
            return r
    return None


def _tail_samples_ok(p: RadialProfile, check, start: int, count: int = TAIL_SAMPLES) -> bool:
    try:
        return all(check(r) for r in range(start + 1, start + 1 + count))
    except (IndexError, OverflowError):
        return False


# ---------------------------------------------------------------------------
# weak Omori-Yau maximum principle violation certificates
# ---------------------------------------------------------------------------


def _oy_window(g: GraphWindow, f: Union[Mapping[int, float], np.ndarray], alpha: float, c: float) -> Verdict:
    values = np.array([f[x] for x in range(g.n)], dtype=np.float64) if isinstance(f, Mapping) else np.asarray(f, dtype=np.float64)
    if np.any(values < 0):
        raise ValueError("f must be nonnegative")
    fstar_window = float(values.max()) if g.n else 0.0
    interior = g.interior_mask()
    omega = values > fstar_window - alpha
    region = np.nonzero(omega & interior)[0]
    if len(region) == 0:
        return unknown("window Omega_alpha has no interior vertices", (Caveat.HORIZON_LIMITED,))
    sup_delta = max(apply_laplacian(g, values, int(x)) for x in region)
    if sup_delta > -c:
        return unknown(
            f"sup of Delta f over the windowed superlevel set is {sup_delta:.6g} > -c; no violation",
            (Caveat.HORIZON_LIMITED,),
        )
    return unknown(
        "Delta f <= -c holds on the windowed superlevel set, but the true supremum "
        "of f and the tail of Omega_alpha are not determined by a finite window",
        (Caveat.HORIZON_LIMITED,),
    )


def oy_violation_check(
    obj: Union[GraphWindow, RadialProfile],
    f: Union[Mapping[int, float], np.ndarray, RadialTestFunction],
    alpha: float,
    c: float,
    degree_check_params: Tuple[int, ...] = (1, 2, 5, 10),
) -> Verdict:
    """Verify a candidate violation of the weak maximum principle.

    Incomplete requires: f nonnegative, non-decreasing radial with finite
    supremum; Delta f <= -c at every radius of the superlevel set
    Omega_alpha, exactly up to the horizon and by tail class beyond; and a
    certified bound alpha <= (mass of f's increments past the last violating
    radius), which places Omega_alpha inside the verified region.  The
    sanity consequences of a genuine violation are enforced: f must not
    attain its supremum, and certifiable members of Omega_{alpha'/n} must
    have weighted degree > n.  Window inputs yield diagnostics only (the
    supremum of f on an infinite graph is not window-determined).
    """
    if alpha <= 0 or c <= 0:
        raise ValueError("alpha and c must be positive")
    if isinstance(obj, GraphWindow):
        if isinstance(f, RadialTestFunction):
            stats = radial_statistics(obj)
            table = np.array([f.value(int(r)) for r in stats.radius])
            return _oy_window(obj, table, alpha, c)
        return _oy_window(obj, f, alpha, c)

    p = obj
    if not isinstance(f, RadialTestFunction):
        raise TypeError("profile certificates require a RadialTestFunction")
    inc = f.increments
    if any(v < 0 for v in inc.values):
        return unknown("rejected: non-monotone radial f (negative increment)")
    if inc.tail is not None and inc.tail.growth.scale < 0:
        return unknown("rejected: non-monotone radial f (negative tail)")

    judgment = series_divergence_judge(inc)
    if judgment.status is SeriesStatus.DIVERGENT:
        raise ValueError("f is unbounded (increments form a divergent series)")
    if judgment.status is SeriesStatus.INCONCLUSIVE:
        return unknown("cannot establish a finite supremum for f without a tail descriptor", (Caveat.HEURISTIC_SERIES,))
    if inc.tail is None or inc.tail.growth.is_zero:
        return unknown("rejected: f attains its supremum on the verified region")

    h_eval = _exact_range(p, inc)
    ok = [_gap_value(p, inc, r) >= c for r in range(h_eval + 1)]
    r_bad = _last_violation(ok)

    gap = _gap_class(p, inc.tail)
    if gap.growth is None:
        return unknown("tail behavior of Delta f undecided by leading-order comparison", (Caveat.HORIZON_LIMITED,))
    if gap.growth.is_zero or gap.growth.scale < 0:
        return unknown("Delta f does not stay <= -c on the tail")
    key = gap.growth.order_key()
    if key < _CONST_ORDER:
        return unknown("Delta f tends to 0 on the tail; no c > 0 works")
    if key == _CONST_ORDER:
        if not (gap.growth.scale > c or (gap.exact and gap.growth.scale >= c)):
            return unknown(f"tail gap stabilizes at {gap.growth.scale:.6g}, not above c = {c:.6g}")
    if not _tail_samples_ok(p, lambda r: _gap_value(p, inc, r) >= c, h_eval):
        return unknown("Delta f <= -c fails at a sampled radius beyond the horizon")

    if r_bad is not None:
        mass_beyond = inc.remainder_lower_bound(r_bad)
        if not alpha <= mass_beyond:
            return unknown(
                f"cannot certify Omega_alpha within the verified region: alpha = {alpha:.6g} exceeds "
                f"the certified increment mass {mass_beyond:.6g} beyond radius {r_bad}"
            )

    # Lemma-style degree control: certifiable members of Omega_{alpha'/n}
    # must have weighted degree > n.  The increment remainder decreases in r,
    # so membership, once certifiable, persists at all larger radii.
    alpha_prime = min(alpha, c)
    deg_class = p.degree_class
    for n in degree_check_params:
        thr = alpha_prime / n
        first_member = None
        for r in range(h_eval + 1):
            if inc.remainder_upper_bound(r) < thr:
                first_member = r
                break
        if first_member is None:
            continue
        for r in range(first_member, h_eval + 1):
            if p.degree(r) <= n:
                return unknown(
                    f"rejected: radius {r} certifiably lies in Omega_{{alpha'/{n}}} but Deg = "
                    f"{p.degree(r):.6g} <= {n}"
                )
        if deg_class is not None:
            key = deg_class.order_key()
            if key < _CONST_ORDER or (key == _CONST_ORDER and deg_class.scale <= n):
                return unknown(
                    f"rejected: tail of Omega_{{alpha'/{n}}} has weighted degree bounded by "
                    f"~{deg_class.scale:.6g} <= {n}"
                )

    cert = Certificate(
        tag=TheoremTag.OY_VIOLATION,
        parameters={
            "alpha": alpha,
            "c": c,
            "f": f.name or "radial partial-sum function",
            "first_safe_radius": 0 if r_bad is None else r_bad + 1,
            "gap_class": gap.growth,
        },
        verified_region=f"radii 0..{h_eval} exact; tail by growth class",
    )
    return Verdict(Status.INCOMPLETE, cert)


# ---------------------------------------------------------------------------
# Khas'minskii criterion
# ---------------------------------------------------------------------------


def _khasminskii_window(
    g: GraphWindow,
    gamma: Union[Mapping[int, float], np.ndarray, RadialTestFunction],
    lam: float,
    exceptional: Iterable[int],
) -> Verdict:
    if isinstance(gamma, RadialTestFunction):
        stats = radial_statistics(g)
        values = np.array([gamma.value(int(r)) for r in stats.radius])
    elif isinstance(gamma, Mapping):
        values = np.array([gamma[x] for x in range(g.n)], dtype=np.float64)
    else:
        values = np.asarray(gamma, dtype=np.float64)
    if np.any(values < 0):
        raise ValueError("gamma must be nonnegative")
    A = frozenset(int(x) for x in exceptional)
    if A & g.frontier:
        raise FrontierError("exceptional set touches the frontier; its degree bound cannot be certified")
    degrees = weighted_degree_all(g)
    M = max((float(degrees[x]) for x in A), default=0.0)
    interior = g.interior_mask()
    for x in range(g.n):
        if not interior[x] or x in A:
            continue
        resid = apply_laplacian(g, values, x) + lam * values[x]
        if resid < 0:
            return unknown(f"Delta gamma + lambda gamma = {resid:.6g} < 0 at vertex {x} outside A")
    cert = Certificate(
        tag=TheoremTag.KHASMINSKII,
        parameters={"lambda": lam, "exceptional_set_size": len(A), "exceptional_degree_bound": M},
        verified_region="window interior outside A",
    )
    return Verdict(Status.COMPLETE, cert, (Caveat.HORIZON_LIMITED,),
                   "growth of gamma and the inequality beyond the window are not window-verifiable")


def khasminskii_check(
    obj: Union[GraphWindow, RadialProfile],
    gamma: Union[Mapping[int, float], np.ndarray, RadialTestFunction],
    lam: float = 1.0,
    exceptional: Union[Iterable[int], int, None] = None,
) -> Verdict:
    """Completeness from Delta gamma + lambda gamma >= 0 outside a
    bounded-degree set, for a gamma growing to infinity with the degree.

    On profiles the exceptional set is the ball of the given radius and the
    growth condition is established from the tail descriptors; inputs proven
    to have bounded weighted degree are rejected with a redirect (use the
    bounded-degree completeness test there).  Window verdicts always carry
    the HorizonLimited caveat.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if isinstance(obj, GraphWindow):
        return _khasminskii_window(obj, gamma, lam, exceptional if exceptional is not None else ())

    p = obj
    if not isinstance(gamma, RadialTestFunction):
        raise TypeError("profile checks require a RadialTestFunction gamma")
    r_A = -1 if exceptional is None else int(exceptional)
    if r_A >= p.horizon:
        raise ValueError("exceptional ball must lie strictly inside the horizon")
    inc = gamma.increments
    if any(v < 0 for v in inc.values) or (inc.tail is not None and inc.tail.growth.scale < 0):
        raise ValueError("gamma must be non-decreasing in r (nonnegative increments)")

    judgment = series_divergence_judge(inc)
    if judgment.status is SeriesStatus.CONVERGENT:
        raise ValueError("gamma is bounded; the growth condition fails")

    deg_class = p.degree_class
    if deg_class is not None and not deg_class.limit_is_infinite():
        raise BoundedDegreeRedirect(
            "weighted degree is bounded along the tail; use bounded_degree_completeness_test"
        )
    growth_established = deg_class is not None and judgment.status is SeriesStatus.DIVERGENT

    M = max(p.degree(r) for r in range(r_A + 1)) if r_A >= 0 else 0.0
    h_eval = _exact_range(p, inc)
    for r in range(r_A + 1, h_eval + 1):
        resid = lam * gamma.value(r) - _gap_value(p, inc, r)
        if resid < 0:
            return unknown(f"Delta gamma + lambda gamma = {resid:.6g} < 0 at radius {r} outside A")

    caveats: Tuple[Caveat, ...] = ()
    detail = ""
    gap = _gap_class(p, inc.tail) if inc.tail is not None else _GapClass(None)
    gamma_class = inc.tail.growth.partial_sum() if inc.tail is not None else None
    tail_decided = False
    if gap.growth is not None and gamma_class is not None:
        if gap.growth.is_zero or gap.growth.scale < 0:
            tail_decided = True  # -Delta gamma <= 0 on the tail, lambda gamma >= 0 carries it
        else:
            diff = gamma_class.scaled(lam).sub(gap.growth)
            sign = eventually_positive(diff)
            if sign is True:
                tail_decided = True
            elif sign is False:
                return unknown("Delta gamma + lambda gamma fails on the tail by leading-order comparison")
        if tail_decided and not _tail_samples_ok(
            p, lambda r: lam * gamma.value(r) - _gap_value(p, inc, r) >= 0, h_eval
        ):
            return unknown("inequality fails at a sampled radius beyond the horizon")
    if not (tail_decided and growth_established):
        caveats = (Caveat.HORIZON_LIMITED,)
        detail = "inequality verified up to the horizon without a tail argument"

    cert = Certificate(
        tag=TheoremTag.KHASMINSKII,
        parameters={
            "lambda": lam,
            "exceptional_radius": r_A,
            "exceptional_degree_bound": M,
            "gamma": gamma.name or "radial partial-sum function",
        },
        verified_region=f"radii {r_A + 1}..{h_eval} exact" + ("; tail by growth class" if tail_decided else ""),
    )
    return Verdict(Status.COMPLETE, cert, caveats, detail)


# ---------------------------------------------------------------------------
# phi-transform (variant Khas'minskii machinery)
# ---------------------------------------------------------------------------


def phi_transform(
    f: Union[Sequence[float], RadialSequence],
    sigma_values: Sequence[float],
    quad_tol: float = 1e-9,
    max_halvings: int = 14,
) -> np.ndarray:
    """Compose phi(r) = exp(integral_0^r ds / (f(s) + s)) with sigma.

    f is a positive non-decreasing table on the integer grid 0..R (linear
    interpolation in between); the reciprocal series sum 1/f must not be
    judged Convergent.  The integral is composite trapezoid with step <= 1/8,
    halved until the phi values at the sigma points stabilize.  The output
    feeds ``khasminskii_check`` with lambda = 1.
    """
    seq = f if isinstance(f, RadialSequence) else RadialSequence(tuple(float(v) for v in f))
    table = np.asarray(seq.values, dtype=np.float64)
    if np.any(table <= 0):
        raise ValueError("f must be strictly positive")
    if np.any(np.diff(table) < 0):
        raise ValueError("f must be non-decreasing")
    inv_tail = None
    if seq.tail is not None:
        g = seq.tail.growth
        inv_tail = GrowthClass(1.0 / g.scale, -g.fact, 1.0 / g.base, -g.power, -g.logpow)
    judgment = series_divergence_judge([1.0 / v for v in table], inv_tail)
    if judgment.status is SeriesStatus.CONVERGENT:
        raise HypothesisNotEstablished("sum 1/f converges; the transform hypothesis fails")

    sigma = np.asarray(sigma_values, dtype=np.float64)
    if np.any(sigma < 0):
        raise ValueError("sigma values must be nonnegative")
    R = len(table) - 1
    if np.any(sigma > R):
        raise ValueError(f"sigma values exceed the table range [0, {R}]")
    smax = float(sigma.max()) if len(sigma) else 0.0
    if smax == 0.0:
        return np.ones_like(sigma)

    def integral_at_sigma(steps_per_unit: int) -> np.ndarray:
        grid = np.linspace(0.0, smax, int(math.ceil(smax * steps_per_unit)) + 1)
        fg = np.interp(grid, np.arange(len(table), dtype=np.float64), table)
        integrand = 1.0 / (fg + grid)
        h = grid[1] - grid[0]
        cum = np.concatenate([[0.0], np.cumsum((integrand[1:] + integrand[:-1]) * (h / 2.0))])
        return np.interp(sigma, grid, cum)

    steps = 8
    prev = integral_at_sigma(steps)
    for _ in range(max_halvings):
        steps *= 2
        cur = integral_at_sigma(steps)
        if np.max(np.abs(cur - prev)) < quad_tol:
            prev = cur
            break
        prev = cur
    return np.exp(prev)


# ---------------------------------------------------------------------------
# series-driven completeness criteria
# ---------------------------------------------------------------------------


def series_completeness_test(p: RadialProfile, a: RadialSequence, lam: float = 1.0) -> Verdict:
    """Completeness from m+ a_{r+1} - m- a_r <= lambda * sum_{n<=r} a_n
    outside a finite set, for a divergent nonnegative series a."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    judgment = series_divergence_judge(a)
    if judgment.status is not SeriesStatus.DIVERGENT:
        raise HypothesisNotEstablished(f"sum a_n must diverge; judged {judgment.status.value}")

    h_eval = _exact_range(p, a)
    ok = [_gap_value(p, a, r) <= lam * a.partial_sum(r) for r in range(h_eval + 1)]
    r_bad = _last_violation(ok)
    if r_bad is not None and r_bad == h_eval:
        return unknown("inequality still failing at the horizon; no finite exceptional set visible")

    gap = _gap_class(p, a.tail)
    if gap.growth is None:
        return unknown("tail behavior undecided by leading-order comparison", (Caveat.HORIZON_LIMITED,))
    sum_class = a.tail.growth.partial_sum() if a.tail is not None else None
    tail_ok = False
    if gap.growth.is_zero or gap.growth.scale < 0:
        tail_ok = True  # gap <= 0 <= lambda * partial sums
    elif sum_class is not None:
        diff = sum_class.scaled(lam).sub(gap.growth)
        sign = eventually_positive(diff)
        if sign is False:
            return unknown("inequality fails on the tail by leading-order comparison")
        tail_ok = sign is True
    if not tail_ok:
        return unknown("tail comparison inconclusive", (Caveat.HORIZON_LIMITED,))
    if not _tail_samples_ok(p, lambda r: _gap_value(p, a, r) <= lam * a.partial_sum(r), h_eval):
        return unknown("inequality fails at a sampled radius beyond the horizon")

    cert = Certificate(
        tag=TheoremTag.SERIES,
        parameters={
            "lambda": lam,
            "exceptional_below_radius": 0 if r_bad is None else r_bad + 1,
            "series_head": tuple(a.values[:8]),
            "series_tail": a.tail,
        },
        verified_region=f"radii 0..{h_eval} exact; tail by growth class",
    )
    return Verdict(Status.COMPLETE, cert)


def curvature_completeness_test(p: RadialProfile, f: RadialSequence) -> Verdict:
    """Completeness from m+ - m- <= f(r) outside a finite set, for positive
    increasing f with divergent reciprocal sum."""
    if any(v <= 0 for v in f.values):
        raise ValueError("f must be strictly positive")
    if any(b < a for a, b in zip(f.values, f.values[1:])):
        raise ValueError("f must be non-decreasing")
    inv_class = None
    if f.tail is not None:
        g = f.tail.growth
        inv_class = GrowthClass(1.0 / g.scale, -g.fact, 1.0 / g.base, -g.power, -g.logpow)
    judgment = series_divergence_judge([1.0 / v for v in f.values], inv_class)
    if judgment.status is not SeriesStatus.DIVERGENT:
        raise HypothesisNotEstablished(f"sum 1/f must diverge; judged {judgment.status.value}")

    h_eval = p.horizon if f.tail is not None else min(p.horizon, f.horizon)
    ok = [p.gp(r) - p.gm(r) <= f.value(r) for r in range(h_eval + 1)]
    r_bad = _last_violation(ok)
    if r_bad is not None and r_bad == h_eval:
        return unknown("curvature bound still failing at the horizon")

    gap = _gap_class(p, None)  # class of m+ - m-
    if gap.growth is None:
        return unknown("tail behavior of m+ - m- undecided", (Caveat.HORIZON_LIMITED,))
    tail_ok = False
    if gap.growth.is_zero or gap.growth.scale < 0:
        tail_ok = True
    elif f.tail is not None:
        sign = eventually_positive(f.tail.growth.sub(gap.growth))
        if sign is False:
            return unknown("curvature bound fails on the tail by leading-order comparison")
        tail_ok = sign is True
    if not tail_ok:
        return unknown("tail comparison inconclusive", (Caveat.HORIZON_LIMITED,))
    if f.tail is not None and not _tail_samples_ok(p, lambda r: p.gp(r) - p.gm(r) <= f.value(r), h_eval):
        return unknown("curvature bound fails at a sampled radius beyond the horizon")

    cert = Certificate(
        tag=TheoremTag.CURVATURE,
        parameters={
            "exceptional_below_radius": 0 if r_bad is None else r_bad + 1,
            "f_head": tuple(f.values[:8]),
            "f_tail": f.tail,
        },
        verified_region=f"radii 0..{h_eval} exact; tail by growth class",
    )
    return Verdict(Status.COMPLETE, cert)


def kplus_series_test(p: RadialProfile) -> Verdict:
    """Completeness from divergence of sum 1/K+(r)."""
    for r in range(p.horizon + 1):
        if p.gplus[r] == 0:
            raise ValueError(f"K+({r}) = 0; the profile is not forward-connected")
    terms = [1.0 / p.gplus[r] for r in range(p.horizon + 1)]
    gpc = p.gp_class
    term_class = None
    if gpc is not None:
        if gpc.is_zero or gpc.scale <= 0:
            raise ValueError("K+ vanishes along the tail")
        term_class = GrowthClass(1.0 / gpc.scale, -gpc.fact, 1.0 / gpc.base, -gpc.power, -gpc.logpow)
    judgment = series_divergence_judge(terms, term_class)
    if judgment.status is SeriesStatus.DIVERGENT:
        cert = Certificate(
            tag=TheoremTag.KPLUS,
            parameters={"judgment": judgment, "term_class": term_class},
            verified_region=f"radii 0..{p.horizon} exact; tail by growth class",
        )
        return Verdict(Status.COMPLETE, cert)
    if judgment.status is SeriesStatus.CONVERGENT:
        return unknown("sum 1/K+ converges; the criterion is silent")
    return unknown("no tail descriptor; partial sums cannot witness divergence", (Caveat.HEURISTIC_SERIES,))


# ---------------------------------------------------------------------------
# incompleteness criteria
# ---------------------------------------------------------------------------


def incompleteness_series_test(p: RadialProfile, a: RadialSequence, c: float, n0: int = 0) -> Verdict:
    """Incompleteness from m+ a_{r+1} - m- a_r > c at every radius r > n0,
    for a convergent nonnegative series a."""
    if c <= 0:
        raise ValueError("c must be positive")
    judgment = series_divergence_judge(a)
    if judgment.status is not SeriesStatus.CONVERGENT:
        raise HypothesisNotEstablished(f"sum a_l must converge; judged {judgment.status.value}")

    h_eval = _exact_range(p, a)
    if n0 >= h_eval:
        return unknown(f"n0 = {n0} leaves no verifiable radii below the horizon")
    for r in range(n0 + 1, h_eval + 1):
        gap = _gap_value(p, a, r)
        if not gap > c:
            return unknown(f"gap m+ a_(r+1) - m- a_r = {gap:.6g} <= c at radius {r}")

    gap = _gap_class(p, a.tail)
    if gap.growth is None:
        return unknown("tail behavior of the gap undecided by leading-order comparison", (Caveat.HORIZON_LIMITED,))
    if gap.growth.is_zero or gap.growth.scale < 0:
        return unknown("gap does not stay above c on the tail")
    key = gap.growth.order_key()
    if key < _CONST_ORDER:
        return unknown("gap tends to 0 on the tail")
    if key == _CONST_ORDER and not gap.growth.scale > c:
        return unknown(f"tail gap stabilizes at {gap.growth.scale:.6g}, not above c = {c:.6g}")
    if not _tail_samples_ok(p, lambda r: _gap_value(p, a, r) > c, h_eval):
        return unknown("gap fails at a sampled radius beyond the horizon")

    cert = Certificate(
        tag=TheoremTag.INCOMPLETENESS_SERIES,
        parameters={
            "c": c,
            "n0": n0,
            "series_head": tuple(a.values[:8]),
            "series_tail": a.tail,
            "gap_class": gap.growth,
        },
        verified_region=f"radii {n0 + 1}..{h_eval} exact; tail by growth class",
    )
    return Verdict(Status.INCOMPLETE, cert)


def ratio_curvature_test(p: RadialProfile, emit_certificate: bool = True) -> Verdict:
    """Incompleteness from convergence of sum_r max_{S_r} m-/m+.

    On success the verdict's certificate carries the explicit violating
    function f(x) = sum_{r < r(x)} eta(r) (as a RadialTestFunction) together
    with suggested (alpha, c = 1/2), ready to replay through
    ``oy_violation_check``.
    """
    for r in range(1, p.horizon + 1):
        if p.gplus[r] == 0:
            raise ValueError(f"m+ vanishes on sphere {r}")
    eta = [p.gminus[r] / p.gplus[r] for r in range(1, p.horizon + 1)]
    gpc, gmc = p.gp_class, p.gm_class
    eta_class = gmc.div(gpc) if (gpc is not None and gmc is not None) else None
    judgment = series_divergence_judge(eta, eta_class)
    if judgment.status is SeriesStatus.INCONCLUSIVE:
        return unknown("no tail descriptor; ratio series undecided", (Caveat.HEURISTIC_SERIES,))
    if judgment.status is SeriesStatus.DIVERGENT:
        return unknown("ratio series diverges; the criterion is silent")

    params = {"judgment": judgment, "eta_class": eta_class, "eta_head": tuple(eta[:8])}
    if emit_certificate:
        # increments of the violating function: a_0 = a_1 = 0, a_l = eta(l-1)
        inc_values = [0.0, 0.0] + eta[:-1]
        inc_tail = None
        if p.has_tail() and eta_class is not None:
            inc_tail = ExplicitRuleTail(
                rule=lambda l: p.gm(l - 1) / p.gp(l - 1),
                growth_class=eta_class.shift(-1),
            )
        inc = RadialSequence(tuple(inc_values), inc_tail)
        c = 0.5
        gaps_ok = [_gap_value(p, inc, r) >= c for r in range(_exact_range(p, inc) + 1)]
        r_bad = _last_violation(gaps_ok)
        mass = inc.remainder_lower_bound(r_bad) if r_bad is not None else math.fsum(inc.values)
        alpha = min(0.45, 0.5 * mass) if mass > 0 else 0.45
        params["violating_function"] = RadialTestFunction(inc, name="sum of sphere max backward/forward ratios")
        params["alpha"] = alpha
        params["c"] = c
    cert = Certificate(
        tag=TheoremTag.RATIO_CURVATURE,
        parameters=params,
        verified_region=f"radii 1..{p.horizon} exact; tail by growth class",
    )
    return Verdict(Status.INCOMPLETE, cert)


# ---------------------------------------------------------------------------
# the weakly symmetric iff-criterion
# ---------------------------------------------------------------------------


def weakly_symmetric_test(p: RadialProfile) -> Verdict:
    """The two-sided criterion: complete iff sum_r V(r) / (g+(r) S(r)) = +inf."""
    for r in range(p.horizon + 1):
        if p.gplus[r] == 0:
            raise ValueError(f"g+({r}) = 0; the series is undefined")
    V = np.cumsum(np.asarray(p.sphere_sizes, dtype=np.float64))
    terms = [float(V[r]) / (p.gplus[r] * p.sphere_sizes[r]) for r in range(p.horizon + 1)]
    term_class = None
    vc, gpc, sc = p.volume_class, p.gp_class, p.S_class
    if vc is not None and gpc is not None and sc is not None:
        term_class = vc.div(gpc.mul(sc))
    judgment = series_divergence_judge(terms, term_class)
    params = {"judgment": judgment, "term_class": term_class, "terms_head": tuple(terms[:8])}
    region = f"radii 0..{p.horizon} exact; tail by growth class"
    if judgment.status is SeriesStatus.DIVERGENT:
        return Verdict(Status.COMPLETE, Certificate(TheoremTag.WEAKLY_SYMMETRIC, params, region))
    if judgment.status is SeriesStatus.CONVERGENT:
        return Verdict(Status.INCOMPLETE, Certificate(TheoremTag.WEAKLY_SYMMETRIC, params, region))
    return unknown("no tail descriptor; volume series undecided", (Caveat.HEURISTIC_SERIES,))
