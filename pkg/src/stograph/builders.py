"""Constructors for the named graph families, windows, and window chains.

Profiles come in two flavors here: spherically symmetric joins G_S (every
vertex of sphere r adjacent to every vertex of sphere r+1), built from a
sphere-size rule, and regular k-ary trees.  Windows can be materialized
explicitly (one vertex per graph vertex) or as radial quotients: a weighted
path with mu(r) = S(r) and edge weight g+(r) S(r) between consecutive
spheres.  Radial functions on the symmetric graph and on its quotient have
identical Laplacians, so the quotient is an exact stand-in for the oracle's
boundary-value problems at radii far beyond what explicit complete joins can
reach (the equivalence is unit-tested on small radii).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .core import GraphWindow, RadialProfile
from .errors import NotRealizableError
from .growth import ExpTail, ExplicitRuleTail, FactorialTail, GrowthClass, PolyTail, Tail

__all__ = [
    "WindowChain",
    "build_spherically_symmetric",
    "build_kary_tree",
    "build_pendant_tree",
    "build_path",
    "build_kary_tree_window",
    "materialize_window",
    "materialize_chain",
    "radial_quotient_window",
    "radial_quotient_chain",
]


@dataclass(frozen=True)
class WindowChain:
    """Nested windows sharing a root, ordered by increasing radius.

    Nesting is label-based: every vertex of a smaller window appears (same
    label, same measure) in every larger one, interior neighborhoods agree,
    and the root label is shared.  Builders in this module produce chains
    whose labels make this checkable.
    """

    windows: Tuple[GraphWindow, ...]

    def __post_init__(self) -> None:
        ws = tuple(self.windows)
        object.__setattr__(self, "windows", ws)
        if len(ws) < 2:
            raise ValueError("a window chain needs at least two windows")
        for a, b in zip(ws, ws[1:]):
            _check_nested(a, b)

    def __iter__(self):
        return iter(self.windows)

    def __len__(self) -> int:
        return len(self.windows)

    def index_of_label(self, w: GraphWindow, label) -> int:
        labels = w.labels if w.labels is not None else tuple(range(w.n))
        return labels.index(label)


def _labels_of(w: GraphWindow) -> tuple:
    return w.labels if w.labels is not None else tuple(range(w.n))


def _check_nested(small: GraphWindow, big: GraphWindow) -> None:
    ls, lb = _labels_of(small), _labels_of(big)
    pos = {lab: i for i, lab in enumerate(lb)}
    if len(pos) != len(lb):
        raise ValueError("larger window has duplicate labels")
    mapping = []
    for i, lab in enumerate(ls):
        if lab not in pos:
            raise ValueError(f"window nesting broken: label {lab!r} missing from the larger window")
        mapping.append(pos[lab])
    mapping = np.array(mapping, dtype=np.int64)
    if not np.allclose(small.mu, big.mu[mapping], rtol=0, atol=0):
        raise ValueError("window nesting broken: vertex measures differ on shared labels")
    if small.root is None or big.root is None:
        raise ValueError("chain windows must carry roots")
    if ls[small.root] != lb[big.root]:
        raise ValueError("chain windows must share the root label")
    # interior neighborhoods must coincide
    small_interior = small.interior_mask()
    adj_small, adj_big = small.adjacency, big.adjacency
    for x in range(small.n):
        if not small_interior[x]:
            continue
        nbrs_s, w_s = adj_small.neighbors(x)
        nbrs_b, w_b = adj_big.neighbors(int(mapping[x]))
        pairs_s = sorted((int(mapping[y]), float(w)) for y, w in zip(nbrs_s, w_s))
        pairs_b = sorted((int(y), float(w)) for y, w in zip(nbrs_b, w_b))
        if pairs_s != pairs_b:
            raise ValueError(f"window nesting broken: neighborhood of interior label {ls[x]!r} changed")


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------

SphereRule = Union[str, Sequence[int], Callable[[int], int]]


def _sphere_rule(rule: SphereRule) -> Tuple[Callable[[int], int], Optional[Tail], bool]:
    """Normalize a sphere-size rule to (S(r), tail descriptor, used_ceiling)."""
    if isinstance(rule, str):
        if rule == "factorial":
            return (lambda r: math.factorial(r) if r else 1), FactorialTail(1.0), False
        if rule.startswith("exp"):
            return (lambda r: 2**r), ExpTail(2.0, 1.0), False
        raise ValueError(f"unknown sphere rule {rule!r}")
    if callable(rule):
        return rule, None, False
    seq = tuple(int(s) for s in rule)

    def explicit(r: int) -> int:
        if r >= len(seq):
            raise ValueError(f"explicit sphere sequence must provide S(0..horizon+1); missing S({r})")
        return seq[r]

    return explicit, None, False


def build_spherically_symmetric(
    rule: Union[float, SphereRule],
    horizon: int,
) -> RadialProfile:
    """G_S profile: spheres of size S(r), consecutive spheres completely joined.

    ``rule`` is a polynomial exponent p (S(r) = ceil((r+1)**p)), the string
    "exp" (S(r) = 2**r) or "factorial", an explicit sequence, or a callable.
    g+(r) = S(r+1) and g-(r) = S(r-1), so the double-counting identity holds
    by construction.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    used_ceiling = False
    if isinstance(rule, (int, float)) and not isinstance(rule, bool):
        p = float(rule)
        if p < 0:
            raise ValueError("polynomial exponent must be nonnegative")
        if p == int(p):
            S = lambda r: (r + 1) ** int(p)
            tail: Optional[Tail] = PolyTail(p, 1.0)
        else:
            S = lambda r: math.ceil((r + 1) ** p)
            tail = ExplicitRuleTail(rule=lambda r: math.ceil((r + 1) ** p), growth_class=GrowthClass(1.0, power=p))
            used_ceiling = True
    else:
        S, tail, used_ceiling = _sphere_rule(rule)
    sizes = [S(r) for r in range(horizon + 2)]
    if any(s <= 0 for s in sizes):
        raise ValueError("sphere rule yields a nonpositive sphere size")
    if sizes[0] != 1:
        raise ValueError("sphere rule must give S(0) = 1")
    gplus = [sizes[r + 1] for r in range(horizon + 1)]
    gminus = [0] + [sizes[r - 1] for r in range(1, horizon + 1)]
    return RadialProfile(
        tuple(sizes[: horizon + 1]),
        tuple(gplus),
        tuple(gminus),
        tail=tail,
        join_complete=True,
        ceil_rule=used_ceiling,
    )


def build_kary_tree(k: int, horizon: int) -> RadialProfile:
    """Regular rooted tree: g+ = k everywhere, g- = 1 off the root, S(r) = k**r."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    sizes = tuple(k**r for r in range(horizon + 1))
    gplus = tuple(k for _ in range(horizon + 1))
    gminus = (0,) + tuple(1 for _ in range(horizon))
    return RadialProfile(
        sizes,
        gplus,
        gminus,
        tail=ExpTail(float(k), 1.0),
        gplus_tail=PolyTail(0.0, float(k)),
        join_complete=False,
    )


# ---------------------------------------------------------------------------
# explicit windows
# ---------------------------------------------------------------------------


def build_path(horizon: int) -> GraphWindow:
    """Half-line window 0 - 1 - ... - R with frontier {R}."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    u = np.arange(horizon, dtype=np.int64)
    v = u + 1
    w = np.ones(horizon)
    return GraphWindow(np.ones(horizon + 1), u, v, w, frozenset({horizon}), root=0)


def build_pendant_tree(leaf_rule: Callable[[int], int], horizon: int) -> GraphWindow:
    """Spine 0..R with leaf_rule(n) pendant leaves at spine vertex n.

    The spine end R is the only frontier vertex (its outward continuation is
    unknown); leaves are genuine degree-1 vertices.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    edges = [(n, n + 1, 1.0) for n in range(horizon)]
    next_id = horizon + 1
    for n in range(horizon + 1):
        leaves = int(leaf_rule(n))
        if leaves < 0:
            raise ValueError("leaf rule must be nonnegative")
        for _ in range(leaves):
            edges.append((n, next_id, 1.0))
            next_id += 1
    return GraphWindow.from_edges(next_id, edges, frontier={horizon}, root=0)


def build_kary_tree_window(k: int, horizon: int) -> GraphWindow:
    """Explicit regular k-ary tree ball of the given radius; frontier = last level."""
    if k < 2 or horizon < 1:
        raise ValueError("need k >= 2 and horizon >= 1")
    level_start = [0]
    for r in range(horizon + 1):
        level_start.append(level_start[-1] + k**r)
    n = level_start[-1]
    us, vs = [], []
    for r in range(horizon):
        parents = np.arange(level_start[r], level_start[r + 1], dtype=np.int64)
        children = np.arange(level_start[r + 1], level_start[r + 2], dtype=np.int64)
        us.append(np.repeat(parents, k))
        vs.append(children)
    u = np.concatenate(us)
    v = np.concatenate(vs)
    frontier = frozenset(range(level_start[horizon], n))
    return GraphWindow(np.ones(n), u, v, np.ones(len(u)), frontier, root=0)


def materialize_window(p: RadialProfile, radius: int) -> GraphWindow:
    """Explicit window of a complete-join profile: spheres in id order, the
    complete bipartite join between consecutive spheres, frontier = last sphere.

    Only join-realizable profiles (g+(r) = S(r+1), g-(r) = S(r-1)) are
    materialized; ids are sphere-major, so windows of increasing radius are
    prefix-consistent.
    """
    if radius < 1 or radius > p.horizon:
        raise ValueError(f"radius must be in 1..{p.horizon}")
    for r in range(radius):
        if p.gplus[r] != p.sphere_sizes[min(r + 1, p.horizon)] or (r > 0 and p.gminus[r] != p.sphere_sizes[r - 1]):
            raise NotRealizableError(
                f"profile is not a complete join at radius {r}; only join-realizable profiles are materialized"
            )
    sizes = p.sphere_sizes[: radius + 1]
    start = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    n = int(start[-1])
    us, vs = [], []
    for r in range(radius):
        a = np.arange(start[r], start[r + 1], dtype=np.int64)
        b = np.arange(start[r + 1], start[r + 2], dtype=np.int64)
        us.append(np.repeat(a, len(b)))
        vs.append(np.tile(b, len(a)))
    u = np.concatenate(us) if us else np.zeros(0, dtype=np.int64)
    v = np.concatenate(vs) if vs else np.zeros(0, dtype=np.int64)
    frontier = frozenset(range(int(start[radius]), n))
    return GraphWindow(np.ones(n), u, v, np.ones(len(u)), frontier, root=0)


def materialize_chain(p: RadialProfile, radii: Sequence[int]) -> WindowChain:
    radii = sorted(set(int(r) for r in radii))
    return WindowChain(tuple(materialize_window(p, r) for r in radii))


# ---------------------------------------------------------------------------
# radial quotients
# ---------------------------------------------------------------------------


def radial_quotient_window(p: RadialProfile, radius: int) -> GraphWindow:
    """Weighted-path quotient of a weakly symmetric graph up to the radius.

    Vertex r carries mu(r) = S(r); the edge between spheres r and r+1 has
    total weight g+(r) S(r) (= g-(r+1) S(r+1) by double counting).  Radial
    functions have the same Laplacian here as on the symmetric graph, and
    mu-weighted ball volumes equal the true vertex counts.
    """
    if radius < 1 or radius > p.horizon:
        raise ValueError(f"radius must be in 1..{p.horizon}")
    mu = np.array([float(p.sphere_sizes[r]) for r in range(radius + 1)])
    u = np.arange(radius, dtype=np.int64)
    v = u + 1
    w = np.array([float(p.gplus[r]) * p.sphere_sizes[r] for r in range(radius)])
    return GraphWindow(mu, u, v, w, frozenset({radius}), root=0, labels=tuple(range(radius + 1)))


def radial_quotient_chain(p: RadialProfile, radii: Sequence[int]) -> WindowChain:
    radii = sorted(set(int(r) for r in radii))
    return WindowChain(tuple(radial_quotient_window(p, r) for r in radii))
