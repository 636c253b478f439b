"""Weighted-graph windows, radial profiles, and the formal Laplacian.

A GraphWindow is a finite fragment of a (conceptually infinite) weighted
graph: vertex measure mu > 0, symmetric edge weights b > 0 with zero
diagonal, and a designated frontier of vertices whose neighborhoods outside
the window are unknown.  All analytic quantities (weighted degree, formal
Laplacian, radial statistics) are exact at interior vertices and only lower
bounds at the frontier.

A RadialProfile describes a weakly symmetric infinite graph by per-radius
data S(r), g+(r), g-(r) up to a horizon, plus an optional exact tail rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DisconnectedWindowError,
    FrontierError,
    ProfileConsistencyError,
    StographError,
    UnknownVertexError,
)
from .growth import GrowthClass, RadialSequence, Tail

__all__ = [
    "GraphWindow",
    "RadialProfile",
    "RadialStats",
    "ValidationReport",
    "Violation",
    "validate_graph",
    "weighted_degree",
    "weighted_degree_all",
    "apply_laplacian",
    "radial_statistics",
]


class _Adjacency:
    """Symmetrized CSR view of the stored edges (both directions present)."""

    __slots__ = ("indptr", "indices", "weights")

    def __init__(self, n: int, edge_u: np.ndarray, edge_v: np.ndarray, edge_w: np.ndarray):
        if len(edge_u) == 0:
            self.indptr = np.zeros(n + 1, dtype=np.int64)
            self.indices = np.zeros(0, dtype=np.int64)
            self.weights = np.zeros(0, dtype=np.float64)
            return
        # canonicalize to u < v, deduplicate exact duplicates (conflicting
        # duplicates are a validation error and resolved arbitrarily here)
        lo = np.minimum(edge_u, edge_v)
        hi = np.maximum(edge_u, edge_v)
        keep = lo != hi  # drop loops from the math view; validate reports them
        lo, hi, w = lo[keep], hi[keep], edge_w[keep]
        code = lo.astype(np.int64) * np.int64(n) + hi.astype(np.int64)
        code, first = np.unique(code, return_index=True)
        lo, hi, w = lo[first], hi[first], w[first]
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        ww = np.concatenate([w, w])
        order = np.argsort(src, kind="stable")
        src, dst, ww = src[order], dst[order], ww[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.indptr, src + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self.indices = dst.astype(np.int64)
        self.weights = ww.astype(np.float64)

    def neighbors(self, x: int) -> Tuple[np.ndarray, np.ndarray]:
        a, b = self.indptr[x], self.indptr[x + 1]
        return self.indices[a:b], self.weights[a:b]


@dataclass(frozen=True, eq=False)
class GraphWindow:
    """Finite weighted-graph fragment with an explicit frontier.

    Vertices are dense ids 0..n-1.  Edges are stored as parallel arrays in
    the orientation(s) given at construction; the symmetrized adjacency used
    by all operations is built lazily.  ``labels`` optionally records the
    provenance of each id (subgraph restriction, gluing, window chains).
    """

    mu: np.ndarray
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_w: np.ndarray
    frontier: frozenset
    root: Optional[int] = None
    labels: Optional[tuple] = None
    _adj: Optional[_Adjacency] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=np.float64))
        object.__setattr__(self, "edge_u", np.asarray(self.edge_u, dtype=np.int64))
        object.__setattr__(self, "edge_v", np.asarray(self.edge_v, dtype=np.int64))
        object.__setattr__(self, "edge_w", np.asarray(self.edge_w, dtype=np.float64))
        object.__setattr__(self, "frontier", frozenset(int(x) for x in self.frontier))
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have one entry per vertex")
        if self.root is not None and not (0 <= self.root < self.n):
            raise UnknownVertexError(f"root {self.root} outside window")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int, float]],
        mu: Union[None, float, Mapping[int, float], Sequence[float]] = None,
        frontier: Iterable[int] = (),
        root: Optional[int] = None,
        labels: Optional[tuple] = None,
    ) -> "GraphWindow":
        """Build a window from an edge list; mu defaults to 1 everywhere."""
        es = list(edges)
        u = np.array([e[0] for e in es], dtype=np.int64)
        v = np.array([e[1] for e in es], dtype=np.int64)
        w = np.array([e[2] for e in es], dtype=np.float64)
        if mu is None:
            mu_arr = np.ones(n)
        elif isinstance(mu, (int, float)):
            mu_arr = np.full(n, float(mu))
        elif isinstance(mu, Mapping):
            mu_arr = np.ones(n)
            for k, val in mu.items():
                mu_arr[int(k)] = float(val)
        else:
            mu_arr = np.asarray(mu, dtype=np.float64)
        return cls(mu_arr, u, v, w, frozenset(frontier), root, labels)

    @property
    def n(self) -> int:
        return len(self.mu)

    @property
    def n_edges(self) -> int:
        return len(self.adjacency.weights) // 2

    @property
    def adjacency(self) -> _Adjacency:
        if self._adj is None:
            object.__setattr__(self, "_adj", _Adjacency(self.n, self.edge_u, self.edge_v, self.edge_w))
        return self._adj

    def neighbors(self, x: int) -> Tuple[np.ndarray, np.ndarray]:
        self._check_vertex(x)
        return self.adjacency.neighbors(x)

    def is_frontier(self, x: int) -> bool:
        self._check_vertex(x)
        return x in self.frontier

    def interior_mask(self) -> np.ndarray:
        m = np.ones(self.n, dtype=bool)
        if self.frontier:
            m[list(self.frontier)] = False
        return m

    def frontier_mask(self) -> np.ndarray:
        return ~self.interior_mask()

    def _check_vertex(self, x: int) -> None:
        if not (0 <= x < self.n):
            raise UnknownVertexError(f"vertex {x} not in window of size {self.n}")

    def with_root(self, root: int) -> "GraphWindow":
        return GraphWindow(self.mu, self.edge_u, self.edge_v, self.edge_w, self.frontier, root, self.labels)

    def distance_to_frontier(self) -> np.ndarray:
        """BFS hop distance from each vertex to the nearest frontier vertex.

        Vertices unreachable from the frontier (or all of them, when the
        frontier is empty) get a large sentinel: they are safe at every depth.
        """
        INF = np.iinfo(np.int64).max // 2
        dist = np.full(self.n, INF, dtype=np.int64)
        if not self.frontier:
            return dist
        queue = list(self.frontier)
        for x in queue:
            dist[x] = 0
        adj = self.adjacency
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            nbrs, _ = adj.neighbors(x)
            d = dist[x] + 1
            for y in nbrs:
                if dist[y] > d:
                    dist[y] = d
                    queue.append(int(y))
        return dist


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "Valid"
        return "; ".join(f"{v.kind}: {v.message}" for v in self.violations)


def validate_graph(g: GraphWindow, max_report: int = 64) -> ValidationReport:
    """Check the window invariants, reporting (never raising) all problems.

    Reported kinds: loop, asymmetry (both orientations stored with different
    weights, or conflicting duplicates), nonpositive-mu, nonpositive-weight,
    dangling-edge (edge endpoint outside the window whose inside endpoint is
    not on the frontier).  An empty window is Valid.
    """
    out = []

    def add(kind: str, message: str) -> None:
        if len(out) < max_report:
            out.append(Violation(kind, message))

    n = g.n
    u, v, w = g.edge_u, g.edge_v, g.edge_w

    for x in np.nonzero(g.mu <= 0)[0][:max_report]:
        add("nonpositive-mu", f"mu({x}) = {g.mu[x]}")

    for i in np.nonzero(u == v)[0][:max_report]:
        add("loop", f"b({u[i]},{u[i]}) = {w[i]}")

    for i in np.nonzero((w <= 0) & (u != v))[0][:max_report]:
        add("nonpositive-weight", f"b({u[i]},{v[i]}) = {w[i]}")

    u_out = (u < 0) | (u >= n)
    v_out = (v < 0) | (v >= n)
    for i in np.nonzero(u_out | v_out)[0][:max_report]:
        inside = int(v[i]) if u_out[i] else int(u[i]) if not (u_out[i] and v_out[i]) else -1
        if inside == -1 or not (0 <= inside < n):
            add("dangling-edge", f"edge ({u[i]},{v[i]}) references no window vertex")
        elif inside not in g.frontier:
            add("dangling-edge", f"edge ({u[i]},{v[i]}) leaves the window at non-frontier vertex {inside}")

    ok = ~(u_out | v_out) & (u != v)
    if np.any(ok):
        lo = np.minimum(u[ok], v[ok]).astype(np.int64)
        hi = np.maximum(u[ok], v[ok]).astype(np.int64)
        ww = w[ok]
        code = lo * np.int64(max(n, 1)) + hi
        order = np.argsort(code, kind="stable")
        code, ww, lo, hi = code[order], ww[order], lo[order], hi[order]
        same_key = code[1:] == code[:-1]
        conflict = same_key & (ww[1:] != ww[:-1])
        for i in np.nonzero(conflict)[0][:max_report]:
            add("asymmetry", f"b({lo[i + 1]},{hi[i + 1]}) stored with both {ww[i]} and {ww[i + 1]}")

    return ValidationReport(tuple(out))


def weighted_degree(g: GraphWindow, x: int) -> float:
    """Deg(x) = (1/mu(x)) * sum_y b(x,y) over stored neighbors.

    Exact for interior vertices; for x on the frontier the unknown outside
    neighborhood makes this a lower bound only (callers consult
    ``g.is_frontier(x)``).
    """
    g._check_vertex(x)
    _, w = g.neighbors(x)
    return float(math.fsum(w.tolist()) / g.mu[x])


def segment_sums(values: np.ndarray, indptr: np.ndarray) -> np.ndarray:
    """Row sums of a CSR-like layout; empty rows sum to zero.

    Masked variants (values zeroed at excluded positions) keep the same
    summation tree as the unmasked sum, so masked <= unmasked holds exactly
    in floating point; the global-degree monotonicity invariants rely on it.
    """
    n = len(indptr) - 1
    if len(values) == 0:
        return np.zeros(n)
    starts = np.minimum(indptr[:-1], len(values) - 1)
    sums = np.add.reduceat(values, starts)
    sums[indptr[:-1] == indptr[1:]] = 0.0
    return sums


def weighted_degree_all(g: GraphWindow) -> np.ndarray:
    """Vector of weighted degrees; frontier entries are lower bounds."""
    adj = g.adjacency
    return segment_sums(adj.weights, adj.indptr) / g.mu


def apply_laplacian(g: GraphWindow, f: Union[Mapping[int, float], np.ndarray], x: int) -> float:
    """Formal Laplacian (1/mu(x)) * sum_y b(x,y) (f(x) - f(y)) at interior x.

    Requires f defined on x and its whole neighborhood (the finite-window
    surrogate of the summability domain).
    """
    g._check_vertex(x)
    if x in g.frontier:
        raise FrontierError(f"vertex {x} is on the frontier; its neighborhood is not fully known")
    nbrs, w = g.neighbors(x)

    def value(y: int) -> float:
        if isinstance(f, Mapping):
            if y not in f:
                raise UnknownVertexError(f"f undefined at required vertex {y}")
            return float(f[y])
        if y >= len(f):
            raise UnknownVertexError(f"f undefined at required vertex {y}")
        return float(f[y])

    fx = value(x)
    terms = [float(wi) * (fx - value(int(y))) for y, wi in zip(nbrs, w)]
    return math.fsum(terms) / float(g.mu[x])


@dataclass(frozen=True, eq=False)
class RadialStats:
    """Rooted radial statistics of a window.

    m+/m- count neighbors one radius out/in (integers; exact at interior
    vertices).  Counts are raw vertex counts; volumes are mu-weighted, so on
    a radial quotient window they equal the vertex counts of the underlying
    symmetric graph.
    """

    radius: np.ndarray
    mplus: np.ndarray
    mminus: np.ndarray
    kplus_max: np.ndarray
    kplus_min: np.ndarray
    kminus_max: np.ndarray
    kminus_min: np.ndarray
    sphere_counts: np.ndarray
    ball_counts: np.ndarray
    boundary_counts: np.ndarray
    sphere_volumes: np.ndarray
    ball_volumes: np.ndarray
    boundary_volumes: np.ndarray

    @property
    def max_radius(self) -> int:
        return len(self.sphere_counts) - 1

    def laplacian_of_radius(self, x: int) -> int:
        """Delta r(x) = m-(x) - m+(x) for the physical normalization."""
        return int(self.mminus[x] - self.mplus[x])


def radial_statistics(g: GraphWindow) -> RadialStats:
    """Breadth-first radii from the root plus all per-radius extrema.

    Raises when the root is unset or some vertex is unreachable.  An empty
    window yields empty statistics.
    """
    if g.n == 0:
        z = np.zeros(0, dtype=np.int64)
        zf = np.zeros(0, dtype=np.float64)
        return RadialStats(z, z, z, z, z, z, z, z, z, z, zf, zf, zf)
    if g.root is None:
        raise DisconnectedWindowError("radial statistics require a root")
    adj = g.adjacency
    INF = -1
    radius = np.full(g.n, INF, dtype=np.int64)
    radius[g.root] = 0
    queue = [g.root]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        nbrs, _ = adj.neighbors(x)
        d = radius[x] + 1
        for y in nbrs:
            if radius[y] == INF:
                radius[y] = d
                queue.append(int(y))
    if np.any(radius == INF):
        missing = int(np.count_nonzero(radius == INF))
        raise DisconnectedWindowError(f"{missing} vertices unreachable from root {g.root}")

    rmax = int(radius.max())
    mplus = np.zeros(g.n, dtype=np.int64)
    mminus = np.zeros(g.n, dtype=np.int64)
    for x in range(g.n):
        nbrs, _ = adj.neighbors(x)
        if len(nbrs) == 0:
            continue
        dr = radius[nbrs] - radius[x]
        mplus[x] = int(np.count_nonzero(dr == 1))
        mminus[x] = int(np.count_nonzero(dr == -1))

    sphere_counts = np.bincount(radius, minlength=rmax + 1).astype(np.int64)
    sphere_volumes = np.bincount(radius, weights=g.mu, minlength=rmax + 1)
    ball_counts = np.cumsum(sphere_counts)
    ball_volumes = np.cumsum(sphere_volumes)
    # outer boundary of B_R: vertices at radius R+1 (graph metric steps by 1)
    boundary_counts = np.zeros(rmax + 1, dtype=np.int64)
    boundary_volumes = np.zeros(rmax + 1, dtype=np.float64)
    boundary_counts[: rmax] = sphere_counts[1 : rmax + 1]
    boundary_volumes[: rmax] = sphere_volumes[1 : rmax + 1]

    kp_max = np.zeros(rmax + 1, dtype=np.int64)
    kp_min = np.zeros(rmax + 1, dtype=np.int64)
    km_max = np.zeros(rmax + 1, dtype=np.int64)
    km_min = np.zeros(rmax + 1, dtype=np.int64)
    for r in range(rmax + 1):
        on = radius == r
        kp_max[r] = int(mplus[on].max())
        kp_min[r] = int(mplus[on].min())
        km_max[r] = int(mminus[on].max())
        km_min[r] = int(mminus[on].min())

    return RadialStats(
        radius,
        mplus,
        mminus,
        kp_max,
        kp_min,
        km_max,
        km_min,
        sphere_counts,
        ball_counts,
        boundary_counts,
        sphere_volumes,
        ball_volumes,
        boundary_volumes,
    )


@dataclass(frozen=True)
class RadialProfile:
    """Weakly symmetric graph described by per-radius data up to a horizon.

    sphere_sizes[r] = S(r) with S(0) = 1; gplus[r] / gminus[r] are the
    forward/backward neighbor counts of every vertex on sphere r.  The
    double-counting identity g-(r) S(r) = g+(r-1) S(r-1) is checked exactly
    on construction.

    ``tail`` continues S(r) exactly for r > horizon.  ``gplus_tail``
    continues g+(r); when absent and ``join_complete`` is set, g+(r) is
    S(r+1) (spherically symmetric join).  g-(r) beyond the horizon always
    follows from the double-counting identity.
    """

    sphere_sizes: tuple
    gplus: tuple
    gminus: tuple
    tail: Optional[Tail] = None
    gplus_tail: Optional[Tail] = None
    join_complete: bool = False
    ceil_rule: bool = False

    def __post_init__(self) -> None:
        S = tuple(int(s) for s in self.sphere_sizes)
        gp = tuple(int(v) for v in self.gplus)
        gm = tuple(int(v) for v in self.gminus)
        object.__setattr__(self, "sphere_sizes", S)
        object.__setattr__(self, "gplus", gp)
        object.__setattr__(self, "gminus", gm)
        if not S:
            raise ProfileConsistencyError(0, "profile needs at least sphere 0")
        if not (len(S) == len(gp) == len(gm)):
            raise ProfileConsistencyError(0, "sphere_sizes, gplus, gminus must have equal length")
        if S[0] != 1:
            raise ProfileConsistencyError(0, f"S(0) must be 1, got {S[0]}")
        if any(s <= 0 for s in S):
            r = next(r for r, s in enumerate(S) if s <= 0)
            raise ProfileConsistencyError(r, f"S({r}) = {S[r]} must be positive")
        if gm[0] != 0:
            raise ProfileConsistencyError(0, f"g-(0) must be 0, got {gm[0]}")
        if any(v < 0 for v in gp) or any(v < 0 for v in gm):
            raise ProfileConsistencyError(0, "g+ and g- must be nonnegative")
        for r in range(1, len(S)):
            if gm[r] * S[r] != gp[r - 1] * S[r - 1]:
                raise ProfileConsistencyError(
                    r,
                    f"g-({r})*S({r}) = {gm[r] * S[r]} != g+({r - 1})*S({r - 1}) = {gp[r - 1] * S[r - 1]}",
                )

    @property
    def horizon(self) -> int:
        return len(self.sphere_sizes) - 1

    # -- exact evaluation, extrapolating beyond the horizon when possible --

    def S(self, r: int) -> float:
        if r < 0:
            raise IndexError("negative radius")
        if r <= self.horizon:
            return float(self.sphere_sizes[r])
        if self.tail is None:
            raise IndexError(f"S({r}) beyond horizon {self.horizon} and no tail")
        return float(self.tail.value(r))

    def gp(self, r: int) -> float:
        if r < 0:
            raise IndexError("negative radius")
        if r <= self.horizon:
            return float(self.gplus[r])
        if self.gplus_tail is not None:
            return float(self.gplus_tail.value(r))
        if self.join_complete:
            return self.S(r + 1)
        raise IndexError(f"g+({r}) beyond horizon {self.horizon} and no continuation")

    def gm(self, r: int) -> float:
        if r < 0:
            raise IndexError("negative radius")
        if r <= self.horizon:
            return float(self.gminus[r])
        # double-counting identity: g-(r) = g+(r-1) S(r-1) / S(r)
        return self.gp(r - 1) * self.S(r - 1) / self.S(r)

    def degree(self, r: int) -> float:
        """Weighted degree of a sphere-r vertex in the physical normalization."""
        return self.gp(r) + self.gm(r)

    def ball_volume(self, r: int) -> float:
        """V(r) = #B_r, exact for r <= horizon or finitely beyond via the tail."""
        if r <= self.horizon:
            return float(sum(self.sphere_sizes[: r + 1]))
        base = float(sum(self.sphere_sizes))
        return base + math.fsum(self.S(l) for l in range(self.horizon + 1, r + 1))

    # -- growth classes --

    @property
    def S_class(self) -> Optional[GrowthClass]:
        return self.tail.growth if self.tail is not None else None

    @property
    def gp_class(self) -> Optional[GrowthClass]:
        if self.gplus_tail is not None:
            return self.gplus_tail.growth
        if self.join_complete and self.tail is not None:
            return self.tail.growth.shift(1)
        return None

    @property
    def gm_class(self) -> Optional[GrowthClass]:
        gpc, sc = self.gp_class, self.S_class
        if gpc is None or sc is None:
            return None
        return gpc.shift(-1).mul(sc.shift(-1)).div(sc)

    @property
    def degree_class(self) -> Optional[GrowthClass]:
        gpc, gmc = self.gp_class, self.gm_class
        if gpc is None or gmc is None:
            return None
        s = gpc.add(gmc)
        return s

    @property
    def volume_class(self) -> Optional[GrowthClass]:
        sc = self.S_class
        return sc.partial_sum() if sc is not None else None

    def has_tail(self) -> bool:
        return self.tail is not None and (self.gplus_tail is not None or self.join_complete)

    def sphere_sequence(self) -> RadialSequence:
        return RadialSequence(tuple(float(s) for s in self.sphere_sizes), self.tail)
