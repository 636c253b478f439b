"""Subgraph restrictions, gluings, and verdict-transfer between them.

Incompleteness of a subgraph W transfers to the ambient graph when the
interface is weakly coupled: either every interface vertex of W has
W-degree below n, or every W-vertex sends outward weight below n.  In the
opposite direction, the high-degree subgraph {Deg > n} of an incomplete
graph is incomplete; contrapositively, if that subgraph is complete, so is
the whole graph.

All interface suprema are computed on the window; any surgery whose
correctness would depend on unknown outside structure is rejected rather
than approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .core import GraphWindow, weighted_degree_all
from .errors import FrontierError, UnknownVertexError
from .verdicts import Caveat, Certificate, Status, TheoremTag, Verdict, unknown

__all__ = [
    "SurgeryCertificate",
    "StabilityConditions",
    "restrict_subgraph",
    "stability_conditions_check",
    "high_degree_subgraph",
    "glue_at_edge",
    "propagate_verdict",
]


@dataclass(frozen=True)
class SurgeryCertificate:
    rule: str  # "interface-degree" | "outward-weight" | "high-degree-contrapositive"
    n: float
    interface_degree_sup: float
    outward_weight_sup: float
    window_descriptor: str


@dataclass(frozen=True)
class StabilityConditions:
    """Result of checking both weak-coupling conditions for (g, W, n)."""

    cond1: bool  # sup of Deg_W over interface vertices < n
    cond2: bool  # sup over W of outward weight / mu < n
    n: float
    interface_degree_sup: float
    outward_weight_sup: float
    interface_size: int
    fingerprint: Tuple[int, int, int]  # (g.n, |W|, sum of W ids) to match propagate calls

    def certificate(self, rule: str, descriptor: str) -> SurgeryCertificate:
        return SurgeryCertificate(rule, self.n, self.interface_degree_sup, self.outward_weight_sup, descriptor)


def _fingerprint(g: GraphWindow, W: frozenset) -> Tuple[int, int, int]:
    return (g.n, len(W), sum(W) % (1 << 62))


def restrict_subgraph(g: GraphWindow, W: Iterable[int]) -> GraphWindow:
    """Induced subgraph on W with ids reindexed densely.

    The new frontier is (old frontier in W) plus every W-vertex that lost a
    neighbor: its full neighborhood is no longer represented.  Original ids
    are recorded in ``labels`` (composed with existing labels when present).
    """
    Wset = sorted(set(int(x) for x in W))
    for x in Wset:
        if not (0 <= x < g.n):
            raise UnknownVertexError(f"vertex {x} not in window")
    old_labels = g.labels if g.labels is not None else tuple(range(g.n))
    old_to_new = -np.ones(g.n, dtype=np.int64)
    for i, x in enumerate(Wset):
        old_to_new[x] = i
    adj = g.adjacency
    new_frontier = set()
    us, vs, ws = [], [], []
    for x in Wset:
        i = int(old_to_new[x])
        if x in g.frontier:
            new_frontier.add(i)
        nbrs, w = adj.neighbors(x)
        for y, ww in zip(nbrs, w):
            j = old_to_new[y]
            if j < 0:
                new_frontier.add(i)  # dropped neighbor: membership boundary
            elif i < j:
                us.append(i)
                vs.append(int(j))
                ws.append(float(ww))
    root = None
    if g.root is not None and old_to_new[g.root] >= 0:
        root = int(old_to_new[g.root])
    return GraphWindow(
        g.mu[Wset],
        np.array(us, dtype=np.int64),
        np.array(vs, dtype=np.int64),
        np.array(ws, dtype=np.float64),
        frozenset(new_frontier),
        root=root,
        labels=tuple(old_labels[x] for x in Wset),
    )


def stability_conditions_check(g: GraphWindow, W: Iterable[int], n: float) -> StabilityConditions:
    """Evaluate both weak-coupling suprema for the subgraph W exactly.

    Interface vertices (W-vertices with an edge leaving W inside the window)
    must be interior in g: a frontier interface vertex would make both
    suprema mere lower bounds, so it is rejected.  Outward weight from
    W-vertices on g's frontier counts only window edges; the unknown outside
    continuation is, by the window-claim convention, part of W itself.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    Wset = frozenset(int(x) for x in W)
    for x in Wset:
        if not (0 <= x < g.n):
            raise UnknownVertexError(f"vertex {x} not in window")
    adj = g.adjacency
    interface_deg_sup = 0.0
    outward_sup = 0.0
    interface = 0
    for x in sorted(Wset):
        nbrs, w = adj.neighbors(x)
        inside = np.fromiter((int(y) in Wset for y in nbrs), dtype=bool, count=len(nbrs))
        outward = math.fsum(w[~inside].tolist()) / g.mu[x]
        outward_sup = max(outward_sup, outward)
        if outward > 0:
            interface += 1
            if x in g.frontier:
                raise FrontierError(
                    f"interface vertex {x} lies on the frontier; interface suprema would be lower bounds only"
                )
            deg_w = math.fsum(w[inside].tolist()) / g.mu[x]
            interface_deg_sup = max(interface_deg_sup, deg_w)
    return StabilityConditions(
        cond1=interface_deg_sup < n,
        cond2=outward_sup < n,
        n=float(n),
        interface_degree_sup=interface_deg_sup,
        outward_weight_sup=outward_sup,
        interface_size=interface,
        fingerprint=_fingerprint(g, Wset),
    )


def high_degree_subgraph(g: GraphWindow, n: float) -> GraphWindow:
    """Restriction to the certified part of {x : Deg(x) > n}.

    Frontier vertices and their neighbors are excluded from the degree test
    (window degrees there are lower bounds or have undecidable membership)
    and recorded implicitly through the restriction's frontier.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    degrees = weighted_degree_all(g)
    excluded = np.zeros(g.n, dtype=bool)
    if g.frontier:
        fr = np.array(sorted(g.frontier), dtype=np.int64)
        excluded[fr] = True
        adj = g.adjacency
        for x in fr:
            nbrs, _ = adj.neighbors(int(x))
            excluded[nbrs] = True
    keep = np.nonzero((degrees > n) & ~excluded)[0]
    return restrict_subgraph(g, keep.tolist())


def glue_at_edge(g1: GraphWindow, g2: GraphWindow, x1: int, x2: int, w: float) -> GraphWindow:
    """Disjoint union of two windows plus one symmetric edge x1 ~ x2.

    g2's ids are shifted by g1.n; the mapping is recorded in labels as
    ("a", old_label) / ("b", old_label).  The root of the glued window is
    g1's root.
    """
    if w <= 0:
        raise ValueError("glue weight must be positive")
    g1._check_vertex(x1)
    g2._check_vertex(x2)
    off = g1.n
    mu = np.concatenate([g1.mu, g2.mu])
    u = np.concatenate([g1.edge_u, g2.edge_u + off, [x1]])
    v = np.concatenate([g1.edge_v, g2.edge_v + off, [x2 + off]])
    ww = np.concatenate([g1.edge_w, g2.edge_w, [float(w)]])
    frontier = frozenset(g1.frontier) | frozenset(x + off for x in g2.frontier)
    l1 = g1.labels if g1.labels is not None else tuple(range(g1.n))
    l2 = g2.labels if g2.labels is not None else tuple(range(g2.n))
    labels = tuple(("a", l) for l in l1) + tuple(("b", l) for l in l2)
    return GraphWindow(mu, u, v, ww, frontier, root=g1.root, labels=labels)


def propagate_verdict(
    g: GraphWindow,
    W: Iterable[int],
    verdict_W: Verdict,
    conditions: StabilityConditions,
    n: float,
) -> Verdict:
    """Transfer a subgraph verdict to the ambient window.

    Incomplete W plus either weak-coupling condition makes g Incomplete.
    Complete W makes g Complete only when W is exactly the certified
    high-degree subgraph at level n (contrapositive direction).  The output
    certificate chains the subgraph certificate; Unknown inputs propagate to
    Unknown.  Verdicts for disconnected subgraph windows should be computed
    per component (Incomplete as soon as one component is).
    """
    Wset = frozenset(int(x) for x in W)
    if conditions.n != float(n) or conditions.fingerprint != _fingerprint(g, Wset):
        raise ValueError("stability conditions were computed for different (g, W, n)")
    if verdict_W.status is Status.UNKNOWN:
        return unknown("subgraph verdict is Unknown")
    caveats = tuple(verdict_W.caveats)
    if verdict_W.status is Status.INCOMPLETE:
        if not (conditions.cond1 or conditions.cond2):
            return unknown("neither weak-coupling condition holds; incompleteness does not transfer")
        rule = "interface-degree" if conditions.cond1 else "outward-weight"
        cert = Certificate(
            tag=TheoremTag.STABILITY,
            parameters={
                "rule": rule,
                "n": n,
                "interface_degree_sup": conditions.interface_degree_sup,
                "outward_weight_sup": conditions.outward_weight_sup,
                "subgraph_size": len(Wset),
            },
            verified_region=f"window interface of {len(Wset)}-vertex subgraph",
            chained=verdict_W.certificate,
        )
        return Verdict(Status.INCOMPLETE, cert, caveats)
    # completeness direction: W must be the high-degree subgraph at level n
    hd = high_degree_subgraph(g, n)
    hd_labels = set(hd.labels if hd.labels is not None else range(hd.n))
    base_labels = g.labels if g.labels is not None else tuple(range(g.n))
    w_labels = set(base_labels[x] for x in Wset)
    if hd_labels != w_labels:
        return unknown("W is not the certified high-degree subgraph at this level; completeness does not transfer")
    cert = Certificate(
        tag=TheoremTag.STABILITY,
        parameters={"rule": "high-degree-contrapositive", "n": n, "subgraph_size": len(Wset)},
        verified_region=f"high-degree subgraph at level {n}",
        chained=verdict_W.certificate,
    )
    return Verdict(Status.COMPLETE, cert, caveats)
