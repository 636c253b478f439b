"""Line-based file formats for graph windows and radial profiles.

Graph files (magic ``# stograph graph v1``):

    vertices N
    mu <id> <decimal>            # only ids with mu != 1.0; default is 1.0
    edge <id> <id> <decimal>     # canonical id order, sorted
    root <id>                    # optional
    frontier <id> [<id> ...]     # optional

Profile files (magic ``# stograph profile v1``):

    horizon R
    sphere <r> <S> <gplus> <gminus>   # r = 0..R
    tail poly <p> | tail exp <q>      # optional
    join complete                     # optional

Writers are deterministic (sorted ids, shortest round-trip decimals, LF);
parse(write(x)) == x for every representable object.  ``#`` starts a
comment anywhere; tokens are whitespace-separated.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from .core import GraphWindow, RadialProfile, validate_graph
from .errors import GraphFormatError, ProfileConsistencyError, ProfileFormatError
from .growth import ExpTail, PolyTail

__all__ = [
    "GRAPH_MAGIC",
    "PROFILE_MAGIC",
    "write_graph_file",
    "parse_graph_file",
    "write_profile_file",
    "parse_profile_file",
    "windows_equal",
    "profiles_equal",
]

GRAPH_MAGIC = "# stograph graph v1"
PROFILE_MAGIC = "# stograph profile v1"


def _fmt(x: float) -> str:
    return repr(float(x))


def _tokenize(text: str) -> List[Tuple[int, List[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body.split()))
    return out


def _int_token(tok: str, lineno: int, what: str, err) -> int:
    try:
        return int(tok)
    except ValueError:
        raise err(f"expected integer {what}, got {tok!r}", lineno) from None


def _float_token(tok: str, lineno: int, what: str, err) -> float:
    try:
        return float(tok)
    except ValueError:
        raise err(f"expected decimal {what}, got {tok!r}", lineno) from None


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def write_graph_file(g: GraphWindow) -> str:
    lines = [GRAPH_MAGIC, f"vertices {g.n}"]
    for x in range(g.n):
        if g.mu[x] != 1.0:
            lines.append(f"mu {x} {_fmt(g.mu[x])}")
    adj = g.adjacency
    edges = []
    for x in range(g.n):
        nbrs, w = adj.neighbors(x)
        for y, ww in zip(nbrs, w):
            if x < y:
                edges.append((x, int(y), float(ww)))
    for u, v, w in sorted(edges):
        lines.append(f"edge {u} {v} {_fmt(w)}")
    if g.root is not None:
        lines.append(f"root {g.root}")
    if g.frontier:
        lines.append("frontier " + " ".join(str(x) for x in sorted(g.frontier)))
    return "\n".join(lines) + "\n"


def parse_graph_file(data: bytes | str) -> GraphWindow:
    """Parse and validate a graph window; errors carry line numbers."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    first = text.splitlines()[0].strip() if text.splitlines() else ""
    if first != GRAPH_MAGIC:
        raise GraphFormatError(f"missing magic header {GRAPH_MAGIC!r}", 1)
    n: Optional[int] = None
    mu = {}
    edges = {}
    root = None
    frontier: set = set()
    for lineno, toks in _tokenize(text):
        kind = toks[0]
        if kind == "vertices":
            if len(toks) != 2:
                raise GraphFormatError("vertices takes one count", lineno)
            n = _int_token(toks[1], lineno, "vertex count", GraphFormatError)
        elif kind == "mu":
            if len(toks) != 3:
                raise GraphFormatError("mu takes id and value", lineno)
            x = _int_token(toks[1], lineno, "vertex id", GraphFormatError)
            mu[x] = _float_token(toks[2], lineno, "measure", GraphFormatError)
        elif kind == "edge":
            if len(toks) != 4:
                raise GraphFormatError("edge takes two ids and a weight", lineno)
            u = _int_token(toks[1], lineno, "vertex id", GraphFormatError)
            v = _int_token(toks[2], lineno, "vertex id", GraphFormatError)
            w = _float_token(toks[3], lineno, "weight", GraphFormatError)
            key = (min(u, v), max(u, v))
            if key in edges and edges[key][0] != w:
                raise GraphFormatError(
                    f"edge {u} {v} conflicts with earlier weight {edges[key][0]!r}", lineno
                )
            if key not in edges:
                edges[key] = (w, lineno, u, v)
        elif kind == "root":
            if len(toks) != 2:
                raise GraphFormatError("root takes one id", lineno)
            root = _int_token(toks[1], lineno, "vertex id", GraphFormatError)
        elif kind == "frontier":
            if len(toks) < 2:
                raise GraphFormatError("frontier needs at least one id", lineno)
            for t in toks[1:]:
                frontier.add(_int_token(t, lineno, "vertex id", GraphFormatError))
        else:
            raise GraphFormatError(f"unknown directive {kind!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'vertices' line")
    for x in list(mu) + list(frontier) + ([root] if root is not None else []):
        if not (0 <= x < n):
            raise GraphFormatError(f"vertex id {x} outside 0..{n - 1}")
    eu, ev, ew = [], [], []
    for (u, v), (w, lineno, ou, ov) in sorted(edges.items()):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({ou},{ov}) references vertex outside 0..{n - 1}", lineno)
        eu.append(u)
        ev.append(v)
        ew.append(w)
    g = GraphWindow.from_edges(n, zip(eu, ev, ew), mu=mu, frontier=frontier, root=root)
    report = validate_graph(g)
    if not report.ok:
        raise GraphFormatError(f"graph fails validation: {report}")
    return g


def windows_equal(a: GraphWindow, b: GraphWindow) -> bool:
    if a.n != b.n or a.root != b.root or a.frontier != b.frontier:
        return False
    if not np.array_equal(a.mu, b.mu):
        return False

    def canon(g: GraphWindow):
        adj = g.adjacency
        out = []
        for x in range(g.n):
            nbrs, w = adj.neighbors(x)
            out.extend((x, int(y), float(ww)) for y, ww in zip(nbrs, w) if x < y)
        return sorted(out)

    return canon(a) == canon(b)


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


def write_profile_file(p: RadialProfile) -> str:
    lines = [PROFILE_MAGIC, f"horizon {p.horizon}"]
    for r in range(p.horizon + 1):
        lines.append(f"sphere {r} {p.sphere_sizes[r]} {p.gplus[r]} {p.gminus[r]}")
    if p.tail is not None:
        if isinstance(p.tail, PolyTail) and p.tail.scale == 1.0:
            lines.append(f"tail poly {_fmt(p.tail.exponent)}")
        elif isinstance(p.tail, ExpTail) and p.tail.scale == 1.0:
            lines.append(f"tail exp {_fmt(p.tail.base)}")
        else:
            raise ProfileFormatError(f"tail {p.tail!r} has no file-format projection")
    if p.gplus_tail is not None:
        raise ProfileFormatError("explicit g+ continuations have no file-format projection")
    if p.join_complete:
        lines.append("join complete")
    return "\n".join(lines) + "\n"


def parse_profile_file(data: bytes | str) -> RadialProfile:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    first = text.splitlines()[0].strip() if text.splitlines() else ""
    if first != PROFILE_MAGIC:
        raise ProfileFormatError(f"missing magic header {PROFILE_MAGIC!r}", 1)
    horizon = None
    spheres = {}
    tail = None
    join = False
    for lineno, toks in _tokenize(text):
        kind = toks[0]
        if kind == "horizon":
            if len(toks) != 2:
                raise ProfileFormatError("horizon takes one integer", lineno)
            horizon = _int_token(toks[1], lineno, "horizon", ProfileFormatError)
        elif kind == "sphere":
            if len(toks) != 5:
                raise ProfileFormatError("sphere takes r, S, gplus, gminus", lineno)
            r = _int_token(toks[1], lineno, "radius", ProfileFormatError)
            vals = tuple(_int_token(t, lineno, "count", ProfileFormatError) for t in toks[2:])
            if r in spheres:
                raise ProfileFormatError(f"duplicate sphere line for radius {r}", lineno)
            spheres[r] = (vals, lineno)
        elif kind == "tail":
            if len(toks) != 3 or toks[1] not in ("poly", "exp"):
                raise ProfileFormatError("tail takes 'poly <p>' or 'exp <q>'", lineno)
            val = _float_token(toks[2], lineno, "tail parameter", ProfileFormatError)
            if toks[1] == "poly":
                tail = PolyTail(val, 1.0)
            else:
                if val <= 1.0:
                    raise ProfileFormatError("exponential sphere tail needs base > 1", lineno)
                tail = ExpTail(val, 1.0)
        elif kind == "join":
            if len(toks) != 2 or toks[1] != "complete":
                raise ProfileFormatError("only 'join complete' is recognized", lineno)
            join = True
        else:
            raise ProfileFormatError(f"unknown directive {kind!r}", lineno)
    if horizon is None:
        raise ProfileFormatError("missing 'horizon' line")
    missing = [r for r in range(horizon + 1) if r not in spheres]
    if missing:
        raise ProfileFormatError(f"missing sphere lines for radii {missing[:8]}")
    extra = [r for r in spheres if r > horizon or r < 0]
    if extra:
        raise ProfileFormatError(f"sphere radii outside 0..{horizon}: {sorted(extra)[:8]}")
    S = [spheres[r][0][0] for r in range(horizon + 1)]
    gp = [spheres[r][0][1] for r in range(horizon + 1)]
    gm = [spheres[r][0][2] for r in range(horizon + 1)]
    try:
        return RadialProfile(tuple(S), tuple(gp), tuple(gm), tail=tail, join_complete=join)
    except ProfileConsistencyError as exc:
        line = spheres.get(exc.radius, ((), None))[1]
        raise ProfileFormatError(f"radius {exc.radius}: {exc}", line) from None


def profiles_equal(a: RadialProfile, b: RadialProfile) -> bool:
    return (
        a.sphere_sizes == b.sphere_sizes
        and a.gplus == b.gplus
        and a.gminus == b.gminus
        and a.tail == b.tail
        and a.gplus_tail == b.gplus_tail
        and a.join_complete == b.join_complete
    )
