"""Clar and Fries numbers of plane bipartite graphs.

The input is a 2-connected loopless plane bipartite graph with color
classes S and T, given with its faces: each face lists its boundary as a
closed walk of directed edge-sides with the face's interior on the left.
Orienting a perfect matching M toward S and all other edges toward T makes
every S-node's in-degree and every T-node's out-degree exactly 1, and a
face is M-alternating exactly when its boundary is a one-way circuit of
that orientation.  Faces whose boundary arcs all oppose the stored sides
(the face lies on the arcs' right) are called clockwise here, the others
anticlockwise.

Taking the planar dual with each dual arc crossing from the left face to
the right face of a primal arc turns the question "which faces can be made
alternating by switching to a better matching" into a maximum-weight
source-sink pair problem on the dual: clockwise faces are dual sinks,
anticlockwise faces dual sources, and reorienting the dual by the witness
potential corresponds to rerouting the matching.  Same-sense alternating
faces are automatically node-disjoint, which is what makes the clockwise
class a Clar-set and the union of both classes a Fries-set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .digraph import Digraph, potential_drops
from .errors import InputError, InvariantError
from .sourcesink import SourceSinkCertificate, WeightPair, max_source_sink

Weight = int | Fraction


class NonBipartiteError(InputError):
    pass


class FaceBoundaryError(InputError):
    pass


class EdgeSideMismatchError(InputError):
    pass


class EulerError(InputError):
    pass


class NotTwoConnectedError(InputError):
    pass


class NoPerfectMatchingError(InputError):
    pass


@dataclass(frozen=True)
class Face:
    name: str
    boundary: tuple[tuple[int, bool], ...]  # (edge index, True when walked S -> T)


class PlaneBipartiteGraph:
    """Validated plane bipartite graph with faces and per-face weights.

    Nodes are indexed S first, then T.  ``edges[i]`` is an (S-node, T-node)
    pair.  ``cw_weights[f]`` is collected when face ``f`` ends up
    clockwise-alternating, ``acw_weights[f]`` when anticlockwise.
    """

    __slots__ = (
        "s_names",
        "t_names",
        "edges",
        "faces",
        "outer",
        "cw_weights",
        "acw_weights",
        "_side_face",
    )

    def __init__(
        self,
        s_names: Sequence[str],
        t_names: Sequence[str],
        edges: Sequence[tuple[int, int]],
        faces: Sequence[Face],
        outer: int,
        cw_weights: Sequence[Weight],
        acw_weights: Sequence[Weight],
    ):
        self.s_names = tuple(s_names)
        self.t_names = tuple(t_names)
        self.edges = tuple(edges)
        self.faces = tuple(faces)
        self.outer = outer
        self.cw_weights = tuple(cw_weights)
        self.acw_weights = tuple(acw_weights)
        self._side_face = None
        self._validate()

    @property
    def node_count(self) -> int:
        return len(self.s_names) + len(self.t_names)

    @property
    def s_count(self) -> int:
        return len(self.s_names)

    def node_name(self, v: int) -> str:
        if v < len(self.s_names):
            return self.s_names[v]
        return self.t_names[v - len(self.s_names)]

    def face_of_side(self, edge: int, toward_t: bool) -> int:
        return self._side_face[(edge, toward_t)]

    def inner_faces(self) -> frozenset[int]:
        return frozenset(f for f in range(len(self.faces)) if f != self.outer)

    # -- validation ----------------------------------------------------

    def _side_endpoints(self, edge: int, toward_t: bool) -> tuple[int, int]:
        s, t = self.edges[edge]
        return (s, t) if toward_t else (t, s)

    def _validate(self) -> None:
        ns, nt = len(self.s_names), len(self.t_names)
        if ns == 0 or nt == 0 or not self.edges:
            raise InputError("graph needs nonempty S, T, and edge list")
        for name in self.s_names + self.t_names:
            if not isinstance(name, str) or not name:
                raise InputError(f"bad node name {name!r}")
        seen = set()
        for name in self.s_names + self.t_names:
            if name in seen:
                raise InputError(f"duplicate node name {name!r}")
            seen.add(name)
        for i, (s, t) in enumerate(self.edges):
            if not (0 <= s < ns):
                raise NonBipartiteError(f"edge {i}: first endpoint must be an S-node")
            if not (ns <= t < ns + nt):
                raise NonBipartiteError(f"edge {i}: second endpoint must be a T-node")

        if len(self.cw_weights) != len(self.faces) or len(self.acw_weights) != len(self.faces):
            raise InputError("face weight vectors must have one entry per face")
        for w in self.cw_weights + self.acw_weights:
            if w < 0:
                raise InputError("face weights must be nonnegative")

        face_names = set()
        for face in self.faces:
            if face.name in face_names:
                raise InputError(f"duplicate face id {face.name!r}")
            face_names.add(face.name)
        if not (0 <= self.outer < len(self.faces)):
            raise InputError("outer face missing from face list")

        side_face: dict[tuple[int, bool], int] = {}
        for fi, face in enumerate(self.faces):
            if not face.boundary:
                raise FaceBoundaryError(f"face {face.name!r} has an empty boundary")
            nodes_seen = set()
            for k, (e, toward_t) in enumerate(face.boundary):
                if not (0 <= e < len(self.edges)):
                    raise FaceBoundaryError(
                        f"face {face.name!r} references unknown edge {e}"
                    )
                side = (e, toward_t)
                if side in side_face:
                    raise EdgeSideMismatchError(
                        f"edge {e} walked twice in the same direction"
                    )
                side_face[side] = fi
                tail, head = self._side_endpoints(e, toward_t)
                nxt = face.boundary[(k + 1) % len(face.boundary)]
                nxt_tail, _ = self._side_endpoints(*nxt)
                if head != nxt_tail:
                    raise FaceBoundaryError(
                        f"face {face.name!r} boundary is not a closed walk at step {k}"
                    )
                if tail in nodes_seen:
                    raise FaceBoundaryError(
                        f"face {face.name!r} boundary revisits node {self.node_name(tail)}"
                    )
                nodes_seen.add(tail)
        for e in range(len(self.edges)):
            for toward_t in (True, False):
                if (e, toward_t) not in side_face:
                    raise EdgeSideMismatchError(
                        f"edge {e} never walked {'S->T' if toward_t else 'T->S'}"
                    )
            if side_face[(e, True)] == side_face[(e, False)]:
                raise NotTwoConnectedError(f"edge {e} is a bridge")
        self._side_face = side_face

        if self.node_count - len(self.edges) + len(self.faces) != 2:
            raise EulerError(
                f"Euler check failed: {self.node_count} - {len(self.edges)} "
                f"+ {len(self.faces)} != 2"
            )

        self._check_two_connected()
        # perfect matchability is part of the input contract
        perfect_matching(self)

    def _check_two_connected(self) -> None:
        n = self.node_count
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (s, t) in enumerate(self.edges):
            adj[s].append((t, i))
            adj[t].append((s, i))
        # iterative DFS computing lowpoints; parallel edges are distinct
        visited = [False] * n
        disc = [0] * n
        low = [0] * n
        timer = 0
        stack: list[tuple[int, int, int]] = [(0, -1, 0)]  # node, entry edge, adj pos
        order: list[tuple[int, int]] = []
        root_children = 0
        articulation = False
        while stack:
            v, pedge, i = stack.pop()
            if i == 0:
                visited[v] = True
                disc[v] = low[v] = timer
                timer += 1
            if i < len(adj[v]):
                stack.append((v, pedge, i + 1))
                w, e = adj[v][i]
                if e == pedge:
                    continue
                if visited[w]:
                    low[v] = min(low[v], disc[w])
                else:
                    order.append((v, w))
                    if v == 0:
                        root_children += 1
                    stack.append((w, e, 0))
        # fold lowpoints back up in reverse DFS-tree order
        for v, w in reversed(order):
            low[v] = min(low[v], low[w])
            if v != 0 and low[w] >= disc[v]:
                articulation = True
        if not all(visited):
            raise NotTwoConnectedError("graph is disconnected")
        if root_children > 1:
            articulation = True
        if articulation and n > 2:
            raise NotTwoConnectedError("graph has a cut node")


def parse_validate(data) -> PlaneBipartiteGraph:
    """Build a validated plane graph from its JSON form (dict or string)."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise InputError("plane graph input must be a JSON object")
    for key in ("S", "T", "edges", "faces", "outer"):
        if key not in data:
            raise InputError(f"missing key {key!r}")
    s_names = list(data["S"])
    t_names = list(data["T"])
    index = {name: i for i, name in enumerate(s_names)}
    index.update({name: len(s_names) + i for i, name in enumerate(t_names)})
    if len(index) != len(s_names) + len(t_names):
        raise InputError("duplicate node names across S and T")

    edges = []
    s_set = set(s_names)
    t_set = set(t_names)
    for i, pair in enumerate(data["edges"]):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError(f"edge {i} must be a [from, to] pair")
        u, v = pair
        if u not in index or v not in index:
            raise InputError(f"edge {i} references unknown node")
        if u in t_set and v in s_set:
            raise InputError(f"edge {i} endpoints must be listed S first")
        if not (u in s_set and v in t_set):
            raise NonBipartiteError(f"edge {i} does not join S to T")
        edges.append((index[u], index[v]))

    faces = []
    for fobj in data["faces"]:
        if not isinstance(fobj, Mapping) or "id" not in fobj or "boundary" not in fobj:
            raise InputError("each face needs an 'id' and a 'boundary'")
        boundary = []
        for side in fobj["boundary"]:
            if not isinstance(side, (list, tuple)) or len(side) != 2:
                raise InputError(f"face {fobj['id']!r}: bad boundary side {side!r}")
            e, sign = side
            if sign not in ("+", "-"):
                raise InputError(f"face {fobj['id']!r}: bad side sign {sign!r}")
            boundary.append((int(e), sign == "+"))
        faces.append(Face(str(fobj["id"]), tuple(boundary)))

    face_index = {f.name: i for i, f in enumerate(faces)}
    outer_name = str(data["outer"])
    if outer_name not in face_index:
        raise InputError(f"outer face {outer_name!r} not among faces")

    def weight_vector(key: str) -> list[Weight]:
        raw = data.get(key, {})
        if not isinstance(raw, Mapping):
            raise InputError(f"{key!r} must be a map from face id to weight")
        vec: list[Weight] = [0] * len(faces)
        for name, value in raw.items():
            if name not in face_index:
                raise InputError(f"{key!r} references unknown face {name!r}")
            vec[face_index[name]] = _parse_weight(value, f"{key}[{name}]")
        return vec

    return PlaneBipartiteGraph(
        s_names,
        t_names,
        edges,
        faces,
        face_index[outer_name],
        weight_vector("w1"),
        weight_vector("w2"),
    )


def _parse_weight(value, what: str) -> Weight:
    if isinstance(value, bool):
        raise InputError(f"{what}: booleans are not weights")
    if isinstance(value, int):
        w: Weight = value
    elif isinstance(value, float):
        w = Fraction(str(value))
    elif isinstance(value, str):
        w = Fraction(value)
    else:
        raise InputError(f"{what}: cannot read weight {value!r}")
    if w < 0:
        raise InputError(f"{what}: weight must be nonnegative")
    return int(w) if isinstance(w, Fraction) and w.denominator == 1 else w


def perfect_matching(g: PlaneBipartiteGraph) -> frozenset[int]:
    """A perfect matching as a set of edge indices (augmenting-path search).

    Deterministic: S-nodes are processed in index order and adjacency in
    edge order.  Raises :class:`NoPerfectMatchingError` if none exists.
    """
    ns = g.s_count
    nt = g.node_count - ns
    if ns != nt:
        raise NoPerfectMatchingError(f"|S| = {ns} != |T| = {nt}")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(ns)]
    for i, (s, t) in enumerate(g.edges):
        adj[s].append((t - ns, i))
    match_t = [-1] * nt  # T-node -> edge index
    match_s = [-1] * ns

    def augment(s: int, seen: list[bool]) -> bool:
        for t, e in adj[s]:
            if seen[t]:
                continue
            seen[t] = True
            if match_t[t] == -1 or augment(g.edges[match_t[t]][0], seen):
                match_t[t] = e
                match_s[s] = e
                return True
        return False

    for s in range(ns):
        if not augment(s, [False] * nt):
            raise NoPerfectMatchingError("graph has no perfect matching")
    return frozenset(match_s)


@dataclass(frozen=True)
class MatchingOrientation:
    """Orientation with matching edges directed toward S, the rest toward T.

    Arc ``i`` of ``digraph`` corresponds to edge ``i``; every S-node has
    in-degree exactly 1 and every T-node out-degree exactly 1.
    """

    matching: frozenset[int]
    digraph: Digraph


def _check_perfect(g: PlaneBipartiteGraph, matching: frozenset[int]) -> None:
    hit = [0] * g.node_count
    for e in matching:
        if not (0 <= e < len(g.edges)):
            raise InputError(f"matching references unknown edge {e}")
        s, t = g.edges[e]
        hit[s] += 1
        hit[t] += 1
    if any(h != 1 for h in hit):
        raise InputError("edge set is not a perfect matching")


def orient_by_matching(g: PlaneBipartiteGraph, matching: Iterable[int]) -> MatchingOrientation:
    matching = frozenset(matching)
    _check_perfect(g, matching)
    arcs = []
    for i, (s, t) in enumerate(g.edges):
        arcs.append((t, s) if i in matching else (s, t))
    return MatchingOrientation(matching, Digraph(g.node_count, arcs))


@dataclass(frozen=True)
class DualDigraph:
    """Planar dual: node f is face f, arc i crosses edge i from the face on
    the oriented edge's left to the face on its right."""

    digraph: Digraph


def planar_dual(g: PlaneBipartiteGraph, orientation: MatchingOrientation) -> DualDigraph:
    arcs = []
    for i in range(len(g.edges)):
        toward_t = i not in orientation.matching
        left = g.face_of_side(i, toward_t)
        right = g.face_of_side(i, not toward_t)
        arcs.append((left, right))
    return DualDigraph(Digraph(len(g.faces), arcs))


def alternating_faces(
    g: PlaneBipartiteGraph, matching: Iterable[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """Faces whose boundary is one-way under the matching orientation,
    split by sense: (clockwise, anticlockwise).

    Clockwise means every boundary arc opposes the stored side (the face
    sits on its arcs' right); anticlockwise means every arc agrees.
    """
    matching = frozenset(matching)
    _check_perfect(g, matching)
    cw = []
    acw = []
    for fi, face in enumerate(g.faces):
        aligned = 0
        for e, toward_t in face.boundary:
            arc_toward_t = e not in matching
            if arc_toward_t == toward_t:
                aligned += 1
        if aligned == 0:
            cw.append(fi)
        elif aligned == len(face.boundary):
            acw.append(fi)
    return frozenset(cw), frozenset(acw)


@dataclass(frozen=True)
class ClarFriesResult:
    """Optimal matching with its alternating-face classes and certificate.

    ``cw_faces`` and ``acw_faces`` are each node-disjoint families of
    alternating faces under ``matching``; the pair's total weight is
    ``value`` and ``certificate`` proves it maximal over all matchings.
    """

    matching: frozenset[int]
    cw_faces: frozenset[int]
    acw_faces: frozenset[int]
    value: Weight
    certificate: SourceSinkCertificate


def solve_clar_fries(
    g: PlaneBipartiteGraph,
    cw_weights: Sequence[Weight] | None = None,
    acw_weights: Sequence[Weight] | None = None,
    start_matching: Iterable[int] | None = None,
) -> ClarFriesResult:
    """Maximize total face weight over all perfect matchings, where a face
    pays ``cw_weights`` if clockwise-alternating and ``acw_weights`` if
    anticlockwise-alternating.

    Weights default to the ones stored on the graph.  The optimum does not
    depend on ``start_matching``; it only fixes the reference orientation.
    """
    if cw_weights is None:
        cw_weights = g.cw_weights
    if acw_weights is None:
        acw_weights = g.acw_weights
    if len(cw_weights) != len(g.faces) or len(acw_weights) != len(g.faces):
        raise InputError("need one weight per face")

    if start_matching is None:
        start = perfect_matching(g)
    else:
        start = frozenset(start_matching)
    orientation = orient_by_matching(g, start)
    dual = planar_dual(g, orientation)

    # clockwise faces are exactly the sinks of the dual, so the clockwise
    # weight rides on the sink side and the anticlockwise weight on the
    # source side
    weights = WeightPair(tuple(acw_weights), tuple(cw_weights))
    cert = max_source_sink(dual.digraph, weights)

    drops = potential_drops(dual.digraph, cert.potential)
    final = set()
    ns = g.s_count
    for i in range(len(g.edges)):
        into_s = i in start  # arc direction before reorienting
        if drops[i] == 1:
            into_s = not into_s
        if into_s:
            final.add(i)
    matching = frozenset(final)
    hit = [0] * g.node_count
    for e in matching:
        s, t = g.edges[e]
        hit[s] += 1
        hit[t] += 1
    if any(h != 1 for h in hit):
        raise InvariantError("reoriented dual did not yield a perfect matching")

    cw, acw = alternating_faces(g, matching)
    if not (cert.sink_set <= cw and cert.source_set <= acw):
        raise InvariantError("reported faces are not alternating in the new matching")
    return ClarFriesResult(matching, cert.sink_set, cert.source_set, cert.value, cert)


def _one_sided_result(
    g: PlaneBipartiteGraph, cw_only: bool
) -> tuple[Weight, frozenset[int], frozenset[int]]:
    inner = tuple(1 if f != g.outer else 0 for f in range(len(g.faces)))
    zero = (0,) * len(g.faces)
    if cw_only:
        result = solve_clar_fries(g, cw_weights=inner, acw_weights=zero)
        chosen = result.cw_faces
    else:
        result = solve_clar_fries(g, cw_weights=inner, acw_weights=inner)
        chosen = result.cw_faces | result.acw_faces
    _check_node_disjoint(g, result.cw_faces)
    _check_node_disjoint(g, result.acw_faces)
    return result.value, chosen - {g.outer}, result.matching


def _check_node_disjoint(g: PlaneBipartiteGraph, faces: frozenset[int]) -> None:
    seen: set[int] = set()
    for f in faces:
        for e, toward_t in g.faces[f].boundary:
            tail = g.edges[e][0] if toward_t else g.edges[e][1]
            if tail in seen:
                raise InvariantError("same-sense alternating faces share a node")
            seen.add(tail)


def clar_number(g: PlaneBipartiteGraph) -> tuple[Weight, frozenset[int], frozenset[int]]:
    """Maximum number of node-disjoint alternating inner faces over all
    perfect matchings: (value, face set, matching)."""
    return _one_sided_result(g, cw_only=True)


def fries_number(g: PlaneBipartiteGraph) -> tuple[Weight, frozenset[int], frozenset[int]]:
    """Maximum number of alternating inner faces over all perfect
    matchings: (value, face set, matching)."""
    return _one_sided_result(g, cw_only=False)
