"""Local moves on plabic graphs, normal forms and canonical encodings.

Optional edge directions ride along with every move as a map from edge id to
its tail vertex, so a perfect orientation can be transported along a move path.
"""

from collections import deque
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from itertools import product
from typing import Dict, List, Optional, Tuple

from plabic.graph import Color, FaceLabeling, PlabicGraph, PlabicGraphError
from plabic.partitions import Partition

Tails = Dict[int, int]


class IllegalMoveError(ValueError):
    """Raised when a move is attempted at a location where it does not apply."""


class MoveKind(StrEnum):
    SQUARE = "M1"
    CONTRACT = "M2-contract"
    UNCONTRACT = "M2-uncontract"
    INSERT = "M3-insert"
    REMOVE = "M3-remove"


@dataclass(frozen=True)
class MoveDescriptor:
    """A local move. `location` is a face id for M1, an edge id for contract and
    insert, and a vertex id for uncontract and remove."""

    kind: MoveKind
    location: int
    color: Optional[Color] = None
    start: int = 0
    length: int = 0


@dataclass(frozen=True)
class MutationStep:
    """One square move seen from the face labels: mutated becomes replacement,
    with the four neighbouring labels in cyclic order."""

    mutated: Partition
    replacement: Partition
    neighbors: Tuple[Partition, Partition, Partition, Partition]

    def exchange_pairs(self) -> Tuple[Tuple[Partition, Partition], Tuple[Partition, Partition]]:
        n = self.neighbors
        return (n[0], n[2]), (n[1], n[3])

    def inverse(self) -> "MutationStep":
        return MutationStep(mutated=self.replacement, replacement=self.mutated, neighbors=self.neighbors)

    def to_json(self) -> dict:
        return {
            "mutated": list(self.mutated.parts),
            "replacement": list(self.replacement.parts),
            "neighbors": [list(p.parts) for p in self.neighbors],
        }


@dataclass
class SquareMoveResult:
    graph: PlabicGraph
    step: MutationStep
    encoding: str
    tails: Optional[Tails] = None


@dataclass
class ReducedVerdict:
    reduced: bool
    diagnostics: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.reduced


class GraphDraft:
    """Mutable working copy used while applying moves."""

    def __init__(self, graph: PlabicGraph, tails: Optional[Tails] = None):
        self.shape = graph.shape
        self.colors = dict(graph.colors)
        self.edges = dict(graph.edges)
        self.rotation = {v: list(r) for v, r in graph.rotation.items()}
        self.tails = dict(tails) if tails is not None else None

    def is_internal(self, v: int) -> bool:
        return v > self.shape.n

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def _new_vertex(self) -> int:
        return max(self.colors) + 1

    def _new_edge(self) -> int:
        return max(self.edges, default=-1) + 1

    def _replace_endpoint(self, e: int, old: int, new: int):
        a, b = self.edges[e]
        self.edges[e] = (new if a == old else a, new if b == old else b)

    def contract(self, e: int):
        """Merge the two equally colored internal endpoints of e into the first one."""
        u, v = self.edges[e]
        if not (self.is_internal(u) and self.is_internal(v)):
            raise IllegalMoveError(f"Edge {e} touches the boundary and cannot be contracted")
        if self.colors[u] != self.colors[v]:
            raise IllegalMoveError(f"Edge {e} joins differently colored vertices {u} and {v}")
        shared = [f for f in self.rotation[u] if f != e and v in self.edges[f]]
        if shared:
            raise IllegalMoveError(f"Contracting edge {e} would create loops from edges {shared}")
        ru, rv = self.rotation[u], self.rotation[v]
        iu, iv = ru.index(e), rv.index(e)
        merged = ru[iu + 1:] + ru[:iu] + rv[iv + 1:] + rv[:iv]
        for f in rv:
            if f != e:
                self._replace_endpoint(f, v, u)
        self.rotation[u] = merged
        del self.rotation[v], self.colors[v], self.edges[e]
        if self.tails is not None:
            del self.tails[e]
            for f, tail in self.tails.items():
                if tail == v:
                    self.tails[f] = u

    def uncontract(self, v: int, start: int, length: int) -> int:
        """Split v: a new vertex of the same color takes the cyclic block of
        `length` edges starting at `start`, joined to v by a new edge."""
        rot = self.rotation[v]
        if not self.is_internal(v) or not 1 <= length < len(rot):
            raise IllegalMoveError(f"Cannot uncontract a block of {length} edges at vertex {v}")
        block = [rot[(start + t) % len(rot)] for t in range(length)]
        new_vertex, new_edge = self._new_vertex(), self._new_edge()
        position = rot.index(block[0])
        rest = [f for f in rot[position:] + rot[:position] if f not in block]
        self.rotation[v] = [new_edge] + rest
        self.rotation[new_vertex] = [new_edge] + block
        self.colors[new_vertex] = self.colors[v]
        self.edges[new_edge] = (v, new_vertex)
        for f in block:
            self._replace_endpoint(f, v, new_vertex)
        if self.tails is not None:
            for f in block:
                if self.tails[f] == v:
                    self.tails[f] = new_vertex
            black = self.colors[v] is Color.BLACK
            special = [f for f in block if (self.tails[f] == new_vertex) == black]
            if special:
                self.tails[new_edge] = v if black else new_vertex
            else:
                self.tails[new_edge] = new_vertex if black else v
        return new_vertex

    def insert(self, e: int, color: Color) -> int:
        """Put a new degree-two vertex in the middle of e."""
        if color is Color.BOUNDARY:
            raise IllegalMoveError("Inserted vertices must be black or white")
        u, w = self.edges[e]
        x, e2 = self._new_vertex(), self._new_edge()
        self.colors[x] = color
        self.edges[e] = (u, x)
        self.edges[e2] = (x, w)
        self.rotation[x] = [e, e2]
        self.rotation[w][self.rotation[w].index(e)] = e2
        if self.tails is not None:
            if self.tails[e] == u:
                self.tails[e2] = x
            else:
                self.tails[e] = x
                self.tails[e2] = w
        return x

    def remove(self, x: int):
        """Delete the degree-two internal vertex x and glue its edges."""
        if not self.is_internal(x) or len(self.rotation[x]) != 2:
            raise IllegalMoveError(f"Vertex {x} is not an internal vertex of degree 2")
        e1, e2 = self.rotation[x]
        u, w = self.other_end(e1, x), self.other_end(e2, x)
        if u == w:
            raise IllegalMoveError(f"Removing vertex {x} would create a loop at {u}")
        self.edges[e1] = (u, w)
        self.rotation[w][self.rotation[w].index(e2)] = e1
        del self.edges[e2], self.rotation[x], self.colors[x]
        if self.tails is not None:
            if self.tails[e1] == x:
                self.tails[e1] = w
            del self.tails[e2]

    def flip(self, vertices):
        for v in vertices:
            self.colors[v] = self.colors[v].flipped()

    def freeze(self, validate: bool = True) -> PlabicGraph:
        return PlabicGraph(self.shape, self.colors, self.edges, self.rotation, validate=validate)


def _square_vertices(graph: PlabicGraph, face: int) -> List[int]:
    darts = graph.faces[face]
    vertices = [tail for _, tail in darts]
    if face == graph.outer_face or len(darts) != 4 or len(set(vertices)) != 4:
        raise IllegalMoveError(f"Face {face} is not an internal quadrilateral")
    if any(graph.is_boundary(v) for v in vertices):
        raise IllegalMoveError(f"Face {face} touches the boundary")
    return vertices


def is_square_face(graph: PlabicGraph, face: int, trivalent: bool = False) -> bool:
    try:
        vertices = _square_vertices(graph, face)
    except IllegalMoveError:
        return False
    colors = [graph.colors[v] for v in vertices]
    if any(colors[i] == colors[(i + 1) % 4] for i in range(4)):
        return False
    return not trivalent or all(graph.degree(v) == 3 for v in vertices)


def apply_move(graph: PlabicGraph, move: MoveDescriptor) -> PlabicGraph:
    """Apply one of M1, M2 or M3 and return the new graph."""
    draft = GraphDraft(graph)
    if move.kind is MoveKind.SQUARE:
        if not is_square_face(graph, move.location, trivalent=True):
            raise IllegalMoveError(f"Face {move.location} is not a trivalent square with alternating colors")
        draft.flip(_square_vertices(graph, move.location))
    elif move.kind is MoveKind.CONTRACT:
        draft.contract(move.location)
    elif move.kind is MoveKind.UNCONTRACT:
        draft.uncontract(move.location, move.start, move.length)
    elif move.kind is MoveKind.INSERT:
        draft.insert(move.location, move.color or Color.WHITE)
    elif move.kind is MoveKind.REMOVE:
        draft.remove(move.location)
    return draft.freeze()


def _normalize_draft(draft: GraphDraft):
    while True:
        changed = False
        for e in sorted(draft.edges):
            u, v = draft.edges[e]
            if draft.is_internal(u) and draft.is_internal(v) and draft.colors[u] == draft.colors[v]:
                try:
                    draft.contract(e)
                except IllegalMoveError:
                    continue
                changed = True
                break
        if changed:
            continue
        for x in sorted(draft.rotation):
            if draft.is_internal(x) and len(draft.rotation[x]) == 2:
                try:
                    draft.remove(x)
                except IllegalMoveError:
                    continue
                changed = True
                break
        if not changed:
            return


def normalize(graph: PlabicGraph, tails: Optional[Tails] = None) -> Tuple[PlabicGraph, Optional[Tails]]:
    """Contract unicolored internal edges and drop degree-two vertices until stable."""
    draft = GraphDraft(graph, tails)
    _normalize_draft(draft)
    return draft.freeze(), draft.tails


@dataclass
class Canonical:
    graph: PlabicGraph
    encoding: str
    vertex_map: Dict[int, int]
    edge_map: Dict[int, int]

    def transport(self, tails: Optional[Tails]) -> Optional[Tails]:
        if tails is None:
            return None
        return {self.edge_map[e]: self.vertex_map[t] for e, t in tails.items()}


def canonicalize(graph: PlabicGraph) -> Canonical:
    """Renumber a graph by breadth-first search from b_1.

    Each vertex lists its edges starting from the edge it was discovered by.
    Boundary vertices keep their ids, internal vertices are numbered from n+1
    and edges from 0, both in discovery order.
    """
    n = graph.n
    vertex_map: Dict[int, int] = {i: i for i in range(1, n + 1)}
    edge_map: Dict[int, int] = {}
    entry: Dict[int, int] = {}
    order: List[int] = []
    next_vertex = n + 1
    for root in range(1, n + 1):
        if root in entry:
            continue
        entry[root] = graph.boundary_edge(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            rot = graph.rotation[v]
            i = rot.index(entry[v])
            for e in rot[i:] + rot[:i]:
                if e not in edge_map:
                    edge_map[e] = len(edge_map)
                w = graph.other_end(e, v)
                if w not in entry:
                    entry[w] = e
                    if not graph.is_boundary(w):
                        vertex_map[w] = next_vertex
                        next_vertex += 1
                    queue.append(w)
    if len(entry) != len(graph.colors):
        raise PlabicGraphError("Some internal vertices are not connected to the boundary")

    colors = {vertex_map[v]: c for v, c in graph.colors.items()}
    edges = {edge_map[e]: (vertex_map[a], vertex_map[b]) for e, (a, b) in graph.edges.items()}
    rotation = {}
    for v in graph.colors:
        rot = graph.rotation[v]
        i = rot.index(entry[v])
        rotation[vertex_map[v]] = [edge_map[e] for e in rot[i:] + rot[:i]]

    tokens = [f"k{graph.k}n{n}"]
    for v in sorted(rotation):
        name = f"b{v}" if v <= n else ("B" if colors[v] is Color.BLACK else "W")
        tokens.append(name + ":" + ",".join(str(e) for e in rotation[v]))
    canonical = PlabicGraph(graph.shape, colors, edges, rotation, validate=False)
    return Canonical(graph=canonical, encoding="|".join(tokens), vertex_map=vertex_map, edge_map=edge_map)


def canonical_form(graph: PlabicGraph) -> str:
    normal, _ = normalize(graph)
    return canonicalize(normal).encoding


def canonical_graph(graph: PlabicGraph, tails: Optional[Tails] = None) -> Tuple[PlabicGraph, str, Optional[Tails]]:
    normal, tails = normalize(graph, tails)
    canonical = canonicalize(normal)
    return canonical.graph, canonical.encoding, canonical.transport(tails)


def square_faces(graph: PlabicGraph) -> List[Partition]:
    """Labels of the faces of a normal graph where a square move applies."""
    labeling = graph.labeling
    return sorted(labeling.labels[f] for f in graph.interior_faces() if is_square_face(graph, f))


def _locally_perfect(colors: Dict[int, Color], edges_at: Dict[int, List[int]], tails: Tails, v: int) -> bool:
    if colors[v] is Color.BLACK:
        return sum(1 for e in edges_at[v] if tails[e] == v) == 1
    return sum(1 for e in edges_at[v] if tails[e] != v) == 1


def _orient_square(draft: GraphDraft, cycle: List[int], sides: List[int]) -> bool:
    """Choose directions for the four square edges after the colors flipped.

    Returns False when the only perfect completions run around the square as a
    directed cycle; the caller then has to look for another orientation.
    """
    edges_at = {v: draft.rotation[v] for v in cycle}
    completions = []
    for choice in product((0, 1), repeat=4):
        trial = dict(draft.tails)
        for side, e, flip in zip(range(4), sides, choice):
            a, b = cycle[side], cycle[(side + 1) % 4]
            trial[e] = a if flip == 0 else b
        if all(_locally_perfect(draft.colors, edges_at, trial, v) for v in cycle):
            completions.append((choice, trial))
    acyclic = [trial for choice, trial in completions if len(set(choice)) > 1]
    if len(acyclic) == 1:
        draft.tails = acyclic[0]
        return True
    return False


def square_move(
    graph: PlabicGraph,
    label: Partition,
    labeling: Optional[FaceLabeling] = None,
    tails: Optional[Tails] = None,
) -> SquareMoveResult:
    """Square move on a normal graph at the face carrying `label`.

    Square vertices of degree above three are first split so the square becomes
    trivalent; the colors then flip and the result is normalized again.
    """
    labeling = labeling or graph.labeling
    try:
        face = labeling.face_of(label)
    except KeyError:
        raise IllegalMoveError(f"No face labeled {label}")
    if not is_square_face(graph, face):
        raise IllegalMoveError(f"Face {label} is not an internal square with alternating colors")
    darts = graph.faces[face]
    neighbors = tuple(labeling.labels[graph.face_of(graph.reverse(d))] for d in darts)
    sides = [e for e, _ in darts]

    draft = GraphDraft(graph, tails)
    cycle = []
    for index, (e_out, v) in enumerate(darts):
        e_in = darts[index - 1][0]
        if len(draft.rotation[v]) > 3:
            start = draft.rotation[v].index(e_in)
            v = draft.uncontract(v, start, 2)
        cycle.append(v)
    draft.flip(cycle)
    oriented = draft.tails is not None and _orient_square(draft, cycle, sides)
    if not oriented:
        draft.tails = None
    _normalize_draft(draft)
    canonical = canonicalize(draft.freeze())
    new_graph = canonical.graph
    fresh = new_graph.labeling.label_set() - labeling.label_set()
    if len(fresh) != 1:
        raise PlabicGraphError(f"Square move at {label} changed {len(fresh)} face labels, expected one")
    step = MutationStep(mutated=label, replacement=next(iter(fresh)), neighbors=neighbors)
    return SquareMoveResult(
        graph=new_graph, step=step, encoding=canonical.encoding, tails=canonical.transport(draft.tails)
    )


def has_parallel_edges(graph: PlabicGraph) -> bool:
    seen = set()
    for u, v in graph.edges.values():
        key = frozenset((u, v))
        if key in seen:
            return True
        seen.add(key)
    return False


def check_reduced_type(graph: PlabicGraph) -> ReducedVerdict:
    """Reducedness for type pi_{k,n} by trip permutation, face count and the
    absence of parallel edges in the normal form."""
    diagnostics = []
    expected = graph.shape.trip_permutation()
    try:
        permutation = graph.trip_permutation()
    except PlabicGraphError as e:
        return ReducedVerdict(reduced=False, diagnostics=[str(e)])
    if permutation != expected:
        diagnostics.append(f"trip permutation {permutation} differs from {expected}")
    faces = len(graph.interior_faces())
    if faces != graph.shape.dimension + 1:
        diagnostics.append(f"{faces} faces, expected {graph.shape.dimension + 1}")
    normal, _ = normalize(graph)
    if has_parallel_edges(normal):
        diagnostics.append("normal form contains parallel edges (R1 reduction applies)")
    return ReducedVerdict(reduced=not diagnostics, diagnostics=diagnostics)
