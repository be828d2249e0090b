"""Plabic graphs embedded in a disk.

Boundary vertices are b_1..b_n with ids 1..n, placed clockwise on the disk.
Internal vertices have ids above n. Every vertex carries the clockwise order of
its incident edges. The disk boundary is modelled by n virtual arcs with
negative ids: arc -i runs from b_i to b_{i+1} (cyclically). Arcs only ever
appear in the full rotation used for face tracing.
"""

import json
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

import networkx as nx

from plabic.partitions import GrassmannShape, IndexSubset, Partition, partition_from_south

Dart = Tuple[int, int]


class PlabicGraphError(ValueError):
    """Raised for malformed embeddings and inconsistent trips or labels."""


class Color(StrEnum):
    BLACK = "black"
    WHITE = "white"
    BOUNDARY = "boundary"

    def flipped(self) -> "Color":
        if self is Color.BLACK:
            return Color.WHITE
        if self is Color.WHITE:
            return Color.BLACK
        raise PlabicGraphError("Boundary vertices have no color to flip")


@dataclass(frozen=True)
class Trip:
    start: int
    end: int
    walk: Tuple[Dart, ...]


@dataclass(frozen=True)
class FaceLabeling:
    subsets: Dict[int, IndexSubset]
    labels: Dict[int, Partition]

    def face_of(self, label: Partition) -> int:
        for face, lam in self.labels.items():
            if lam == label:
                return face
        raise KeyError(f"No face labeled {label}")

    def partitions(self) -> List[Partition]:
        """Nonempty face labels, sorted."""
        return sorted(lam for lam in self.labels.values() if not lam.is_empty())

    def label_set(self) -> FrozenSet[Partition]:
        return frozenset(self.labels.values())


class PlabicGraph:
    """An immutable plabic graph; moves build new instances."""

    def __init__(
        self,
        shape: GrassmannShape,
        colors: Mapping[int, Color],
        edges: Mapping[int, Tuple[int, int]],
        rotation: Mapping[int, Sequence[int]],
        validate: bool = True,
    ):
        self.shape = shape
        self.colors: Dict[int, Color] = {v: Color(c) for v, c in colors.items()}
        self.edges: Dict[int, Tuple[int, int]] = {e: (int(u), int(v)) for e, (u, v) in edges.items()}
        self.rotation: Dict[int, Tuple[int, ...]] = {v: tuple(r) for v, r in rotation.items()}
        if validate:
            self.validate()

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def k(self) -> int:
        return self.shape.k

    def is_boundary(self, v: int) -> bool:
        return 1 <= v <= self.n

    def internal_vertices(self) -> List[int]:
        return sorted(v for v in self.colors if not self.is_boundary(v))

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def boundary_edge(self, i: int) -> int:
        return self.rotation[i][0]

    def ends(self, e: int) -> Tuple[int, int]:
        if e < 0:
            i = -e
            return (i, i % self.n + 1)
        return self.edges[e]

    def other_end(self, e: int, v: int) -> int:
        u, w = self.ends(e)
        if v == u:
            return w
        if v == w:
            return u
        raise PlabicGraphError(f"Edge {e} is not incident to vertex {v}")

    def head(self, dart: Dart) -> int:
        return self.other_end(*dart)

    def reverse(self, dart: Dart) -> Dart:
        return (dart[0], self.head(dart))

    def full_rotation(self, v: int) -> Tuple[int, ...]:
        """Clockwise rotation including the disk arcs at boundary vertices."""
        if self.is_boundary(v):
            previous_arc = -(v - 1) if v > 1 else -self.n
            return (previous_arc, -v) + self.rotation[v]
        return self.rotation[v]

    def darts(self) -> List[Dart]:
        darts = []
        for e in sorted(self.edges):
            u, v = self.edges[e]
            darts.extend([(e, u), (e, v)])
        for i in range(1, self.n + 1):
            darts.extend([(-i, i), (-i, i % self.n + 1)])
        return darts

    def next_dart(self, dart: Dart) -> Dart:
        """Next dart around the face lying to the left of `dart`."""
        e, _ = dart
        h = self.head(dart)
        rot = self.full_rotation(h)
        return (rot[(rot.index(e) + 1) % len(rot)], h)

    @cached_property
    def _face_data(self):
        faces: List[Tuple[Dart, ...]] = []
        face_of: Dict[Dart, int] = {}
        for start in self.darts():
            if start in face_of:
                continue
            cycle, dart = [], start
            while dart not in face_of:
                face_of[dart] = len(faces)
                cycle.append(dart)
                dart = self.next_dart(dart)
            if dart != start:
                raise PlabicGraphError(f"Face traversal from {start} did not close up")
            faces.append(tuple(cycle))
        return faces, face_of, face_of[(-1, 1)]

    @property
    def faces(self) -> List[Tuple[Dart, ...]]:
        return self._face_data[0]

    def face_of(self, dart: Dart) -> int:
        return self._face_data[1][dart]

    @property
    def outer_face(self) -> int:
        return self._face_data[2]

    def interior_faces(self) -> List[int]:
        return [f for f in range(len(self.faces)) if f != self.outer_face]

    def face_vertices(self, face: int) -> List[int]:
        return [tail for _, tail in self.faces[face]]

    def trip(self, i: int) -> Trip:
        """Follow the trip from b_i: maximal right turns at black, maximal left at white."""
        if not self.is_boundary(i):
            raise PlabicGraphError(f"Trips start at boundary vertices, got {i}")
        dart = (self.boundary_edge(i), i)
        walk = [dart]
        for _ in range(2 * len(self.edges) + 2):
            v = self.head(dart)
            if self.is_boundary(v):
                return Trip(start=i, end=v, walk=tuple(walk))
            rot = self.rotation[v]
            idx = rot.index(dart[0])
            step = -1 if self.colors[v] is Color.BLACK else 1
            dart = (rot[(idx + step) % len(rot)], v)
            walk.append(dart)
        raise PlabicGraphError(f"Trip from b_{i} does not terminate; the rotation system is corrupt")

    def trip_permutation(self) -> Tuple[int, ...]:
        return tuple(self.trip(i).end for i in range(1, self.n + 1))

    def left_faces(self, walk: Sequence[Dart]) -> FrozenSet[int]:
        """Interior faces left of a boundary-to-boundary walk.

        Seeds are the faces locally left of each dart; the fill may not cross
        walk edges or disk arcs, and must never meet a face locally right of
        the walk.
        """
        walk_edges = {e for e, _ in walk}
        left = {self.face_of(d) for d in walk}
        right = {self.face_of(self.reverse(d)) for d in walk}
        if left & right:
            raise PlabicGraphError(f"Walk {list(walk)} has faces on both of its sides")
        region, stack = set(left), list(left)
        while stack:
            face = stack.pop()
            for dart in self.faces[face]:
                e = dart[0]
                if e < 0 or e in walk_edges:
                    continue
                neighbor = self.face_of(self.reverse(dart))
                if neighbor == self.outer_face or neighbor in region:
                    continue
                if neighbor in right:
                    raise PlabicGraphError(f"Walk {list(walk)} does not split the disk")
                region.add(neighbor)
                stack.append(neighbor)
        return frozenset(region)

    @cached_property
    def labeling(self) -> FaceLabeling:
        """Label each face by the set of i whose trip has the face on its left."""
        members: Dict[int, List[int]] = {f: [] for f in self.interior_faces()}
        for i in range(1, self.n + 1):
            for face in self.left_faces(self.trip(i).walk):
                members[face].append(i)
        subsets, labels = {}, {}
        for face, elements in members.items():
            if len(elements) != self.shape.rows:
                raise PlabicGraphError(
                    f"Face {face} received {len(elements)} trip labels {elements}, expected {self.shape.rows}"
                )
            subsets[face] = tuple(elements)
            labels[face] = partition_from_south(elements, self.shape)
        return FaceLabeling(subsets=subsets, labels=labels)

    def face_labels(self) -> FaceLabeling:
        return self.labeling

    def validate(self):
        n = self.n
        for i in range(1, n + 1):
            if self.colors.get(i) is not Color.BOUNDARY:
                raise PlabicGraphError(f"Vertex {i} must be the boundary vertex b_{i}")
            if len(self.rotation.get(i, ())) != 1:
                raise PlabicGraphError(f"Boundary vertex b_{i} must have degree 1")
        seen: Dict[int, int] = {}
        for v, rot in self.rotation.items():
            if v not in self.colors:
                raise PlabicGraphError(f"Rotation given for unknown vertex {v}")
            if not self.is_boundary(v):
                if self.colors[v] is Color.BOUNDARY:
                    raise PlabicGraphError(f"Internal vertex {v} is colored as boundary")
                if not rot:
                    raise PlabicGraphError(f"Internal vertex {v} is isolated")
            for e in rot:
                if e not in self.edges or v not in self.edges[e]:
                    raise PlabicGraphError(f"Rotation of {v} lists edge {e}, which is not incident to it")
                seen[e] = seen.get(e, 0) + 1
        for e, (u, w) in self.edges.items():
            if u == w:
                raise PlabicGraphError(f"Edge {e} is a loop at {u}")
            if seen.get(e, 0) != 2:
                raise PlabicGraphError(f"Edge {e} appears {seen.get(e, 0)} times in the rotation system")
        for v in self.internal_vertices():
            if self.degree(v) == 1 and not self.is_boundary(self.other_end(self.rotation[v][0], v)):
                raise PlabicGraphError(f"Internal leaf {v} is not adjacent to the boundary")
        for component in nx.connected_components(self.to_networkx()):
            if not any(self.is_boundary(v) for v in component):
                raise PlabicGraphError(f"Component {sorted(component)} does not touch the boundary")
        vertices = len(self.colors)
        edges = len(self.edges) + n
        if vertices - edges + len(self.faces) != 2:
            raise PlabicGraphError(
                f"Euler check failed: V={vertices}, E={edges}, F={len(self.faces)}; the rotation system is not planar"
            )

    def to_networkx(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(self.colors)
        for e, (u, v) in self.edges.items():
            G.add_edge(u, v, key=e)
        return G

    def with_parallel_edge(self, e: int) -> "PlabicGraph":
        """Copy with a second edge beside e, closing a digon face."""
        u, v = self.edges[e]
        new = max(self.edges) + 1
        rotation = {w: list(r) for w, r in self.rotation.items()}
        rotation[u].insert(rotation[u].index(e) + 1, new)
        rotation[v].insert(rotation[v].index(e), new)
        edges = dict(self.edges)
        edges[new] = (u, v)
        return PlabicGraph(self.shape, self.colors, edges, rotation)

    def to_json(self) -> dict:
        """JSON form with edges renumbered 0..E-1 in id order."""
        renumber = {e: i for i, e in enumerate(sorted(self.edges))}
        return {
            "shape": self.shape.to_json(),
            "vertices": [{"id": v, "color": str(self.colors[v])} for v in self.internal_vertices()],
            "boundary": [renumber[self.boundary_edge(i)] for i in range(1, self.n + 1)],
            "edges": [list(self.edges[e]) for e in sorted(self.edges)],
            "rotation": {str(v): [renumber[e] for e in self.rotation[v]] for v in self.internal_vertices()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "PlabicGraph":
        shape = GrassmannShape(k=data["shape"]["k"], n=data["shape"]["n"])
        colors: Dict[int, Color] = {i: Color.BOUNDARY for i in range(1, shape.n + 1)}
        for vertex in data["vertices"]:
            colors[int(vertex["id"])] = Color(vertex["color"])
        edges = {e: (u, v) for e, (u, v) in enumerate(data["edges"])}
        rotation = {int(v): list(r) for v, r in data["rotation"].items()}
        if len(data["boundary"]) != shape.n:
            raise PlabicGraphError(f"Expected {shape.n} boundary edges, got {len(data['boundary'])}")
        for i, e in enumerate(data["boundary"], start=1):
            rotation[i] = [e]
        return cls(shape, colors, edges, rotation)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_dot(self, with_labels: bool = True) -> str:
        lines = ["graph plabic {", "  node [fontsize=10];"]
        for i in range(1, self.n + 1):
            lines.append(f'  b{i} [shape=box, label="{i}"];')
        for v in self.internal_vertices():
            fill = "black" if self.colors[v] is Color.BLACK else "white"
            lines.append(f'  v{v} [shape=circle, style=filled, fillcolor={fill}, label="", width=0.2];')
        for e in sorted(self.edges):
            names = [f"b{w}" if self.is_boundary(w) else f"v{w}" for w in self.edges[e]]
            lines.append(f"  {names[0]} -- {names[1]};")
        if with_labels:
            labeling = self.labeling
            for face in sorted(labeling.labels):
                ring = " ".join(str(v) for v in self.face_vertices(face))
                lines.append(f"  // face {labeling.labels[face]} {list(labeling.subsets[face])}: {ring}")
            names = ", ".join(str(lam) for lam in sorted(labeling.label_set()))
            lines.append(f'  label="{self.shape} faces: {names}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"PlabicGraph({self.shape}, {len(self.internal_vertices())} internal vertices, {len(self.edges)} edges)"
