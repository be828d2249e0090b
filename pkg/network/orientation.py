"""Perfect orientations: O_rec, transport along move paths, and a fallback search."""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Set, Tuple

import networkx as nx

from plabic.graph import Color, PlabicGraph
from plabic.moves import Tails, canonical_form
from plabic.partitions import GrassmannShape, Partition
from plabic.rectangles import canonical_rectangles
from plabic.search import replay_path
from utils import console


class OrientationError(ValueError):
    """Raised for imperfect orientations, missing provenance, or when no acyclic orientation exists."""


@dataclass
class PerfectOrientation:
    graph: PlabicGraph
    tails: Tails

    def tail(self, e: int) -> int:
        return self.tails[e]

    def head(self, e: int) -> int:
        return self.graph.other_end(e, self.tails[e])

    @cached_property
    def sources(self) -> Tuple[int, ...]:
        return tuple(
            i for i in range(1, self.graph.n + 1) if self.tails[self.graph.boundary_edge(i)] == i
        )

    def validate(self):
        graph = self.graph
        if set(self.tails) != set(graph.edges):
            raise OrientationError("Every edge needs exactly one direction")
        for e, tail in self.tails.items():
            if tail not in graph.edges[e]:
                raise OrientationError(f"Tail {tail} of edge {e} is not one of its endpoints")
        for v in graph.internal_vertices():
            outgoing = sum(1 for e in graph.rotation[v] if self.tails[e] == v)
            incoming = graph.degree(v) - outgoing
            if graph.colors[v] is Color.BLACK and outgoing != 1:
                raise OrientationError(f"Black vertex {v} has {outgoing} outgoing edges")
            if graph.colors[v] is Color.WHITE and incoming != 1:
                raise OrientationError(f"White vertex {v} has {incoming} incoming edges")
        if len(self.sources) != graph.shape.rows:
            raise OrientationError(f"Source set {self.sources} should have {graph.shape.rows} elements")

    @cached_property
    def digraph(self) -> nx.MultiDiGraph:
        D = nx.MultiDiGraph()
        D.add_nodes_from(self.graph.colors)
        for e in self.graph.edges:
            D.add_edge(self.tails[e], self.head(e), key=e)
        return D

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.digraph)

    def to_json(self) -> dict:
        renumber = {e: i for i, e in enumerate(sorted(self.graph.edges))}
        return {
            "graph": self.graph.to_json(),
            "sources": list(self.sources),
            "directions": {str(renumber[e]): [self.tails[e], self.head(e)] for e in sorted(self.graph.edges)},
        }


def rectangles_network(shape: GrassmannShape) -> PerfectOrientation:
    graph, _, tails = canonical_rectangles(shape)
    return PerfectOrientation(graph=graph, tails=dict(tails))


def _matchings(graph: PlabicGraph, covered: Set[int]) -> Iterator[Set[int]]:
    """Perfect matchings of the internal vertices not yet covered, by internal edges."""
    free = [v for v in graph.internal_vertices() if v not in covered]
    if not free:
        yield set()
        return
    v = free[0]
    for e in graph.rotation[v]:
        w = graph.other_end(e, v)
        if graph.is_boundary(w) or w in covered:
            continue
        for rest in _matchings(graph, covered | {v, w}):
            yield rest | {e}


def search_acyclic_orientation(graph: PlabicGraph, sources: Iterable[int]) -> PerfectOrientation:
    """Find an acyclic perfect orientation with the given boundary sources.

    Perfect orientations correspond to almost perfect matchings: the matched
    edges are those directed from black to white. Boundary edges are forced by
    the source set, and the rest is a perfect matching of the remaining
    internal vertices.
    """
    sources = set(sources)
    for e, (u, w) in graph.edges.items():
        if not graph.is_boundary(u) and not graph.is_boundary(w) and graph.colors[u] == graph.colors[w]:
            raise OrientationError(f"Edge {e} is unicolored; normalize the graph first")
    tails: Tails = {}
    covered: Set[int] = set()
    for i in range(1, graph.n + 1):
        e = graph.boundary_edge(i)
        v = graph.other_end(e, i)
        tails[e] = i if i in sources else v
        if graph.is_boundary(v):
            continue
        matched = (i in sources) == (graph.colors[v] is Color.WHITE)
        if matched:
            if v in covered:
                raise OrientationError(f"Source set {sorted(sources)} forces vertex {v} to be matched twice")
            covered.add(v)
    for matching in _matchings(graph, covered):
        candidate = dict(tails)
        for e, (u, w) in graph.edges.items():
            if graph.is_boundary(u) or graph.is_boundary(w):
                continue
            black = u if graph.colors[u] is Color.BLACK else w
            white = w if black == u else u
            candidate[e] = black if e in matching else white
        orientation = PerfectOrientation(graph=graph, tails=candidate)
        if orientation.is_acyclic():
            orientation.validate()
            return orientation
    raise OrientationError(f"No acyclic perfect orientation of {graph} has sources {sorted(sources)}")


def acyclic_orientation(
    graph: PlabicGraph,
    path: Optional[Sequence[Partition]] = None,
    verbose: bool = False,
) -> PerfectOrientation:
    """Acyclic perfect orientation with sources {1..n-k}.

    O_rec is transported along the move path that produced `graph`. When a move
    meets a square whose only completion is a directed cycle, the orientation
    of the final graph is searched for instead. The result lives on the
    canonical form of `graph`.
    """
    shape = graph.shape
    _, rec_encoding, _ = canonical_rectangles(shape)
    encoding = canonical_form(graph)
    if path is None:
        if encoding != rec_encoding:
            raise OrientationError(f"No move path from G_rec is known for {graph}")
        path = ()
    replay = replay_path(shape, path, with_orientation=True)
    if replay.encoding != encoding:
        raise OrientationError(f"Move path {[str(p) for p in path]} does not lead to {graph}")
    orientation = None
    if replay.tails is not None:
        orientation = PerfectOrientation(graph=replay.graph, tails=replay.tails)
        if not orientation.is_acyclic():
            orientation = None
    if orientation is None:
        if verbose:
            console.print("[bold yellow]Transported orientation is not acyclic, searching matchings[/]")
        return search_acyclic_orientation(replay.graph, range(1, shape.rows + 1))
    orientation.validate()
    return orientation
