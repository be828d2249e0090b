"""Flows in an acyclic perfect orientation and the Plucker polynomials they give."""

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import networkx as nx

from algebra.laurent import LaurentPoly, substitute
from network.orientation import PerfectOrientation, rectangles_network
from plabic.graph import Dart
from plabic.partitions import GrassmannShape, IndexSubset, Partition, index_subset


@dataclass(frozen=True)
class Flow:
    """Vertex-disjoint walks; walk r runs from sources[r] to sinks[r]."""

    paths: Tuple[Tuple[Dart, ...], ...]
    sources: Tuple[int, ...]
    sinks: Tuple[int, ...]

    def vertex_walks(self, orientation: PerfectOrientation) -> List[List[int]]:
        walks = []
        for path in self.paths:
            walk = [tail for _, tail in path]
            walk.append(orientation.head(path[-1][0]))
            walks.append(walk)
        return walks

    def to_json(self, orientation: PerfectOrientation) -> dict:
        return {"sources": list(self.sources), "sinks": list(self.sinks), "walks": self.vertex_walks(orientation)}


def flow_endpoints(orientation: PerfectOrientation, J: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Sources of I_O \\ J in decreasing order and sinks of J \\ I_O in increasing order."""
    J = index_subset(J, orientation.graph.n)
    if len(J) != orientation.graph.shape.rows:
        raise ValueError(f"Plucker index {J} must have {orientation.graph.shape.rows} elements")
    sources = tuple(sorted(set(orientation.sources) - set(J), reverse=True))
    sinks = tuple(sorted(set(J) - set(orientation.sources)))
    return sources, sinks


def _paths(orientation: PerfectOrientation, source: int, sink: int, used: frozenset) -> Iterator[Tuple[Dart, ...]]:
    D = orientation.digraph
    view = nx.subgraph_view(D, filter_node=lambda v: v not in used)
    for edge_path in nx.all_simple_edge_paths(view, source, sink):
        yield tuple((key, u) for u, _, key in edge_path)


def _path_vertices(orientation: PerfectOrientation, path: Tuple[Dart, ...]) -> frozenset:
    return frozenset(tail for _, tail in path) | {orientation.head(path[-1][0])}


def enumerate_flows(orientation: PerfectOrientation, J: Sequence[int]) -> List[Flow]:
    """Every vertex-disjoint path system from I_O \\ J to J \\ I_O."""
    sources, sinks = flow_endpoints(orientation, J)
    flows: List[Flow] = []

    def extend(r: int, used: frozenset, paths: Tuple[Tuple[Dart, ...], ...]):
        if r == len(sources):
            flows.append(Flow(paths=paths, sources=sources, sinks=sinks))
            return
        for path in _paths(orientation, sources[r], sinks[r], used):
            extend(r + 1, used | _path_vertices(orientation, path), paths + (path,))

    extend(0, frozenset(), ())
    return flows


def flow_weight(orientation: PerfectOrientation, flow: Flow) -> LaurentPoly:
    """Product over the walks of x_mu for every face mu left of the walk."""
    graph = orientation.graph
    labels = graph.labeling.labels
    exponents = {}
    for path in flow.paths:
        for face in graph.left_faces(path):
            lam = labels[face]
            exponents[lam] = exponents.get(lam, 0) + 1
    return LaurentPoly.monomial(exponents)


def eliminate_empty_face(f: LaurentPoly, face_variables: Sequence[Partition]) -> LaurentPoly:
    """Replace x_empty by the inverse of the product of all other face variables."""
    product = LaurentPoly.monomial({lam: 1 for lam in face_variables if not lam.is_empty()})
    return substitute(f, Partition(), LaurentPoly.one(), product)


def plucker_polynomial(orientation: PerfectOrientation, J: Sequence[int]) -> LaurentPoly:
    total = LaurentPoly.zero()
    for flow in enumerate_flows(orientation, J):
        total = total + flow_weight(orientation, flow)
    return eliminate_empty_face(total, orientation.graph.labeling.partitions())


def minimal_flow_rec(shape: GrassmannShape, J: IndexSubset) -> Flow:
    """Greedy flow in G_rec: each walk has the fewest faces on its left among
    walks that avoid the earlier ones, so it hugs the south-east border."""
    orientation = rectangles_network(shape)
    labels = orientation.graph.labeling.labels
    sources, sinks = flow_endpoints(orientation, J)
    used, paths = frozenset(), []
    for source, sink in zip(sources, sinks):

        def cost(path):
            faces = orientation.graph.left_faces(path)
            return (len(faces), sorted(labels[f] for f in faces))

        best = min(_paths(orientation, source, sink, used), key=cost, default=None)
        if best is None:
            raise ValueError(f"No walk from b_{source} to b_{sink} avoids the earlier walks")
        paths.append(best)
        used = used | _path_vertices(orientation, best)
    return Flow(paths=tuple(paths), sources=sources, sinks=sinks)
