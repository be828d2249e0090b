"""The rectangles graph G_rec(k, n) and its acyclic orientation O_rec.

The graph is an (n-k) x k grid. Row line i runs west from b_i on the right
edge, column line j runs south to b_{n+1-j} on the bottom edge. The face below
row i and right of column j is labeled by the i x j rectangle; the region
above row 1 and left of column 1 is labeled by the empty partition.

Row 1 carries white trivalent vertices, column 1 black ones, and each
remaining crossing is a black vertex (north-east) joined by a diagonal to a
white vertex (south-west). The corner crossing is fused away.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from plabic.graph import Color, PlabicGraph
from plabic.moves import Tails, canonical_graph
from plabic.partitions import GrassmannShape

Port = Tuple[int, int]
Point = Tuple[Fraction, Fraction]


class _GridBuilder:
    def __init__(self, shape: GrassmannShape):
        self.shape = shape
        self.colors: Dict[int, Color] = {i: Color.BOUNDARY for i in range(1, shape.n + 1)}
        self.arms: Dict[int, List[Optional[int]]] = {i: [None] for i in range(1, shape.n + 1)}
        self.edges: Dict[int, Tuple[int, int]] = {}
        self.position: Dict[int, Point] = {}

    def vertex(self, color: Color, arm_count: int, at: Point) -> int:
        v = max(self.colors) + 1
        self.colors[v] = color
        self.arms[v] = [None] * arm_count
        self.position[v] = at
        return v

    def connect(self, a: Port, b: Port):
        e = len(self.edges)
        self.edges[e] = (a[0], b[0])
        self.arms[a[0]][a[1]] = e
        self.arms[b[0]][b[1]] = e

    def graph(self) -> PlabicGraph:
        return PlabicGraph(self.shape, self.colors, self.edges, self.arms)


def _grid(shape: GrassmannShape) -> _GridBuilder:
    a, k, n = shape.rows, shape.k, shape.n
    g = _GridBuilder(shape)
    fifth = Fraction(1, 5)
    for i in range(1, a + 1):
        g.position[i] = (Fraction(k + 1), Fraction(-i))
    for j in range(1, k + 1):
        g.position[n + 1 - j] = (Fraction(j), Fraction(-(a + 1)))

    # (east, west) and (north, south) ports of every grid item
    row_ports: Dict[Tuple[int, int], Tuple[Port, Optional[Port]]] = {}
    column_ports: Dict[Tuple[int, int], Tuple[Optional[Port], Port]] = {}
    diagonals = []
    for j in range(2, k + 1):
        t = g.vertex(Color.WHITE, 3, (Fraction(j), Fraction(-1)))  # arms E, S, W
        row_ports[(1, j)] = ((t, 0), (t, 2))
        column_ports[(1, j)] = (None, (t, 1))
    for i in range(2, a + 1):
        t = g.vertex(Color.BLACK, 3, (Fraction(1), Fraction(-i)))  # arms N, E, S
        row_ports[(i, 1)] = ((t, 1), None)
        column_ports[(i, 1)] = ((t, 0), (t, 2))
    for i in range(2, a + 1):
        for j in range(2, k + 1):
            A = g.vertex(Color.BLACK, 3, (j + fifth, -i + fifth))  # arms N, E, D
            B = g.vertex(Color.WHITE, 3, (j - fifth, -i - fifth))  # arms D, S, W
            row_ports[(i, j)] = ((A, 1), (B, 2))
            column_ports[(i, j)] = ((A, 0), (B, 1))
            diagonals.append(((A, 2), (B, 0)))

    corner: Port = (1, 0)
    for i in range(1, a + 1):
        current: Optional[Port] = (i, 0)
        for j in range(k, 0, -1):
            if (i, j) == (1, 1):
                break
            east, west = row_ports[(i, j)]
            g.connect(current, east)
            current = west
            if current is None:
                break
        if i == 1:
            corner = current
    for j in range(1, k + 1):
        current = corner if j == 1 else column_ports[(1, j)][1]
        for i in range(2, a + 1):
            north, south = column_ports[(i, j)]
            g.connect(current, north)
            current = south
        g.connect(current, (n + 1 - j, 0))
    for ends in diagonals:
        g.connect(*ends)
    return g


def build_rectangles_graph(shape: GrassmannShape) -> PlabicGraph:
    """G_rec(k, n) in grid form, before normalization."""
    return _grid(shape).graph()


def rectangles_orientation(shape: GrassmannShape) -> Tails:
    """O_rec on the grid: every edge points from the endpoint with larger x + y.

    Rows point west, columns south and diagonals from black to white, so the
    sources are b_1..b_{n-k} and the orientation is acyclic.
    """
    g = _grid(shape)
    tails = {}
    for e, (u, v) in g.edges.items():
        su, sv = sum(g.position[u]), sum(g.position[v])
        tails[e] = u if su > sv else v
    return tails


@lru_cache(maxsize=None)
def canonical_rectangles(shape: GrassmannShape) -> Tuple[PlabicGraph, str, Tails]:
    """Normal canonical G_rec with O_rec carried along."""
    graph, encoding, tails = canonical_graph(build_rectangles_graph(shape), rectangles_orientation(shape))
    return graph, encoding, tails
