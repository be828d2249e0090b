import pytest

from plabic.graph import Color, PlabicGraph, PlabicGraphError
from plabic.moves import (
    GraphDraft,
    IllegalMoveError,
    MoveDescriptor,
    MoveKind,
    apply_move,
    canonical_form,
    check_reduced_type,
    is_square_face,
    square_faces,
    square_move,
)
from plabic.partitions import GrassmannShape, Partition
from plabic.rectangles import build_rectangles_graph, canonical_rectangles
from plabic.search import (
    exchange_edges,
    find_member,
    format_path,
    move_class_bfs,
    parse_path,
    replay_path,
    sample_move_class,
)


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 5), (3, 6)])
def test_rectangles_graph_is_reduced_with_rectangle_labels(k, n):
    shape = GrassmannShape(k=k, n=n)
    graph = build_rectangles_graph(shape)
    graph.validate()
    assert graph.trip_permutation() == shape.trip_permutation()
    assert graph.labeling.label_set() == frozenset(shape.rectangles()) | {Partition()}
    assert check_reduced_type(graph)


def test_each_square_move_replaces_one_label(class25):
    for member in class25:
        labels = member.graph.labeling.label_set()
        for label in square_faces(member.graph):
            result = square_move(member.graph, label)
            after = result.graph.labeling.label_set()
            assert labels - after == {label}
            assert after - labels == {result.step.replacement}
            assert result.encoding in class25


def test_square_move_twice_returns_to_the_start(gr35):
    graph, encoding, _ = canonical_rectangles(gr35)
    label = square_faces(graph)[0]
    there = square_move(graph, label)
    back = square_move(there.graph, there.step.replacement)
    assert back.encoding == encoding
    assert back.step.replacement == label
    assert back.step.mutated == there.step.replacement


def test_square_move_on_a_non_square_face(gr35):
    graph, _, _ = canonical_rectangles(gr35)
    with pytest.raises(IllegalMoveError):
        square_move(graph, Partition.rectangle(2, 3))
    with pytest.raises(IllegalMoveError):
        square_move(graph, Partition((3, 1)))


@pytest.mark.parametrize("fixture,size", [("class24", 2), ("class25", 5), ("class35", 5)])
def test_move_class_sizes(request, fixture, size):
    move_class = request.getfixturevalue(fixture)
    assert move_class.complete
    assert len(move_class) == size
    for member in move_class:
        assert check_reduced_type(member.graph)
        assert replay_path(move_class.shape, member.path).encoding == member.encoding


def test_exchange_graph_of_gr25_is_a_pentagon(class25):
    edges = exchange_edges(class25)
    assert len(edges) == 5
    degree = {}
    for edge in edges:
        degree[edge.source] = degree.get(edge.source, 0) + 1
        degree[edge.target] = degree.get(edge.target, 0) + 1
    assert set(degree.values()) == {2}


def test_parallel_edge_is_not_reduced(gr24):
    graph = build_rectangles_graph(gr24)
    internal = next(
        e for e, (u, v) in graph.edges.items() if not graph.is_boundary(u) and not graph.is_boundary(v)
    )
    verdict = check_reduced_type(graph.with_parallel_edge(internal))
    assert not verdict
    assert verdict.diagnostics


def test_json_round_trip_keeps_the_canonical_form(class25):
    for member in class25:
        copy = PlabicGraph.from_json(member.graph.to_json())
        assert canonical_form(copy) == member.encoding
        assert copy.labeling.label_set() == member.graph.labeling.label_set()


def test_dot_export_is_deterministic(gr35):
    first = build_rectangles_graph(gr35).to_dot()
    second = build_rectangles_graph(gr35).to_dot()
    assert first == second
    assert first.startswith("graph plabic {")
    assert "fillcolor=black" in first and "fillcolor=white" in first


def test_invalid_graphs_are_rejected(gr24):
    graph = build_rectangles_graph(gr24)
    data = graph.to_json()
    data["boundary"] = data["boundary"][:-1]
    with pytest.raises(PlabicGraphError):
        PlabicGraph.from_json(data)
    colors = dict(graph.colors)
    colors[1] = Color.WHITE
    with pytest.raises(PlabicGraphError):
        PlabicGraph(gr24, colors, graph.edges, graph.rotation)


def test_find_member_matches_replayed_graphs(class25, gr24):
    for member in class25:
        graph = replay_path(class25.shape, member.path).graph
        assert find_member(class25, graph).encoding == member.encoding
    with pytest.raises(KeyError):
        find_member(class25, build_rectangles_graph(gr24))


def test_move_paths_parse_and_format():
    path = parse_path("2;1,1")
    assert path == (Partition((2,)), Partition((1, 1)))
    assert format_path(path) == "2;1,1"
    assert parse_path("  ") == ()


def test_random_walks_reach_the_whole_small_class(gr25, rng):
    sampled = sample_move_class(count=5, rng=rng, shape=gr25)
    assert len(sampled) == 5


def test_degree_two_insertion_is_undone_by_removal(gr35):
    graph = build_rectangles_graph(gr35)
    edge = min(graph.edges)
    inserted = apply_move(graph, MoveDescriptor(kind=MoveKind.INSERT, location=edge, color=Color.BLACK))
    new_vertex = max(inserted.colors)
    assert inserted.degree(new_vertex) == 2
    assert inserted.trip_permutation() == graph.trip_permutation()
    assert canonical_form(inserted) == canonical_form(graph)
    removed = apply_move(inserted, MoveDescriptor(kind=MoveKind.REMOVE, location=new_vertex))
    assert canonical_form(removed) == canonical_form(graph)
    assert len(removed.edges) == len(graph.edges)


def test_uncontract_then_contract(gr35):
    graph = build_rectangles_graph(gr35)
    v = next(v for v in graph.internal_vertices() if graph.degree(v) >= 3)
    split = apply_move(graph, MoveDescriptor(kind=MoveKind.UNCONTRACT, location=v, start=0, length=2))
    new_edge = max(split.edges)
    assert split.edges[new_edge] == (v, max(split.colors))
    assert split.trip_permutation() == graph.trip_permutation()
    assert canonical_form(split) == canonical_form(graph)
    merged = apply_move(split, MoveDescriptor(kind=MoveKind.CONTRACT, location=new_edge))
    assert canonical_form(merged) == canonical_form(graph)
    assert merged.labeling.label_set() == graph.labeling.label_set()


def test_illegal_local_moves(gr35):
    graph = build_rectangles_graph(gr35)
    mixed = next(
        e
        for e, (u, v) in graph.edges.items()
        if not graph.is_boundary(u) and not graph.is_boundary(v) and graph.colors[u] != graph.colors[v]
    )
    with pytest.raises(IllegalMoveError):
        apply_move(graph, MoveDescriptor(kind=MoveKind.CONTRACT, location=mixed))
    with pytest.raises(IllegalMoveError):
        apply_move(graph, MoveDescriptor(kind=MoveKind.SQUARE, location=graph.outer_face))
    trivalent = next((v for v in graph.internal_vertices() if graph.degree(v) == 3), None)
    if trivalent is not None:
        with pytest.raises(IllegalMoveError):
            apply_move(graph, MoveDescriptor(kind=MoveKind.REMOVE, location=trivalent))


def _split_to_trivalent_square(shape):
    """G_rec with the vertices around one square face uncontracted to degree three."""
    graph, _, _ = canonical_rectangles(shape)
    face = next(f for f in graph.interior_faces() if is_square_face(graph, f))
    ring = graph.face_vertices(face)
    on_face = {e for e, _ in graph.faces[face]}
    draft = GraphDraft(graph)
    for v in ring:
        rot = draft.rotation[v]
        if len(rot) == 3:
            continue
        a, b = sorted(i for i, e in enumerate(rot) if e in on_face)
        start = b + 1 if b == a + 1 else a + 1
        draft.uncontract(v, start % len(rot), len(rot) - 2)
    split = draft.freeze()
    square = next(f for f in split.interior_faces() if set(split.face_vertices(f)) == set(ring))
    return graph, face, split, square


@pytest.mark.parametrize("k,n", [(2, 4), (3, 5)])
def test_square_move_on_a_trivalent_square_flips_its_colors(k, n):
    graph, face, split, square = _split_to_trivalent_square(GrassmannShape(k=k, n=n))
    assert canonical_form(split) == canonical_form(graph)
    assert is_square_face(split, square, trivalent=True)
    moved = apply_move(split, MoveDescriptor(kind=MoveKind.SQUARE, location=square))
    ring = split.face_vertices(square)
    assert all(moved.colors[v] == split.colors[v].flipped() for v in ring)
    assert moved.trip_permutation() == split.trip_permutation()
    assert check_reduced_type(moved)
    expected = square_move(graph, graph.labeling.labels[face], graph.labeling)
    assert canonical_form(moved) == expected.encoding


def test_search_from_another_member_keeps_paths_from_g_rec(class25, gr25, rng):
    member = max(class25, key=lambda m: len(m.path))
    seeded = move_class_bfs(seed=member.graph)
    assert seeded.complete
    assert set(seeded.members) == set(class25.members)
    assert seeded.members[member.encoding].path == member.path
    for found in seeded:
        assert replay_path(gr25, found.path).encoding == found.encoding
    walked = sample_move_class(seed=member.graph, count=5, rng=rng)
    for found in walked:
        assert replay_path(gr25, found.path).encoding == found.encoding


def test_search_rejects_bad_seeds_and_budgets(gr24):
    graph = build_rectangles_graph(gr24)
    internal = next(
        e for e, (u, v) in graph.edges.items() if not graph.is_boundary(u) and not graph.is_boundary(v)
    )
    with pytest.raises(PlabicGraphError):
        move_class_bfs(seed=graph.with_parallel_edge(internal))
    with pytest.raises(PlabicGraphError):
        sample_move_class(seed=graph.with_parallel_edge(internal), count=2)
    with pytest.raises(ValueError):
        move_class_bfs(shape=gr24, budget=0)
