from .graph import Color, Dart, FaceLabeling, PlabicGraph, PlabicGraphError, Trip
from .moves import (
    IllegalMoveError,
    MoveDescriptor,
    MoveKind,
    MutationStep,
    apply_move,
    canonical_form,
    canonical_graph,
    check_reduced_type,
    normalize,
    square_faces,
    square_move,
)
from .partitions import (
    GrassmannShape,
    Partition,
    frozen_labels,
    partition_from_south,
    partition_from_west,
    south_subset,
    west_subset,
)
from .rectangles import build_rectangles_graph, canonical_rectangles, rectangles_orientation
from .search import (
    BudgetExhaustedError,
    ClassMember,
    MoveClass,
    exchange_edges,
    find_member,
    format_path,
    move_class_bfs,
    parse_path,
    replay_path,
    sample_move_class,
)
