"""Exploring the square-move class of G_rec.

Every member is stored in canonical form together with the move path that
reaches it from the canonical rectangles graph. Paths are sequences of face
labels; each label names the face that gets mutated in the current graph.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from plabic.graph import PlabicGraph, PlabicGraphError
from plabic.moves import MutationStep, Tails, canonical_form, check_reduced_type, square_faces, square_move
from plabic.partitions import GrassmannShape, Partition
from plabic.rectangles import canonical_rectangles
from utils import console

MovePath = Tuple[Partition, ...]
DEFAULT_BUDGET = 10000


@dataclass
class ClassMember:
    encoding: str
    graph: PlabicGraph
    path: MovePath
    steps: Tuple[MutationStep, ...] = ()

    @property
    def face_labels(self) -> List[Partition]:
        return self.graph.labeling.partitions()


@dataclass
class MoveClass:
    shape: GrassmannShape
    members: Dict[str, ClassMember] = field(default_factory=dict)
    complete: bool = False

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[ClassMember]:
        return iter(sorted(self.members.values(), key=lambda m: (len(m.path), m.encoding)))

    def __contains__(self, encoding: str) -> bool:
        return encoding in self.members

    def add(self, member: ClassMember) -> bool:
        if member.encoding in self.members:
            return False
        self.members[member.encoding] = member
        return True


class BudgetExhaustedError(RuntimeError):
    """Raised when a class search hits its budget; `partial` holds what was found."""

    def __init__(self, message: str, partial: MoveClass):
        super().__init__(message)
        self.partial = partial


@dataclass
class ExchangeEdge:
    source: str
    label: Partition
    target: str
    step: MutationStep


@dataclass
class Replay:
    graph: PlabicGraph
    encoding: str
    steps: Tuple[MutationStep, ...]
    tails: Optional[Tails]


def parse_path(text: str) -> MovePath:
    """'2;1,1' means a square move at (2), then at (1,1)."""
    text = text.strip()
    if not text:
        return ()
    return tuple(Partition.parse(piece) for piece in text.split(";"))


def format_path(path: Sequence[Partition]) -> str:
    return ";".join(lam.name for lam in path)


def _rectangles_member(shape: GrassmannShape) -> ClassMember:
    graph, encoding, _ = canonical_rectangles(shape)
    return ClassMember(encoding=encoding, graph=graph, path=())


def _breadth_first(
    root: ClassMember, budget: int, verbose: bool = False, stop_at: Optional[str] = None
) -> MoveClass:
    """Square-move BFS from `root`; stops early once `stop_at` has been reached."""
    shape = root.graph.shape
    found = MoveClass(shape=shape)
    found.add(root)
    frontier = [root]
    level = 0
    while frontier:
        if verbose:
            console.print(f"[bold blue]{shape} level {level}:[/] {len(frontier)} graphs, {len(found)} total")
        next_frontier = []
        for member in sorted(frontier, key=lambda m: m.encoding):
            labeling = member.graph.labeling
            for label in square_faces(member.graph):
                result = square_move(member.graph, label, labeling)
                child = ClassMember(
                    encoding=result.encoding,
                    graph=result.graph,
                    path=member.path + (label,),
                    steps=member.steps + (result.step,),
                )
                if child.encoding in found:
                    continue
                if len(found) >= budget:
                    raise BudgetExhaustedError(
                        f"Move class of {shape} exceeds the budget of {budget} graphs", partial=found
                    )
                found.add(child)
                if child.encoding == stop_at:
                    return found
                next_frontier.append(child)
        frontier = next_frontier
        level += 1
    found.complete = True
    return found


def _seed_member(seed: Optional[PlabicGraph], shape: GrassmannShape, budget: int) -> ClassMember:
    """The class member for `seed`, with its path from G_rec.

    Raises:
        PlabicGraphError: the seed is not reduced of type pi_{k,n}, or it is
            not reachable from G_rec by square moves.
    """
    root = _rectangles_member(shape)
    if seed is None:
        return root
    verdict = check_reduced_type(seed)
    if not verdict.reduced:
        raise PlabicGraphError(f"Seed graph is not reduced: {'; '.join(verdict.diagnostics)}")
    target = canonical_form(seed)
    if target == root.encoding:
        return root
    reached = _breadth_first(root, budget, stop_at=target)
    if target not in reached:
        raise PlabicGraphError(f"Seed graph is not in the square-move class of the rectangles graph of {shape}")
    return reached.members[target]


def move_class_bfs(
    seed: Optional[PlabicGraph] = None,
    budget: int = DEFAULT_BUDGET,
    shape: Optional[GrassmannShape] = None,
    verbose: bool = False,
) -> MoveClass:
    """Breadth-first search over square moves between canonical graphs.

    Each level is expanded in encoding order and faces in label order, so the
    recorded paths do not depend on scheduling. Paths always start at G_rec:
    a seed is first located in the class and the search continues from there.

    Args:
        seed: Starting graph; defaults to G_rec of `shape`.
        budget: Maximum number of canonical graphs to collect.
        shape: Needed when no seed is given.
        verbose: Print progress per level.

    Returns:
        The move class, flagged complete.
    """
    shape = seed.shape if seed is not None else shape
    if shape is None:
        raise ValueError("Either a seed graph or a shape is required")
    if budget < 1:
        raise ValueError(f"The budget must be positive, got {budget}")
    found = _breadth_first(_seed_member(seed, shape, budget), budget, verbose)
    if verbose:
        console.print(f"[bold green]{shape}: {len(found)} canonical graphs[/]")
    return found


def sample_move_class(
    seed: Optional[PlabicGraph] = None,
    count: int = 25,
    rng: Optional[np.random.Generator] = None,
    max_steps: int = 5000,
    shape: Optional[GrassmannShape] = None,
    verbose: bool = False,
) -> MoveClass:
    """Collect at least `count` distinct class members by random square-move walks.

    A walk that returns to a known graph continues from that graph's stored path,
    so every member keeps the first path that reached it.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    shape = seed.shape if seed is not None else shape
    if shape is None:
        raise ValueError("Either a seed graph or a shape is required")
    current = _seed_member(seed, shape, DEFAULT_BUDGET)
    found = MoveClass(shape=shape)
    found.add(current)
    for step in range(max_steps):
        if len(found) >= count:
            break
        labels = square_faces(current.graph)
        if not labels:
            break
        label = labels[int(rng.integers(len(labels)))]
        result = square_move(current.graph, label, current.graph.labeling)
        encoding = result.encoding
        if encoding in found:
            current = found.members[encoding]
            continue
        current = ClassMember(
            encoding=encoding,
            graph=result.graph,
            path=current.path + (label,),
            steps=current.steps + (result.step,),
        )
        found.add(current)
        if verbose:
            console.print(f"[bold blue]walk step {step}:[/] {len(found)} distinct graphs")
    if len(found) < count:
        raise BudgetExhaustedError(
            f"Random walks found {len(found)} of {count} requested graphs of {shape}", partial=found
        )
    return found


def exchange_edges(move_class: MoveClass) -> List[ExchangeEdge]:
    """Square-move edges between members, each undirected edge listed once."""
    edges = []
    for member in move_class:
        labeling = member.graph.labeling
        for label in square_faces(member.graph):
            result = square_move(member.graph, label, labeling)
            target = result.encoding
            if target in move_class and member.encoding < target:
                edges.append(ExchangeEdge(source=member.encoding, label=label, target=target, step=result.step))
    return edges


def replay_path(shape: GrassmannShape, path: Sequence[Partition], with_orientation: bool = False) -> Replay:
    """Re-apply a move path from the canonical rectangles graph.

    With `with_orientation`, O_rec is transported along the path; `tails` comes
    back as None once a move has no acyclic local completion.
    """
    graph, encoding, rec_tails = canonical_rectangles(shape)
    tails = dict(rec_tails) if with_orientation else None
    steps = []
    for label in path:
        result = square_move(graph, label, graph.labeling, tails)
        graph, tails = result.graph, result.tails
        steps.append(result.step)
        encoding = result.encoding
    return Replay(graph=graph, encoding=encoding, steps=tuple(steps), tails=tails)


def find_member(move_class: MoveClass, graph: PlabicGraph) -> ClassMember:
    """Match an arbitrary graph to a class member through its canonical form."""
    encoding = canonical_form(graph)
    try:
        return move_class.members[encoding]
    except KeyError:
        raise KeyError(f"{graph} is not a member of the {move_class.shape} move class") from None
