"""Checking both polytopes against each other over a whole move class."""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from rich.panel import Panel
from rich.table import Table

from algebra.minors import VanishingMinorError, sample_generic_matrix
from duality.amodel import ValuationVector, chart_order, no_polytope, span_valuations, valuation_hull
from duality.bmodel import PluckerForm, cluster_form, evaluate_oracle, q_polytope
from duality.oracle import dimension_oracle
from network.chart import NetworkChart, chart_from_path
from plabic.partitions import GrassmannShape, Partition
from plabic.search import ClassMember, ExchangeEdge, MoveClass, format_path, move_class_bfs, sample_move_class
from polytope.lattice import lattice_points
from polytope.mutation import MutationMapSpec, pl_mutate
from polytope.polytope import Coordinates, EqualityVerdict, equal_polytopes, vertices_of
from utils import console


@dataclass
class GraphResult:
    """One (graph, r) comparison.

    `lattice_points` counts Q^r, `valuations` counts val(L_r). Q^r only has to
    be integral for G_rec; elsewhere NO is compared at the level where the
    vertices of Q^r become integral.
    """

    encoding: str
    path: str
    path_length: int
    r: int
    no_vertices: int
    q_facets: int
    lattice_points: int
    valuations: int
    expected_points: int
    equal: bool
    integral: bool
    valuations_are_lattice_points: bool
    refinement: int = 1
    superpotential_agrees: Optional[bool] = None
    certificate: Optional[str] = None
    seconds: float = 0.0

    @property
    def rectangles(self) -> bool:
        return self.path_length == 0

    @property
    def passed(self) -> bool:
        return (
            self.equal
            and (self.integral or not self.rectangles)
            and self.lattice_points == self.expected_points
            and self.valuations == self.expected_points
            and self.valuations_are_lattice_points
            and self.superpotential_agrees is not False
        )

    def to_json(self) -> dict:
        return {
            "encoding": self.encoding,
            "path": self.path,
            "path_length": self.path_length,
            "r": self.r,
            "no_vertices": self.no_vertices,
            "q_facets": self.q_facets,
            "lattice_points": self.lattice_points,
            "valuations": self.valuations,
            "expected_points": self.expected_points,
            "equal": self.equal,
            "integral": self.integral,
            "valuations_are_lattice_points": self.valuations_are_lattice_points,
            "refinement": self.refinement,
            "superpotential_agrees": self.superpotential_agrees,
            "certificate": self.certificate,
        }


@dataclass
class VerificationReport:
    shape: GrassmannShape
    rs: Tuple[int, ...]
    class_size: int
    complete_class: bool
    oracle: Dict[int, int]
    results: List[GraphResult] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def succeeded(self) -> bool:
        return all(result.passed for result in self.results)

    def failures(self) -> List[GraphResult]:
        return [result for result in self.results if not result.passed]

    def to_json(self, with_timings: bool = False) -> dict:
        payload = {
            "shape": self.shape.to_json(),
            "r": list(self.rs),
            "class_size": self.class_size,
            "complete_class": self.complete_class,
            "oracle": {str(r): count for r, count in sorted(self.oracle.items())},
            "results": [result.to_json() for result in self.results],
            "succeeded": self.succeeded,
        }
        if with_timings:
            payload["timings"] = dict(self.timings)
        return payload


def _member_chart(shape: GrassmannShape, path: Sequence[Partition]) -> Tuple[NetworkChart, Coordinates]:
    chart = chart_from_path(shape, path)
    return chart, tuple(chart_order(chart))


def _reorder(points, source: Coordinates, target: Coordinates) -> Set[Tuple]:
    position = {lam: i for i, lam in enumerate(source)}
    return {tuple(p[position[lam]] for lam in target) for p in points}


@dataclass
class CovarianceResult:
    edge: ExchangeEdge
    r: int
    no_covariant: bool
    q_covariant: bool
    details: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.no_covariant and self.q_covariant


def check_mutation_covariance(edge: ExchangeEdge, move_class: MoveClass, r: int) -> CovarianceResult:
    """Lattice points on both sides of a square move must correspond under pl_mutate, for NO and for Q."""
    shape = move_class.shape
    source = move_class.members[edge.source]
    target = move_class.members[edge.target]
    source_chart, source_order = _member_chart(shape, source.path)
    target_chart, target_order = _member_chart(shape, target.path)
    spec = MutationMapSpec.from_step(source_order, edge.step)
    details = []

    def covariant(label: str, source_points, target_points, target_order) -> bool:
        mapped = _reorder(pl_mutate(source_points, spec), spec.target_coords, target_order)
        expected = {tuple(p) for p in target_points}
        if mapped != expected:
            details.append(
                f"{label}^{r}: {len(mapped - expected)} mapped points missing on the target, "
                f"{len(expected - mapped)} target points not reached"
            )
            return False
        return True

    no_ok = covariant(
        "NO",
        lattice_points(no_polytope(source_chart, r, source_order)),
        lattice_points(no_polytope(target_chart, r, target_order)),
        target_order,
    )
    q_ok = covariant(
        "Q",
        lattice_points(q_polytope(shape, source.path, r, source_order)),
        lattice_points(q_polytope(shape, target.path, r, target_order)),
        target_order,
    )
    return CovarianceResult(edge=edge, r=r, no_covariant=no_ok, q_covariant=q_ok, details=details)


class DualityVerifier:
    """Runs the A-model/B-model comparison over the move class of G_rec.

    Each class member is an independent task; tasks run in a thread pool and
    the report is sorted by move path length and encoding afterwards.
    """

    def __init__(
        self,
        shape: GrassmannShape,
        rs: Sequence[int] = (1,),
        budget: int = 10000,
        workers: int = 4,
        samples: Optional[int] = None,
        matrices: int = 0,
        seed: int = 0,
        max_refinement: int = 2,
        verbose: bool = False,
    ):
        if not rs or min(rs) < 1:
            raise ValueError(f"Dilation factors must be positive, got {list(rs)}")
        self.shape = shape
        self.rs = tuple(sorted(set(rs)))
        self.budget = budget
        self.workers = max(1, workers)
        self.samples = samples
        self.matrices = matrices
        self.seed = seed
        self.max_refinement = max_refinement
        self.verbose = verbose
        self.report: Optional[VerificationReport] = None

    def enumerate_class(self) -> MoveClass:
        if self.samples:
            rng = np.random.default_rng(self.seed)
            return sample_move_class(count=self.samples, rng=rng, shape=self.shape, verbose=self.verbose)
        return move_class_bfs(budget=self.budget, shape=self.shape, verbose=self.verbose)

    def _superpotential_agrees(self, member: ClassMember) -> Optional[bool]:
        if not self.matrices:
            return None
        rng = np.random.default_rng(self.seed)
        reference = PluckerForm(shape=self.shape)
        form = cluster_form(self.shape, member.path)
        subsets = sorted(set(reference.required_minors()) | set(form.required_minors()))
        for _ in range(self.matrices):
            M = sample_generic_matrix(self.shape, rng, subsets)
            q_val = int(rng.integers(0, 6))
            try:
                if evaluate_oracle(M, q_val, reference) != evaluate_oracle(M, q_val, form):
                    return False
            except VanishingMinorError:
                continue
        return True

    def verify_member(self, member: ClassMember, oracle: Dict[int, int]) -> List[GraphResult]:
        chart, order = _member_chart(self.shape, member.path)
        agrees = self._superpotential_agrees(member)
        levels: Dict[int, List[ValuationVector]] = {}

        def valuations(level: int) -> List[ValuationVector]:
            if level not in levels:
                levels[level] = span_valuations(chart, level, order)
            return levels[level]

        results = []
        for r in self.rs:
            start = time.time()
            Q = q_polytope(self.shape, member.path, r, order)
            Q_vertices = vertices_of(Q)
            refinement = Q_vertices.denominator()
            q_points = lattice_points(Q)
            points = valuations(r)
            if refinement > self.max_refinement:
                NO = valuation_hull(order, points)
                verdict = EqualityVerdict(
                    equal=False,
                    certificate=f"Q^{r} has vertex denominator {refinement}, above the refinement limit {self.max_refinement}",
                )
            else:
                NO = valuation_hull(order, valuations(r * refinement), refinement)
                verdict = equal_polytopes(NO, Q)
            results.append(
                GraphResult(
                    encoding=member.encoding,
                    path=format_path(member.path),
                    path_length=len(member.path),
                    r=r,
                    no_vertices=len(NO.points),
                    q_facets=len(Q.inequalities),
                    lattice_points=len(q_points),
                    valuations=len(points),
                    expected_points=oracle[r],
                    equal=verdict.equal,
                    integral=Q_vertices.is_integral(),
                    valuations_are_lattice_points={tuple(p) for p in q_points} == set(points),
                    refinement=refinement,
                    superpotential_agrees=agrees,
                    certificate=verdict.certificate,
                    seconds=time.time() - start,
                )
            )
        if self.verbose:
            status = "[green]ok[/]" if all(res.passed for res in results) else "[bold red]FAILED[/]"
            console.print(f"  path [cyan]{format_path(member.path) or '(G_rec)'}[/] {status}")
        return results

    def run(self) -> VerificationReport:
        start = time.time()
        console.print(f"[bold blue]Verifying {self.shape} for r in {list(self.rs)}[/]")
        oracle = {r: dimension_oracle(self.shape, r) for r in self.rs}
        if self.verbose:
            console.print(f"Expected lattice points: {oracle}")
        move_class = self.enumerate_class()
        enumerated = time.time()
        console.print(f"[bold blue]{len(move_class)} graphs in the move class[/]")

        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = [pool.submit(self.verify_member, member, oracle) for member in move_class]
            results = [result for future in futures for result in future.result()]
        results.sort(key=lambda res: (res.path_length, res.encoding, res.r))

        self.report = VerificationReport(
            shape=self.shape,
            rs=self.rs,
            class_size=len(move_class),
            complete_class=move_class.complete,
            oracle=oracle,
            results=results,
            timings={"enumerate": enumerated - start, "verify": time.time() - enumerated},
        )
        if self.report.succeeded:
            console.print("[bold green]Every NO polytope equals its Q polytope[/]")
        else:
            console.print(f"[bold red]{len(self.report.failures())} checks failed[/]")
        return self.report

    def display_results(self):
        """Show the per-graph results in a table and each failure in a panel."""
        if self.report is None:
            raise RuntimeError("Call run() before display_results()")
        console.print("\n[bold]===== FINAL RESULTS =====", style="white on blue")
        table = Table(title=f"{self.shape} duality check", show_header=True, header_style="bold")
        table.add_column("Path", style="cyan")
        table.add_column("r", style="magenta")
        table.add_column("NO vertices")
        table.add_column("Q facets")
        table.add_column("Lattice points")
        table.add_column("val(L_r)")
        table.add_column("Level")
        table.add_column("Status", style="yellow")
        for res in self.report.results:
            status = "[green]Equal[/]" if res.passed else "[red]Failed[/]"
            table.add_row(
                res.path or "(G_rec)",
                str(res.r),
                str(res.no_vertices),
                str(res.q_facets),
                f"{res.lattice_points}/{res.expected_points}",
                str(res.valuations),
                str(res.r * res.refinement),
                status,
            )
        console.print(table)
        for res in self.report.failures():
            body = res.certificate or "polytopes agree but a count, valuation, integrality or oracle check failed"
            console.print(Panel(f"[white]{body}[/]", title=f"[bold red]{res.path or '(G_rec)'} r={res.r}[/]"))
