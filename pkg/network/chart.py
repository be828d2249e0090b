"""Network charts: the Plucker coordinates of a plabic graph as flow polynomials."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence

import numpy as np

from algebra.laurent import LaurentPoly
from algebra.minors import check_three_term_relations
from network.flows import plucker_polynomial
from network.orientation import PerfectOrientation, acyclic_orientation
from plabic.graph import PlabicGraph
from plabic.partitions import GrassmannShape, IndexSubset, Partition
from plabic.search import MovePath, replay_path


@dataclass
class NetworkChart:
    orientation: PerfectOrientation
    path: MovePath = ()
    _cache: Dict[IndexSubset, LaurentPoly] = field(default_factory=dict, repr=False)

    @property
    def graph(self) -> PlabicGraph:
        return self.orientation.graph

    @property
    def shape(self) -> GrassmannShape:
        return self.graph.shape

    @property
    def variables(self) -> List[Partition]:
        return self.graph.labeling.partitions()

    def plucker(self, J: Sequence[int]) -> LaurentPoly:
        J = tuple(sorted(J))
        if J not in self._cache:
            self._cache[J] = plucker_polynomial(self.orientation, J)
        return self._cache[J]

    def plucker_polynomials(self) -> Dict[IndexSubset, LaurentPoly]:
        return {J: self.plucker(J) for J in self.shape.south_subsets()}

    def evaluate(self, values: Mapping[Partition, Fraction]) -> Dict[IndexSubset, Fraction]:
        return {J: f.evaluate(values) for J, f in self.plucker_polynomials().items()}

    def random_positive_point(self, rng: np.random.Generator, high: int = 9) -> Dict[Partition, Fraction]:
        return {
            lam: Fraction(int(rng.integers(1, high + 1)), int(rng.integers(1, high + 1))) for lam in self.variables
        }

    def check_positivity(self, rng: np.random.Generator, samples: int = 50) -> List[str]:
        """Evaluate at random positive rational points; report nonpositive values
        and failed three-term relations."""
        problems = []
        for sample in range(samples):
            values = self.evaluate(self.random_positive_point(rng))
            bad = [J for J, value in values.items() if value <= 0]
            if bad:
                problems.append(f"sample {sample}: nonpositive Plucker values at {bad}")
            failures = check_three_term_relations(values, self.shape.rows, self.shape.n)
            if failures:
                problems.append(f"sample {sample}: {len(failures)} three-term relations fail, first {failures[0]}")
        return problems


def chart_from_path(shape: GrassmannShape, path: Sequence[Partition] = (), verbose: bool = False) -> NetworkChart:
    replay = replay_path(shape, path)
    orientation = acyclic_orientation(replay.graph, path, verbose=verbose)
    return NetworkChart(orientation=orientation, path=tuple(path))


def plucker_table(chart: NetworkChart) -> Dict[str, str]:
    return {"".join(str(i) for i in J): f.to_text("x") for J, f in chart.plucker_polynomials().items()}
