from fractions import Fraction

import pytest

from duality.amodel import monomial_points, valuation_table
from duality.bmodel import q_polytope
from duality.verify import DualityVerifier, check_mutation_covariance
from network.chart import chart_from_path
from plabic.partitions import GrassmannShape
from plabic.search import ClassMember, exchange_edges, parse_path, replay_path
from polytope.polytope import vertices_of

# A Gr(3,6) member whose Q^1 has a half-integral vertex.
HALF_INTEGRAL_PATH_36 = "2;2,2;1,1;3,2;1;3,3,1;3,2,1;3,2;3,2,2;3,1;3,3,2;3,1,1;2,2,1;3,3,1;2,1,1"


def test_gr24_verification_report(gr24):
    verifier = DualityVerifier(shape=gr24, rs=(3, 1, 2, 1), workers=2, matrices=5)
    report = verifier.run()
    assert report.succeeded
    assert report.rs == (1, 2, 3)
    assert report.class_size == 2
    assert report.complete_class
    assert report.oracle == {1: 6, 2: 20, 3: 50}
    assert len(report.results) == 6
    for result in report.results:
        assert result.equal and result.integral
        assert result.refinement == 1
        assert result.lattice_points == result.valuations == result.expected_points
        assert result.valuations_are_lattice_points
        assert result.superpotential_agrees is True
    assert [res.path_length for res in report.results] == sorted(res.path_length for res in report.results)
    payload = report.to_json()
    assert payload["succeeded"] is True
    assert payload["oracle"] == {"1": 6, "2": 20, "3": 50}
    assert "timings" not in payload
    assert set(report.to_json(with_timings=True)["timings"]) == {"enumerate", "verify"}
    verifier.display_results()


@pytest.mark.parametrize("k,n,size", [(2, 4, 2), (2, 5, 5), (3, 5, 5)])
def test_full_sweep_of_small_classes(k, n, size):
    report = DualityVerifier(shape=GrassmannShape(k=k, n=n), rs=(1, 2, 3), workers=4, matrices=100).run()
    assert report.succeeded, [res.certificate for res in report.failures()]
    assert report.complete_class
    assert report.class_size == size
    assert len(report.results) == 3 * size
    assert all(res.superpotential_agrees is True for res in report.results)


def test_gr35_class_passes_without_matrices(gr35):
    report = DualityVerifier(shape=gr35, rs=(1,), workers=1).run()
    assert report.succeeded
    assert report.class_size == 5
    assert all(res.superpotential_agrees is None for res in report.results)
    assert all(res.lattice_points == 10 for res in report.results)


def test_results_must_be_requested_first(gr24):
    verifier = DualityVerifier(shape=gr24)
    with pytest.raises(RuntimeError):
        verifier.display_results()
    with pytest.raises(ValueError):
        DualityVerifier(shape=gr24, rs=(0,))


@pytest.mark.parametrize("r", [1, 2])
def test_square_moves_map_lattice_points_by_tropical_mutation(class25, r):
    edges = exchange_edges(class25)
    assert edges
    for edge in edges:
        result = check_mutation_covariance(edge, class25, r)
        assert result.passed, result.details


def test_sampled_members_are_reported(gr25):
    report = DualityVerifier(shape=gr25, samples=3, seed=1).run()
    assert report.class_size >= 3
    assert not report.complete_class
    assert report.succeeded


def test_half_integral_member_of_gr36():
    shape = GrassmannShape(k=3, n=6)
    path = parse_path(HALF_INTEGRAL_PATH_36)
    replay = replay_path(shape, path)
    member = ClassMember(encoding=replay.encoding, graph=replay.graph, path=path)
    verifier = DualityVerifier(shape=shape, rs=(1, 2))
    first, second = verifier.verify_member(member, {1: 20, 2: 175})

    assert first.passed, first.certificate
    assert not first.integral
    assert first.refinement == 2
    assert first.valuations == first.lattice_points == 20
    half = tuple(Fraction(x) for x in ("3/2", "3/2", "1", "1/2", "1", "1/2", "1/2", "1/2", "1/2"))
    chart = chart_from_path(shape, path)
    table = valuation_table(chart)
    assert half in vertices_of(q_polytope(shape, path, 1, table.order)).points

    assert second.passed, second.certificate
    assert second.valuations == second.lattice_points == 175
    assert second.valuations_are_lattice_points
    assert (3, 3, 2, 1, 2, 1, 1, 1, 1) not in monomial_points(table, 2)


def test_refinement_limit_is_reported():
    shape = GrassmannShape(k=3, n=6)
    path = parse_path(HALF_INTEGRAL_PATH_36)
    replay = replay_path(shape, path)
    member = ClassMember(encoding=replay.encoding, graph=replay.graph, path=path)
    (result,) = DualityVerifier(shape=shape, rs=(1,), max_refinement=1).verify_member(member, {1: 20})
    assert not result.passed
    assert "refinement limit" in result.certificate


@pytest.mark.slow
def test_gr36_sample():
    report = DualityVerifier(shape=GrassmannShape(k=3, n=6), rs=(1, 2), samples=25, workers=4, matrices=100).run()
    assert report.class_size >= 25
    assert report.succeeded, [res.certificate for res in report.failures()]
    assert all(res.expected_points == {1: 20, 2: 175}[res.r] for res in report.results)
