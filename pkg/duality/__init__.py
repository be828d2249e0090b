from .amodel import (
    PolytopeMismatchError,
    ValuationTable,
    check_strong_minimality,
    f_coordinates,
    f_inequalities,
    from_f_coordinates,
    monomial_polytope,
    no_polytope,
    satisfies_tableau_conditions,
    span_valuations,
    tableau_arrays,
    val,
    valuation_table,
)
from .bmodel import (
    LaurentForm,
    PluckerForm,
    SuperpotentialError,
    TropicalInequality,
    evaluate_oracle,
    q_polytope,
    rectangle_inequalities,
    superpotential_in_cluster,
    superpotential_plucker,
    superpotential_rectangles,
    tropical_inequalities,
    tropicalize,
)
from .oracle import dimension_oracle
from .verify import CovarianceResult, DualityVerifier, VerificationReport, check_mutation_covariance
