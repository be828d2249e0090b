from .laurent import (
    Q,
    InexactDivisionError,
    LaurentPoly,
    default_order,
    exact_div,
    lex_min_term,
    strongly_minimal_term,
    substitute,
)
from .minors import (
    VanishingMinorError,
    check_three_term_relations,
    minor,
    plucker_vector,
    sample_generic_matrix,
)
