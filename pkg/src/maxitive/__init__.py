"""Maxitive measure theory on finite spaces, with every theorem executable.

The pieces: finite measurable spaces as atom bitmasks (spaces), ordered
semigroup operations with residuals (semigroup), maxitive measures and their
classification (measures), the idempotent integral (integral), sigma-additive
companions (additive), density extraction (density), possibility spaces and
conditioning (possibility), Frechet sup-measure simulation (supmeasure),
seeded generators (sampling), JSON round-tripping (modelio), the invariant
registry (suites), and a command line (cli).
"""

from .additive import (
    AdditiveMeasure,
    choquet_integral,
    classical_density,
    implication_chain,
    lebesgue_integral,
)
from .density import (
    AbsContReport,
    ae_equal,
    density_from_associated,
    envelope_density,
    envelope_measure,
    odot_abs_continuous,
    rn_density,
    verify_density,
)
from .errors import (
    ExplicitBudgetExceeded,
    MaxitiveError,
    NoDensity,
    NonExactOperation,
    NotAbsolutelyContinuous,
    NotOdotAbsolutelyContinuous,
    NotProbability,
    OracleMismatch,
)
from .integral import (
    IntegralResult,
    atom_integral,
    density_measure,
    gerritse_integral,
    idempotent_integral,
    ky_fan_distance,
    sugeno_norm,
)
from .measures import (
    MaxitiveMeasure,
    PropertyReport,
    atom_decomposition,
    choquet_alternating,
    classify,
    counting_delta,
    delta_measure,
    disjoint_variation,
    essential_supremum,
    essential_witness,
    esssup_measure,
    finiteness_suite,
    negligible,
    total_variation,
)
from .possibility import (
    Law,
    PossibilitySpace,
    SubAlgebra,
    conditional,
    conditional_suite,
    expectation,
    law,
    power_mean_limit,
)
from .sampling import rng_for
from .semigroup import (
    MAX,
    MIN,
    PLUS,
    TIMES,
    SemigroupOp,
    TableOp,
    by_name,
    builtin_names,
    default_grid,
    verify_axioms,
)
from .spaces import (
    INF,
    MeasurableFn,
    MeasurableSet,
    SetFunction,
    Space,
    build_space,
    close,
)
from .supmeasure import (
    SupMeasureSample,
    compare_modes_check,
    extremal_integral,
    frechet_marginal_check,
    sample_matrix,
    sample_supmeasure,
    scale_recovery_check,
    tail_ratio_check,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveMeasure",
    "choquet_integral",
    "classical_density",
    "implication_chain",
    "lebesgue_integral",
    "AbsContReport",
    "ae_equal",
    "density_from_associated",
    "envelope_density",
    "envelope_measure",
    "odot_abs_continuous",
    "rn_density",
    "verify_density",
    "ExplicitBudgetExceeded",
    "MaxitiveError",
    "NoDensity",
    "NonExactOperation",
    "NotAbsolutelyContinuous",
    "NotOdotAbsolutelyContinuous",
    "NotProbability",
    "OracleMismatch",
    "IntegralResult",
    "atom_integral",
    "density_measure",
    "gerritse_integral",
    "idempotent_integral",
    "ky_fan_distance",
    "sugeno_norm",
    "MaxitiveMeasure",
    "PropertyReport",
    "atom_decomposition",
    "choquet_alternating",
    "classify",
    "counting_delta",
    "delta_measure",
    "disjoint_variation",
    "essential_supremum",
    "essential_witness",
    "esssup_measure",
    "finiteness_suite",
    "negligible",
    "total_variation",
    "Law",
    "PossibilitySpace",
    "SubAlgebra",
    "conditional",
    "conditional_suite",
    "expectation",
    "law",
    "power_mean_limit",
    "rng_for",
    "MAX",
    "MIN",
    "PLUS",
    "TIMES",
    "SemigroupOp",
    "TableOp",
    "by_name",
    "builtin_names",
    "default_grid",
    "verify_axioms",
    "INF",
    "MeasurableFn",
    "MeasurableSet",
    "SetFunction",
    "Space",
    "build_space",
    "close",
    "SupMeasureSample",
    "compare_modes_check",
    "extremal_integral",
    "frechet_marginal_check",
    "sample_matrix",
    "sample_supmeasure",
    "scale_recovery_check",
    "tail_ratio_check",
    "__version__",
]
