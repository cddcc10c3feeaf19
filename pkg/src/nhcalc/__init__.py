"""Functional calculus for smooth, non-holomorphic functions of square complex matrices."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainError,
    InadmissibleOrderError,
    InputError,
    NHCalcError,
    NotDiagonalizableError,
    NumericalError,
)
from .wirtinger import (  # noqa: E402
    WirtingerFunction,
    abs_fn,
    arg_fn,
    builtin,
    holo_poly,
    monomial,
    sign_fn,
    tau,
    zzbar_poly,
)
from .linalg import eigen_structure, schur_decompose  # noqa: E402
from .calculus import (  # noqa: E402
    divided_differences,
    hermite_interpolant,
    matrix_function,
    opitz_matrix,
    phi_hermite,
    phi_parlett,
)
from .conjugate import (  # noqa: E402
    abs_matrix,
    bounds_report,
    conjugate,
    conjugating_polynomial,
    polar_representation,
    sign_decomposition,
)
from .cauchy_green import (  # noqa: E402
    DiscSet,
    QuadratureConfig,
    convergence_study,
    disc_omission_error,
    phi_integral,
    pompeiu_scalar,
)

__all__ = [
    "__version__",
    "NHCalcError", "DomainError", "NumericalError", "NotDiagonalizableError",
    "InadmissibleOrderError", "InputError",
    "WirtingerFunction", "tau", "monomial", "zzbar_poly", "holo_poly",
    "abs_fn", "arg_fn", "sign_fn", "builtin",
    "schur_decompose", "eigen_structure",
    "divided_differences", "hermite_interpolant", "opitz_matrix",
    "phi_hermite", "phi_parlett", "matrix_function",
    "conjugate", "conjugating_polynomial", "bounds_report",
    "abs_matrix", "polar_representation", "sign_decomposition",
    "DiscSet", "QuadratureConfig", "pompeiu_scalar", "phi_integral",
    "disc_omission_error", "convergence_study",
]
