"""Spherical codes, their modular generalization over finite-dimensional
C*-algebras, and certified upper bounds on code sizes."""

from .algebra import AlgebraDescriptor, AlgebraElement, diagonal_algebra, matrix_algebra, SCALAR
from .bounds import (
    BoundResult,
    DelsarteCertificate,
    NcPhiSpec,
    PfenderCertificate,
    nc_pfender_check,
    optimize_delsarte,
    pfender_bound,
    pfender_check_on_code,
    verify_delsarte,
)
from .codes import (
    ClassicalCode,
    ModularCode,
    VerificationReport,
    verify_classical,
    verify_modular,
    verify_modular_norm_only,
)
from .errors import (
    DomainError,
    FormatError,
    InfeasibleError,
    InternalError,
    NumericalError,
    ShapeError,
    SphereCodesError,
)
from .gegenbauer import GegenbauerExpansion, expand, gegenbauer
from .hilbert_module import ModuleVector, gram, inner_product
from .polynomial import Polynomial

__version__ = "0.1.0"

__all__ = [
    "AlgebraDescriptor",
    "AlgebraElement",
    "BoundResult",
    "ClassicalCode",
    "DelsarteCertificate",
    "DomainError",
    "FormatError",
    "GegenbauerExpansion",
    "InfeasibleError",
    "InternalError",
    "ModularCode",
    "ModuleVector",
    "NcPhiSpec",
    "NumericalError",
    "PfenderCertificate",
    "Polynomial",
    "SCALAR",
    "ShapeError",
    "SphereCodesError",
    "VerificationReport",
    "diagonal_algebra",
    "expand",
    "gegenbauer",
    "gram",
    "inner_product",
    "matrix_algebra",
    "nc_pfender_check",
    "optimize_delsarte",
    "pfender_bound",
    "pfender_check_on_code",
    "verify_classical",
    "verify_delsarte",
    "verify_modular",
    "verify_modular_norm_only",
]
