"""U(3) > U(2) > U(1) Clebsch-Gordan, U(3) recoupling and SU(3) > SO(3) Wigner coefficients."""

from .canonical_cgc import CGTable, cached_table, full_table, highest_weight_cgc, hw_vectors
from .errors import (InternalMismatch, MultiplicityMismatch, NumericalDiagnostic,
                     ResidualTooLarge, SingularSystem)
from .generators import apply_generator, generator_matrix
from .patterns import (GelfandPattern, SU3Irrep, U3Irrep, dimension_u3,
                       enumerate_patterns, normalize)
from .physical import allowed_L, hw_transform, inner_multiplicity, physical_basis
from .recoupling import nine_u3, u_coefficients, z_coefficients
from .tensor import decompose, outer_multiplicity
from .wigner import full_wigner, reduced_wigner, so3_cgc, wigner_table

__version__ = "0.1.0"

__all__ = [
    "CGTable", "GelfandPattern", "InternalMismatch", "MultiplicityMismatch",
    "NumericalDiagnostic", "ResidualTooLarge", "SU3Irrep", "SingularSystem", "U3Irrep",
    "allowed_L", "apply_generator", "cached_table", "decompose", "dimension_u3",
    "enumerate_patterns", "full_table", "full_wigner", "generator_matrix",
    "highest_weight_cgc", "hw_transform", "hw_vectors", "inner_multiplicity",
    "nine_u3", "normalize", "outer_multiplicity", "physical_basis", "reduced_wigner",
    "so3_cgc", "u_coefficients", "wigner_table", "z_coefficients",
]
