"""torsionlab: exact verification suites for 2-power torsion structures.

Subpackages by theme:

- modring / abelian: arithmetic over Z/2^k and abelian 2-group classification
- symplectic: the fixed alternating form, similitudes, transvections
- quotients: BFS enumeration of Gamma(2)/Gamma(2^m), commutators, abelianizations
- symrep: symmetric-group pair-basis modules over F2 and Z/4
- braid: pure braid words, the Artin action, the double-cover homology matrices
- intervals: certified complex rectangle arithmetic for root branches
- towers: exact radical towers over Q with membership certificates
- curves: root fixtures, curve isomorphism identities, division polynomials,
  the tower constructions and sign-character checks
- reports / cli: verification reports, suite registry, command line
"""

from .abelian import AbelianType, abelian_type_from_census
from .errors import (
    BranchError,
    CapacityError,
    ClassificationError,
    DegenerateSpecializationError,
    IncompleteGeneratorsError,
    SingularMatrixError,
    StructuralError,
    TorsionLabError,
)
from .curves import CurveSpec, gamma_values
from .modring import ModMatrix, ModScalar, mat_inverse, mat_mul, pack_key, unpack_key
from .towers import SignCharacter, Tower, TowerElement, tower_membership
from .symplectic import (
    SymplecticSpace,
    Transvection,
    congruence_level,
    is_symplectic,
    transvection_matrix,
    weil_subset_basis,
)

__all__ = [
    "AbelianType",
    "abelian_type_from_census",
    "CurveSpec",
    "gamma_values",
    "Tower",
    "TowerElement",
    "SignCharacter",
    "tower_membership",
    "ModMatrix",
    "ModScalar",
    "mat_mul",
    "mat_inverse",
    "pack_key",
    "unpack_key",
    "SymplecticSpace",
    "Transvection",
    "congruence_level",
    "is_symplectic",
    "transvection_matrix",
    "weil_subset_basis",
    "TorsionLabError",
    "StructuralError",
    "SingularMatrixError",
    "ClassificationError",
    "IncompleteGeneratorsError",
    "CapacityError",
    "DegenerateSpecializationError",
    "BranchError",
]
