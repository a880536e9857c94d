"""Error types raised by the exact-computation layers.

Every failure mode the verification suites can hit is a distinct exception
class, so callers (and the CLI) can tell a structural misuse apart from a
resource cap or a genuine degeneracy of a chosen specialization.
"""

from __future__ import annotations


class TorsionLabError(Exception):
    """Base class for all package errors."""


class StructuralError(TorsionLabError):
    """Dimension or modulus-level mismatch between operands."""


class SingularMatrixError(TorsionLabError):
    """Inversion attempted on a matrix that is not a unit mod 2^k."""


class ClassificationError(TorsionLabError):
    """An element-order census is inconsistent with any abelian 2-group."""


class IncompleteGeneratorsError(TorsionLabError):
    """A BFS closure came out smaller than the group it must equal."""


class CapacityError(TorsionLabError):
    """A resource cap (element count, memory budget) was exceeded."""


class DegenerateSpecializationError(TorsionLabError):
    """A root specialization collapses radical degrees below the generic count."""


class BranchError(TorsionLabError):
    """A certified enclosure contradicts the requested root branch."""
