"""Exact rational Lie algebra toolkit.

Killing and trace forms, centers, radicals and reductivity certificates for
Lie algebras given by structure constants; generalized eigenspaces and joint
decompositions of commuting matrix families; seeded campaigns that check the
non-degenerate-restriction-implies-reductive property over a catalog of
classical algebras.
"""

from .errors import LieKitError
from .exactlin import Matrix, Polynomial, Q, Subspace
from .liealg import BilinearForm, LieAlgebra, ReductivityCertificate, Subalgebra

__all__ = [
    "BilinearForm",
    "LieAlgebra",
    "LieKitError",
    "Matrix",
    "Polynomial",
    "Q",
    "ReductivityCertificate",
    "Subalgebra",
    "Subspace",
]

__version__ = "0.1.0"
