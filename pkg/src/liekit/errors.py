"""Exception hierarchy shared by every liekit module."""


class LieKitError(Exception):
    """Base class for all errors raised by liekit."""


class NonSquare(LieKitError):
    pass


class DimensionMismatch(LieKitError):
    pass


class AmbientMismatch(DimensionMismatch):
    pass


class ZeroPolynomial(LieKitError):
    pass


class AxiomViolation(LieKitError):
    """A structure-constant table breaks antisymmetry or the Jacobi identity.

    ``axiom`` is ``"antisymmetry"`` or ``"jacobi"``; ``indices`` is the first
    offending index tuple, ``(i, j, k)`` or ``(i, j, k, l)`` respectively.
    """

    def __init__(self, axiom, indices, detail=""):
        self.axiom = axiom
        self.indices = tuple(indices)
        msg = f"{axiom} violated at indices {self.indices}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotClosed(LieKitError):
    """A subspace that was supposed to be a subalgebra is not bracket-closed."""


class DescentFailure(LieKitError):
    pass


class InternalInconsistency(LieKitError):
    pass


class NotCommuting(LieKitError):
    pass


class IrrationalSpectrum(LieKitError):
    pass


class VerificationFailure(LieKitError):
    pass


class NotSolvable(LieKitError):
    pass


class InvalidParams(LieKitError):
    pass


class NotADerivation(LieKitError):
    pass


class FormatError(LieKitError):
    """A serialized document could not be parsed."""
