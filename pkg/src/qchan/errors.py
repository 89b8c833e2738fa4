"""Exception hierarchy shared by all qchan modules."""


class QchanError(ValueError):
    """Base class for every error raised by qchan."""


class DomainError(QchanError):
    pass


class DimensionMismatch(QchanError):
    pass


class NonHermitianInput(QchanError):
    pass


class NotDensityMatrix(QchanError):
    def __init__(self, check: str, detail: str = ""):
        self.check = check
        msg = f"not a density matrix: {check} check failed"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InvalidBasis(QchanError):
    pass


class EmptyOperatorList(QchanError):
    pass


class NotTracePreserving(QchanError):
    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"Kraus operators are not trace preserving (residual {residual:.3e})")


class NotUnitary(QchanError):
    pass


class NotUnitaryChannel(QchanError):
    pass


class TheoremScopeError(QchanError):
    """The requested bound does not apply to the given channel."""


class CoherenceConsistencyError(QchanError):
    """A coherence value came out negative beyond floating-point noise."""
