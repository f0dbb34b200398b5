"""Exception hierarchy shared by all modules."""


class MatquotError(Exception):
    """Base class for every error raised by this package."""


class ExchangeAxiomViolation(MatquotError):
    def __init__(self, b1: int, b2: int, x: int):
        self.b1, self.b2, self.x = b1, b2, x
        super().__init__(
            f"basis exchange fails for B1={_fmt(b1)}, B2={_fmt(b2)}, x={x}"
        )


class EmptyBases(MatquotError):
    pass


class UnequalBases(MatquotError):
    pass


class GroundSetMismatch(MatquotError):
    pass


class NotAFlatLattice(MatquotError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class TooLarge(MatquotError):
    pass


class InvalidModularCut(MatquotError):
    pass


class NotAQuotient(MatquotError):
    pass


class IndexOutOfRange(MatquotError):
    pass


class NotElementary(MatquotError):
    pass


class InvalidFactorization(MatquotError):
    pass


class InvalidMajor(MatquotError):
    pass


class InvalidFlag(MatquotError):
    pass


class FieldMismatch(MatquotError):
    pass


class DimensionMismatch(MatquotError):
    pass


class RankDeficient(MatquotError):
    pass


class FiniteFieldUnsupported(MatquotError):
    pass


class InvalidRealization(MatquotError):
    pass


class SearchInconclusive(MatquotError):
    """No realization was found within the attempt budget.

    This is not a proof of non-realizability.
    """


class EmptySupport(MatquotError):
    pass


class LengthMismatch(MatquotError):
    pass


class NotAChainOfFlats(MatquotError):
    pass


class DegreeTooSmall(MatquotError):
    pass


class InternalInconsistency(MatquotError):
    """Two independent computations of the same quantity disagreed."""


class TooManyMonomials(TooLarge):
    pass


def _fmt(mask: int) -> str:
    return "{" + ",".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"
