"""Exception types shared across modules."""


class GaussDioError(Exception):
    """Base class for domain errors."""


class PreconditionError(GaussDioError, ValueError):
    """An operation was called outside the region where its claim applies."""


class DegenerateK(PreconditionError):
    """k makes some element of the family triple vanish."""


class KTooSmall(PreconditionError):
    """|k| is below the threshold required by the operation."""


class NotASolution(GaussDioError, ValueError):
    """A supplied pair or triple does not satisfy the equation(s)."""


class BoundOverflow(GaussDioError):
    """A search disk contains more points than the configured budget."""


class UnexpectedSurvivor(GaussDioError):
    """The congruence sieve let through a class outside the expected set."""

    def __init__(self, k, survivors):
        self.k = k
        self.survivors = survivors
        super().__init__(f"k={k}: unexpected surviving classes {survivors}")


class CaseGap(GaussDioError):
    """Some discriminant case is covered by no obstruction."""


class IndexBoundTooSmall(PreconditionError):
    """The index bound cannot reach even the smallest known extension."""
