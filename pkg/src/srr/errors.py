"""Exception types shared across the toolkit."""


class DimensionMismatch(ValueError):
    """Operands have incompatible lengths, dimensions, or field orders."""


class ZeroVector(ValueError):
    """A nonzero vector was required."""


class ZeroColumn(ValueError):
    """A generator matrix contains an all-zero column."""


class RankDeficient(ValueError):
    """A generator matrix has rank below its row count."""


class MalformedLP(ValueError):
    """A linear program has inconsistent dimensions."""


class OracleTooLarge(ValueError):
    """Instance exceeds the configured projection-oracle size limit."""


class EmptyIndexSet(ValueError):
    """A hyperplane cut has no coordinates to constrain."""


class NonUnitRates(ValueError):
    """An operation requires a region computed under unit server rates."""


class NotATheoremVertex(ValueError):
    """Requested demand vector is not one of the closed-form region vertices."""


class UnsupportedK(ValueError):
    """Requested dimension lies outside the supported range for a code family."""
