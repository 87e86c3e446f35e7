"""Exception types raised across the package."""


class FiberStabError(Exception):
    """Base class for all package errors."""


class ZeroRank(FiberStabError, ValueError):
    pass


class DegenerateMutation(FiberStabError, ValueError):
    pass


class OutOfWindow(FiberStabError, ValueError):
    pass


class DomainError(FiberStabError, ValueError):
    """Input outside the parameter domain (e.g. Im a <= 0)."""


class DegenerateCharge(FiberStabError, ValueError):
    pass


class ZeroCharge(FiberStabError, ValueError):
    pass


class WallGraze(FiberStabError):
    """A path segment runs inside a wall locus for a positive-length interval."""


class BudgetExhausted(FiberStabError):
    pass


class ShiftPresent(FiberStabError, ValueError):
    pass
