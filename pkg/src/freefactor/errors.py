"""Exception hierarchy shared by the whole package."""


class DomainError(ValueError):
    """Base class for every input/precondition failure raised by this package."""


class WordSyntaxError(DomainError):
    """A word string (or raw letter sequence) could not be interpreted."""


class RankError(DomainError):
    """A rank is out of range, or two objects live over different ranks."""


class IdentityWordError(DomainError):
    """An operation that needs a nontrivial element received the identity."""


class NotCyclicallyReducedError(DomainError):
    """An operation requires a cyclically reduced word and got something else."""


class AxesEqualError(DomainError):
    """Two elements share an axis (they have a common power)."""


class UnboundedOverlapError(DomainError):
    """An axis/subtree overlap grew without stabilizing; the invariant is infinite."""


class PreconditionError(DomainError):
    """A documented operation precondition was violated by the caller."""


class InternalContradictionError(DomainError):
    """Observed data contradicts an invariant that is a theorem; signals a bug."""
