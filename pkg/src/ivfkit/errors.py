"""Exception types shared across the toolkit."""


class IvfkitError(Exception):
    """Base class for all toolkit errors."""


class InvalidEndpoints(IvfkitError):
    """Interval endpoints are reversed, NaN, or infinite where finiteness is required."""


class InfiniteOperand(IvfkitError):
    """Operation is undefined for intervals with infinite endpoints."""


class EmptyFamily(IvfkitError):
    """Infimum/supremum requested for an empty collection of intervals."""


class InfiniteTerm(IvfkitError):
    """A sequence term has an infinite endpoint where a finite one is required."""


class NotMonotone(IvfkitError):
    """Sequence fails the pairwise dominance-monotonicity precondition."""


class Unbounded(IvfkitError):
    """Sequence shows sustained growth incompatible with a finite supremum."""


class EndpointOrderViolation(IvfkitError):
    """An interval-valued function returned lower > upper at some point."""


class OutOfDomain(IvfkitError):
    """Evaluation point lies outside the declared domain box."""


class NonConvergent(IvfkitError):
    """Difference-quotient ladder did not settle below the convergence tolerance."""


class EmptyGrid(IvfkitError):
    """A sample grid with no points was supplied."""


class ImproperFunction(IvfkitError):
    """Function fails the properness probe (nowhere finite, or attains the bottom element)."""


class HypothesisViolated(IvfkitError):
    """Input violates a hypothesis of the variational-principle search."""


class EmptyArgmin(IvfkitError):
    """Tolerance argmin came back empty; the grid is too coarse for the tolerance."""


class ParseError(IvfkitError):
    """Expression text could not be parsed.

    Carries the offset of the failure and the set of token kinds that would
    have been accepted there.
    """

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.expected = expected


class UnknownIdentifier(IvfkitError):
    """Expression references a name that is not a variable or builtin function."""
