"""Exception types raised by the engine.

"Absent" outcomes (no factor, no witness) are reported by returning ``None``;
the classes below are reserved for conditions a caller must branch on.
"""


class PolysemiError(Exception):
    """Base class for all engine errors."""


class ParseError(PolysemiError, ValueError):
    pass


class BudgetExceeded(PolysemiError):
    """A degree cap or search budget was hit before the answer was known."""


class DegreeMismatch(PolysemiError, ValueError):
    pass


class FieldObstruction(PolysemiError):
    """The answer requires a root that does not lie in Q(i).

    Distinct from absence: a factor may still exist over the complex numbers.
    """


class NotEqualComposite(PolysemiError, ValueError):
    pass


class InvalidParameters(PolysemiError, ValueError):
    pass


class NotInE(PolysemiError, ValueError):
    """A polynomial expected to be a semiconjugacy from B is not one."""


class SpecialInput(PolysemiError, ValueError):
    """The input is conjugate to z^n or +-T_n where a non-special one is required."""


class ConsistencyFailure(PolysemiError):
    """A step that theory guarantees to succeed failed; indicates a bug."""


class NotAnIterateSplit(PolysemiError, ValueError):
    pass


class BoundViolation(PolysemiError):
    pass


class MalformedCurve(PolysemiError, ValueError):
    pass
