"""Exception types shared across the package."""


class E2TopError(Exception):
    pass


class InvalidInput(E2TopError, ValueError):
    pass


class GroupTooLarge(E2TopError):
    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"group order exceeds cap {cap}")


class TooLarge(E2TopError):
    """Raised when an enumeration would exceed the simplex budget.

    ``degree`` is the degree at which the budget ran out, so callers can
    report how far a computation got.
    """

    def __init__(self, degree, estimate, budget):
        self.degree = degree
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"degree {degree} needs ~{estimate} simplices, budget is {budget}"
        )


class InvalidDegree(E2TopError, ValueError):
    pass


class NotFiniteDimensional(E2TopError):
    pass


class UnknownGroup(E2TopError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown group"
