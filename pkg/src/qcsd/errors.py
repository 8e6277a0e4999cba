"""Shared exception types."""


class ConstructionError(ValueError):
    """A building-up precondition failed; the message names the identity."""


class UnsupportedCase(RuntimeError):
    """The requested operation's hypotheses cannot be satisfied or verified."""


class BudgetExceeded(RuntimeError):
    """An enumeration or search would exceed its configured budget.

    Carries enough context to rerun with a bigger budget.
    """

    def __init__(self, what: str, required: int, budget: int):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what}: needs {required} steps but budget is {budget}; "
            f"raise the budget to at least {required} to run this"
        )
