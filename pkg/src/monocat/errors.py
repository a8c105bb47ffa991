"""Shared error types: every bounded search fails loudly, never silently."""


class InconclusiveError(RuntimeError):
    """A certified answer could not be produced within the search budget."""


class BudgetExceededError(RuntimeError):
    """An enumeration was cut off; carries where exploration stopped."""

    def __init__(self, message, frontier=None):
        super().__init__(message)
        self.frontier = frontier


class HypothesisNotVerifiedError(RuntimeError):
    """A construction needs a hypothesis (e.g. enough injectives) that the
    bounded checks could not establish."""
