"""Exception types shared across the package.

The CLI maps these onto exit codes: ``DomainError`` (and its subclasses) to 1,
``CapExceededError`` to 2 and ``BoundViolationError`` to 3.
"""


class DomainError(ValueError):
    """Bad input: malformed ring/grid/polynomial, violated precondition."""


class InfeasibleError(DomainError):
    """No ball distribution exists (more balls than total capacity)."""


class MixedRingError(DomainError):
    """Operands live in different rings."""


class InapplicableError(DomainError):
    """A theorem's hypotheses do not hold for the requested instance."""


class CapExceededError(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""


class BoundViolationError(AssertionError):
    """A proved bound was observed to fail. Indicates a bug."""
