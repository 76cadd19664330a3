"""Exception and warning types shared across the package.

The CLI maps these onto process exit codes: precondition failures exit
with 4, circuit-family mismatches with 3, internal invariant breaches
with 5, and malformed input with 2.
"""


class PreconditionError(ValueError):
    """An operation was called on inputs that violate its stated preconditions."""


class FamilyMismatchError(ValueError):
    """A circuit contains a gate outside the family an engine can handle."""


class InvariantBreachError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ParticleNumberMismatch(UserWarning):
    """Amplitude requested between sectors of different particle number."""
