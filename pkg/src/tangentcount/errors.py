"""Shared exception for violated internal invariants.

Raised when an exact computation produces something structurally impossible
(a non-integer curve count, a singular splitting system, an unreducible
class the recursion cannot classify).  The command-line driver maps it to
exit status 3.
"""


class InconsistencyError(RuntimeError):
    """An internal invariant failed; results cannot be trusted."""
