"""Shared exception types.

PreconditionError: the caller asked for something outside a documented
contract (bad modulus, hypotheses of a lemma unmet, ...).  Maps to exit
code 2 in the CLI.

ResourceError: the request is well-formed but exceeds a computation
budget (memory, O(q^2) cost caps, enumeration limits).  Maps to exit
code 3 in the CLI.
"""


class PreconditionError(ValueError):
    pass


class ResourceError(RuntimeError):
    pass
