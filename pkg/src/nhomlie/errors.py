class NHomLieError(Exception):
    pass


class InputError(NHomLieError, ValueError):
    """Malformed or inconsistent user-supplied data."""


class StructuralError(NHomLieError, ArithmeticError):
    """A mathematical precondition of the data failed (e.g. singular twist)."""
