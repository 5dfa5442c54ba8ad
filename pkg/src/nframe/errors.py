"""Exception hierarchy shared by every module."""


class NFrameError(Exception):
    pass


class InputError(NFrameError, ValueError):
    """Malformed input: wrong shapes, non-finite entries, bad arity."""


class DegenerateAnchorError(InputError):
    """The anchor vectors are (numerically) linearly dependent."""


class PreconditionError(NFrameError, ValueError):
    """A hypothesis required by a certifier does not hold on the instance."""
