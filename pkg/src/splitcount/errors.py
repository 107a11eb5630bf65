"""Exception hierarchy.

The CLI maps :class:`InputError` to exit code 2 and :class:`CapExceeded`
to exit code 3; everything else is a programming error.
"""


class SplitcountError(Exception):
    pass


class InputError(SplitcountError, ValueError):
    """Malformed user input: bad endofunction text, bad d, bad subset."""


class EmptyInput(InputError):
    def __init__(self, msg="no integers in input"):
        super().__init__(msg)


class NonIntegerToken(InputError):
    def __init__(self, position, token):
        self.position = position
        self.token = token
        super().__init__(f"token {position} is not an integer: {token!r}")


class ImageOutOfRange(InputError):
    def __init__(self, position, value):
        self.position = position
        self.value = value
        super().__init__(f"image of {position} is {value}, outside 1..n")


class InvalidD(InputError):
    pass


class OddN(InputError):
    pass


class NotATree(InputError):
    pass


class DimensionMismatch(SplitcountError, ValueError):
    pass


class OrderMismatch(SplitcountError, ValueError):
    pass


class NoVariables(SplitcountError, ValueError):
    pass


class CapExceeded(SplitcountError):
    pass


class OverflowGuard(CapExceeded):
    pass


class OracleMismatch(SplitcountError):
    """Two independent computations of the same quantity disagreed."""
