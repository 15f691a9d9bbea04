"""Exception hierarchy shared by every module."""


class ZinbielError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(ZinbielError, ValueError):
    pass


class SingularMatrix(ZinbielError, ValueError):
    pass


class NotNilpotent(ZinbielError):
    pass


class DimensionTooSmall(ZinbielError, ValueError):
    pass


class InvalidParameter(ZinbielError, ValueError):
    pass


class IncompatibleRadicands(ZinbielError, ArithmeticError):
    pass


class DenominatorDivisibleByP(ZinbielError, ValueError):
    def __init__(self, p, entry, value):
        super().__init__(f"entry {entry} = {value} has a denominator divisible by {p}")
        self.p = p
        self.entry = entry
        self.value = value


class SearchSpaceTooLarge(ZinbielError):
    pass


class ExtensionScalarNotSerializable(ZinbielError, ValueError):
    pass


class MissingFixture(ZinbielError, FileNotFoundError):
    pass


class DSLError(ZinbielError, ValueError):
    """A problem in algebra-definition text, tagged with its 1-based line."""

    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class DSLSyntaxError(DSLError):
    pass


class IndexOutOfRange(DSLError):
    pass


class DuplicateProduct(DSLError):
    pass


class UnboundParameter(DSLError):
    pass


class BadRational(DSLError):
    pass
