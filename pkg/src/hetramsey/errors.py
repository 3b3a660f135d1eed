"""Exception hierarchy shared by every module of the package."""


class RamseyAlgebraError(Exception):
    """Base class for all errors raised by hetramsey."""


class UnknownSort(RamseyAlgebraError):
    pass


class MalformedHeterogeneousOp(RamseyAlgebraError):
    pass


class MalformedOperation(RamseyAlgebraError):
    pass


class UnknownOp(RamseyAlgebraError):
    pass


class SortMismatch(RamseyAlgebraError):
    pass


class ArityMismatch(RamseyAlgebraError):
    pass


class OrderMismatch(RamseyAlgebraError):
    pass


class BoundsTooLarge(RamseyAlgebraError):
    pass


class IndexCapExceeded(RamseyAlgebraError):
    pass


class TermSyntaxError(RamseyAlgebraError):
    pass


class SchemaError(RamseyAlgebraError):
    """Invalid experiment configuration; ``field`` and ``line`` locate the problem."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class CapExceeded(SchemaError):
    pass
