"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class FinterpError(Exception):
    exit_code = 1


class ParseError(FinterpError):
    exit_code = 2

    def __init__(self, message, line=None, column=None, origin="<string>"):
        self.line = line
        self.column = column
        self.origin = origin
        where = f"{origin}:{line}:{column}: " if line is not None else ""
        super().__init__(where + message)
        self.message = message


class TypeMismatch(FinterpError):
    exit_code = 2


class UnboundVariable(FinterpError):
    exit_code = 2


class ArityMismatch(FinterpError):
    exit_code = 2


class NotExistsFree(FinterpError):
    pass


class NotGamma1(FinterpError):
    pass


class NotForallExists(FinterpError):
    def __init__(self, message, path=()):
        super().__init__(message)
        self.path = tuple(path)


class NotQuantifierFree(FinterpError):
    pass


class NotClosed(FinterpError):
    pass


class ShapeUnsupported(FinterpError):
    pass


class InstanceCapExceeded(FinterpError):
    pass


class StepBudgetExceeded(FinterpError):
    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
