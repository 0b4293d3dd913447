"""Exception hierarchy shared by every module."""


class MeadowError(Exception):
    pass


class FormatError(MeadowError, ValueError):
    """Tables of the wrong shape, out-of-range indices, malformed input."""


class ParseError(FormatError):
    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = ""
        if path is not None:
            where += str(path)
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}" if where else message)


class DomainError(MeadowError, ValueError):
    """An argument outside the domain of the operation."""


class SizeError(MeadowError, ValueError):
    """A configured carrier or ideal-count cap was exceeded."""


class StructuralError(MeadowError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FunctorialityError(StructuralError):
    pass


class ValidationError(MeadowError):
    """A value failed its validator; ``report`` carries the violations."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class PreconditionError(MeadowError):
    pass


class DuplicateNameError(MeadowError):
    pass
