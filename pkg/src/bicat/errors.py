class BicatError(Exception):
    """Base class for all kernel errors."""


class DSLSyntaxError(BicatError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class UnknownNameError(BicatError):
    pass


class BoundaryError(BicatError):
    """Raised when cells are not composable or not parallel."""


class ConfluenceError(BicatError):
    """The oriented 1-relations have a non-joinable critical pair."""


class FlavorError(BicatError):
    pass
