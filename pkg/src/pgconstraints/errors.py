"""Exception hierarchy shared by every module of the package."""


class PGConstraintError(Exception):
    """Base class for all errors raised by pgconstraints."""


class GraphError(PGConstraintError):
    pass


class DuplicateId(GraphError):
    pass


class DanglingEndpoint(GraphError):
    pass


class InvalidId(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class ParseError(PGConstraintError):
    """Syntax error in a query, regex, predicate or constraint text.

    ``pos`` is the 0-based character offset at which parsing failed.
    """

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        if text:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


class KindConflict(ParseError):
    """A variable is used both as, e.g., a vertex and an edge variable."""


class MalformedQuery(PGConstraintError):
    pass


class MalformedConstraint(PGConstraintError):
    pass


class MalformedPgKey(MalformedConstraint):
    pass


class KindMismatch(PGConstraintError):
    """A base assignment binds a variable to an object of the wrong kind."""


class TranslationError(PGConstraintError):
    pass


class NotOneShared(TranslationError):
    pass


class UnsupportedHead(TranslationError):
    pass


class UnsupportedPredicates(TranslationError):
    pass


class WitnessParameterError(PGConstraintError):
    pass
