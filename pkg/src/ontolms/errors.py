"""Exception types shared across the engine.

Every failure mode raised by the store, the query engine, the profiler,
the quiz engine, the catalog and the service is a subclass of LmsError,
so the HTTP layer can translate exception type to status code mechanically.
"""


class LmsError(Exception):
    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    @property
    def code(self) -> str:
        return type(self).__name__


# --- ontology store ---------------------------------------------------------

class InvalidIdentifier(LmsError):
    pass


class DuplicateId(LmsError):
    pass


class UnknownParent(LmsError):
    pass


class CycleDetected(LmsError):
    pass


class UnknownClass(LmsError):
    pass


class IdCollidesWithClass(LmsError):
    pass


class UnknownEntity(LmsError):
    pass


class DomainViolation(LmsError):
    pass


class RangeViolation(LmsError):
    pass


class AssertionNotFound(LmsError):
    pass


class InverseMismatch(LmsError):
    pass


class InverseAlreadyBound(LmsError):
    pass


class InvalidLiteral(LmsError):
    """Data value that the line-oriented persistence format cannot carry."""


class ClassInUse(LmsError):
    pass


# --- query language ---------------------------------------------------------

class ParseError(LmsError):
    """Query text rejected; offset is the 1-based character position."""

    def __init__(self, offset: int, expected: str):
        super().__init__(f"at offset {offset}: {expected}")
        self.offset = offset
        self.expected = expected


class UnknownName(LmsError):
    def __init__(self, name: str, kind: str):
        super().__init__(f"{name!r} does not resolve to a {kind}")
        self.name = name
        self.kind = kind


# --- survey / profiling -----------------------------------------------------

class FormatError(LmsError):
    pass


class LengthMismatch(LmsError):
    pass


class IndexOutOfRange(LmsError):
    pass


class EmptySurvey(LmsError):
    pass


# --- quiz -------------------------------------------------------------------

class UnknownLearner(LmsError):
    pass


class MissingStyle(LmsError):
    pass


class EmptyQuiz(LmsError):
    pass


class UnknownTopic(LmsError):
    pass


class UnknownQuestion(LmsError):
    pass


class AlreadyResolved(LmsError):
    pass


class NoResourceForTopic(LmsError):
    pass


class UnknownSession(LmsError):
    pass


# --- catalog ----------------------------------------------------------------

class Forbidden(LmsError):
    pass


class DuplicateUserid(LmsError):
    pass


class UnknownUser(LmsError):
    pass


class SelfDeletion(LmsError):
    pass


class ParentOutsideTaxonomy(LmsError):
    pass


class AlreadyEnrolled(LmsError):
    pass


class UnknownCourse(LmsError):
    pass


class NotEnrolled(LmsError):
    pass


class BadFormatToken(LmsError):
    pass


class CourseNotEmpty(LmsError):
    pass


# --- persistence ------------------------------------------------------------

class DocumentSyntaxError(LmsError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line


class DocumentSemanticError(LmsError):
    def __init__(self, line: int, cause: LmsError):
        super().__init__(f"line {line}: {cause.code}: {cause.detail}")
        self.line = line
        self.cause = cause


# --- service ----------------------------------------------------------------

class InvalidCredentials(LmsError):
    pass


class Unauthorized(LmsError):
    pass
