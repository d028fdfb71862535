"""Domain error types.

The service layer maps these onto HTTP statuses: NotFoundError subclasses
become 404, every other OhtError becomes 400.
"""

from __future__ import annotations


class OhtError(Exception):
    """Base class for all domain errors."""


class NotFoundError(OhtError):
    """A referenced entity does not exist."""


# -- corpus loading ---------------------------------------------------------

class MissingSchema(OhtError):
    def __init__(self, path: object, reason: str = "schema file not found"):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)
        self.reason = reason


class UnreadableFile(OhtError):
    def __init__(self, path: object, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)
        self.reason = reason


class ValidationError(OhtError):
    def __init__(self, path: object, reasons: list[str]):
        super().__init__(f"{path}: " + "; ".join(reasons))
        self.path = str(path)
        self.reasons = reasons


class DuplicateId(OhtError):
    def __init__(self, interview_id: str):
        super().__init__(f"duplicate interview id {interview_id!r}")
        self.interview_id = interview_id


class StructureError(OhtError):
    """Document is not even structurally inspectable (not a JSON object)."""


# -- index / search ---------------------------------------------------------

class UnknownInterview(NotFoundError):
    def __init__(self, interview_id: str):
        super().__init__(f"unknown interview {interview_id!r}")
        self.interview_id = interview_id


class BadFilter(OhtError):
    def __init__(self, pair: str, reason: str = "expected facet:value"):
        super().__init__(f"bad filter {pair!r}: {reason}")
        self.pair = pair


class PageOutOfRange(OhtError):
    def __init__(self, page: int, total: int):
        super().__init__(f"page {page} is out of range for {total} results")
        self.page = page
        self.total = total


# -- workspaces / annotations -----------------------------------------------

class UnknownWorkspace(NotFoundError):
    def __init__(self, workspace_id: str):
        super().__init__(f"unknown workspace {workspace_id!r}")
        self.workspace_id = workspace_id


class EmptyName(OhtError):
    def __init__(self) -> None:
        super().__init__("workspace name must be non-empty")


class InvalidRange(OhtError):
    def __init__(self, start_ms: object, end_ms: object, duration_ms: int):
        super().__init__(
            f"invalid range [{start_ms}, {end_ms}] for duration {duration_ms} ms"
        )
        self.start_ms = start_ms
        self.end_ms = end_ms
        self.duration_ms = duration_ms


class EmptyAnnotation(OhtError):
    def __init__(self) -> None:
        super().__init__("annotation needs text or at least one tag")


class CorruptLog(OhtError):
    def __init__(self, path: object, line_number: int, reason: str):
        super().__init__(f"{path}: corrupt log line {line_number}: {reason}")
        self.path = str(path)
        self.line_number = line_number
        self.reason = reason
