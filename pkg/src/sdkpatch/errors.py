"""Exception hierarchy shared by every stage of the pipeline."""


class SdkPatchError(Exception):
    """Base class; ``location`` is a ``path:line`` string when known."""

    location: str | None = None

    def __str__(self) -> str:
        msg = super().__str__()
        if self.location:
            return f"{self.location}: {msg}"
        return msg


class ParseError(SdkPatchError):
    def __init__(self, offset: int, expected: str, path: str | None = None, line: int | None = None):
        super().__init__(f"expected {expected}")
        self.offset = offset
        self.expected = expected
        self.line = line
        if path is not None or line is not None:
            self.location = f"{path or '<input>'}:{line if line is not None else '?'}"


class OverlapError(SdkPatchError):
    pass


class MappingError(SdkPatchError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class NormalizeError(SdkPatchError):
    pass


class NoValidBlock(SdkPatchError):
    pass


class PatchParseError(SdkPatchError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"patch line {line}: {reason}")
        self.line = line
        self.reason = reason


class UndeclaredMetavar(PatchParseError):
    def __init__(self, name: str, line: int = 0):
        super().__init__(line, f"undeclared metavariable {name!r}")
        self.name = name


class ReparseError(SdkPatchError):
    pass


class SynthesisError(SdkPatchError):
    pass


class OracleError(SdkPatchError):
    pass
