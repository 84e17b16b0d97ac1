"""Learn deprecated Android API updates from one example and apply them."""

from .blocks import UpdatedBlock, VersionGuard, extract_update_block, normalize_version_conditions, validate_block
from .errors import (
    MappingError,
    NoValidBlock,
    NormalizeError,
    OracleError,
    OverlapError,
    ParseError,
    PatchParseError,
    ReparseError,
    SdkPatchError,
    SynthesisError,
    UndeclaredMetavar,
)
from .java.calls import CallSite, find_calls
from .java.edit import splice
from .java.parser import parse_unit
from .mapping import ApiMapping, load_mapping
from .normalize import NamingScheme, extract_statement, extract_variables, normalize_unit
from .pipeline import learn_patch, update_source
from .smpl import SemanticPatch, apply_patch, match_rule, parse_patch
from .synthesize import synthesize_patch

__version__ = "0.1.0"

__all__ = [
    "ApiMapping",
    "CallSite",
    "MappingError",
    "NamingScheme",
    "NoValidBlock",
    "NormalizeError",
    "OracleError",
    "OverlapError",
    "ParseError",
    "PatchParseError",
    "ReparseError",
    "SdkPatchError",
    "SemanticPatch",
    "SynthesisError",
    "UndeclaredMetavar",
    "UpdatedBlock",
    "VersionGuard",
    "apply_patch",
    "extract_statement",
    "extract_update_block",
    "extract_variables",
    "find_calls",
    "learn_patch",
    "load_mapping",
    "match_rule",
    "normalize_unit",
    "normalize_version_conditions",
    "parse_patch",
    "parse_unit",
    "splice",
    "synthesize_patch",
    "update_source",
    "validate_block",
]
