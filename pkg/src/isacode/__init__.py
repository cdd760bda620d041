"""Simplest ISA codes of symbol strings via hyperstring-based recoding."""

from .language import (
    ArityError,
    Chunk,
    Code,
    CodeSyntaxError,
    MalformedCode,
    Role,
    complexity,
    decode,
    format_code,
    parse_code,
    validate_code,
)

__version__ = "0.1.0"
