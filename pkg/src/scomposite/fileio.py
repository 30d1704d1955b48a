"""Helpers for the line-oriented text formats.

All formats are UTF-8, one record per line, with blank lines and lines
starting with '#' ignored.
"""

from collections.abc import Iterator

from .errors import FormatError


def content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_no, fields) for every non-blank, non-comment line."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line.split()


def parse_int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected integer {what}, got {token!r}", line_no) from None


def expect_fields(fields: list[str], count: int, line_no: int, grammar: str) -> None:
    if len(fields) != count:
        raise FormatError(
            f"expected {count} fields ({grammar}), got {len(fields)}", line_no
        )
