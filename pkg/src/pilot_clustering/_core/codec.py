"""Plain-text record codec.

Every replayable artifact (deployments, propagation tables, coalition
structures, formation traces) is a small text record::

    # <kind>
    # key=value            header lines
    body line              free-form data lines
    # <section>            a bare comment starts a named section
    section line

Floats are written with ``repr`` so a parse of an emitted record reproduces
the exact binary values.
"""

import hashlib
from collections.abc import Iterable, Mapping, Sequence

from pydantic import BaseModel, Field

from pilot_clustering._core.exceptions import RecordFormatError


class TextRecord(BaseModel):
    """Parsed plain-text record."""

    kind: str
    headers: dict[str, str] = Field(default_factory=dict)
    body: list[str] = Field(default_factory=list)
    sections: dict[str, list[str]] = Field(default_factory=dict)

    def header(self, key: str) -> str:
        """Return a required header value.

        Raises:
            RecordFormatError: If the header is absent.
        """
        try:
            return self.headers[key]
        except KeyError:
            msg = f"{self.kind} record is missing header '{key}'"
            raise RecordFormatError(msg) from None

    def section(self, name: str) -> list[str]:
        """Return a required named section."""
        try:
            return self.sections[name]
        except KeyError:
            msg = f"{self.kind} record is missing section '{name}'"
            raise RecordFormatError(msg) from None


def format_float(value: float) -> str:
    """Shortest string that parses back to the same double."""
    return repr(float(value))


def format_row(values: Iterable[float]) -> str:
    return " ".join(format_float(v) for v in values)


def parse_floats(line: str, expected: int | None = None) -> list[float]:
    """Parse a whitespace-separated row of floats.

    Raises:
        RecordFormatError: On non-numeric tokens or a wrong column count.
    """
    try:
        values = [float(token) for token in line.split()]
    except ValueError as e:
        msg = f"Non-numeric value in row '{line}'"
        raise RecordFormatError(msg) from e
    if expected is not None and len(values) != expected:
        msg = f"Expected {expected} values, got {len(values)} in row '{line}'"
        raise RecordFormatError(msg)
    return values


def format_cells(cells: Sequence[int]) -> str:
    """Comma-joined cell list, ``-`` for the empty set."""
    return ",".join(str(c) for c in cells) if cells else "-"


def parse_cells(token: str) -> tuple[int, ...]:
    if token == "-":
        return ()
    try:
        return tuple(int(c) for c in token.split(","))
    except ValueError as e:
        msg = f"Invalid cell list '{token}'"
        raise RecordFormatError(msg) from e


def write_record(
    kind: str,
    headers: Mapping[str, object],
    body: Iterable[str] = (),
    sections: Mapping[str, Iterable[str]] | None = None,
) -> str:
    """Render a record; the result always ends with a newline."""
    lines = [f"# {kind}"]
    lines.extend(f"# {key}={value}" for key, value in headers.items())
    lines.extend(body)
    for name, section_lines in (sections or {}).items():
        lines.append(f"# {name}")
        lines.extend(section_lines)
    return "\n".join(lines) + "\n"


def parse_record(text: str, kind: str) -> TextRecord:
    """Parse a record and check its kind.

    Raises:
        RecordFormatError: If the first line does not announce ``kind``.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != f"# {kind}":
        msg = f"Expected a '{kind}' record"
        raise RecordFormatError(msg)

    record = TextRecord(kind=kind)
    current: list[str] = record.body
    for line in lines[1:]:
        if line.startswith("#"):
            content = line[1:].strip()
            if "=" in content:
                key, value = content.split("=", 1)
                record.headers[key.strip()] = value.strip()
            else:
                current = record.sections.setdefault(content, [])
            continue
        current.append(line)
    return record


def sha256_text(text: str) -> str:
    """Content hash used in provenance headers."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


__all__ = [
    "TextRecord",
    "format_float",
    "format_row",
    "parse_floats",
    "format_cells",
    "parse_cells",
    "write_record",
    "parse_record",
    "sha256_text",
]
