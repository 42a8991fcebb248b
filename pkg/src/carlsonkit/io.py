"""Plain-text documents and report rendering.

A document starts with the header ``carlsonkit v1 <kind>`` followed by
whitespace-separated decimal records:

* ``expsum``: ``omega.re omega.im coeff.re coeff.im`` per term
* ``planar_measure`` / ``circle_measure``: ``loc.re loc.im w.re w.im`` per atom
* ``density``: one ``radius M`` record, then ``M`` records ``h.re h.im``

Blank lines and ``#`` comments are ignored on input. Numbers are written
with 17 significant digits, enough to round-trip any double.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, fields, is_dataclass
from enum import Enum
from pathlib import Path
from typing import Union

import numpy as np

from .exceptions import ParseError
from .expsum import ExpSum
from .measures import BoundaryDensity, CircleMeasure, PlanarMeasure

MAGIC = "carlsonkit"
FORMAT_VERSION = "1"
KINDS = {
    "expsum": ExpSum,
    "planar_measure": PlanarMeasure,
    "circle_measure": CircleMeasure,
    "density": BoundaryDensity,
}

Payload = Union[ExpSum, PlanarMeasure, CircleMeasure, BoundaryDensity]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Payload
    format_version: str = FORMAT_VERSION

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown document kind {self.kind!r}")
        if not isinstance(self.payload, KINDS[self.kind]):
            raise TypeError(f"{self.kind} document cannot carry {type(self.payload).__name__}")
        if self.format_version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {self.format_version!r}")


def _kind_of(payload) -> str:
    for kind, cls in KINDS.items():
        if type(payload) is cls:
            return kind
    raise TypeError(f"cannot serialize {type(payload).__name__}")


def _parse_float(tok: str, lineno: int) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}", lineno) from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite value {tok!r}", lineno)
    return x


def parse_document(text: str) -> Document:
    records = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = (lineno, line.split())
            continue
        records.append((lineno, line.split()))
    if header is None:
        raise ParseError("empty document")

    lineno, parts = header
    if len(parts) != 3 or parts[0] != MAGIC or not parts[1].startswith("v"):
        raise ParseError(f"expected header '{MAGIC} v{FORMAT_VERSION} <kind>'", lineno)
    version, kind = parts[1][1:], parts[2]
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version!r}", lineno)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", lineno)

    if kind == "density":
        return Document(kind, _parse_density(records, lineno), version)

    pairs = []
    for ln, toks in records:
        if len(toks) != 4:
            raise ParseError(f"expected 4 fields, got {len(toks)}", ln)
        a, b, c, d = (_parse_float(t, ln) for t in toks)
        pairs.append((complex(a, b), complex(c, d)))
    try:
        payload = KINDS[kind](tuple(pairs))
    except ValueError as exc:
        raise ParseError(str(exc), records[0][0] if records else lineno) from None
    return Document(kind, payload, version)


def _parse_density(records, header_line) -> BoundaryDensity:
    if not records:
        raise ParseError("density needs a 'radius M' record", header_line)
    ln, toks = records[0]
    if len(toks) != 2:
        raise ParseError("expected 'radius M'", ln)
    radius = _parse_float(toks[0], ln)
    try:
        m = int(toks[1])
    except ValueError:
        raise ParseError(f"grid size must be an integer, got {toks[1]!r}", ln) from None
    samples = []
    for sl, st in records[1:]:
        if len(st) != 2:
            raise ParseError(f"expected 2 fields, got {len(st)}", sl)
        samples.append(complex(_parse_float(st[0], sl), _parse_float(st[1], sl)))
    if len(samples) != m:
        raise ParseError(f"declared {m} samples but found {len(samples)}", ln)
    try:
        return BoundaryDensity(radius, np.array(samples, dtype=complex))
    except ValueError as exc:
        raise ParseError(str(exc), ln) from None


def serialize_document(doc: Document | Payload) -> str:
    if not isinstance(doc, Document):
        doc = Document(_kind_of(doc), doc)
    lines = [f"{MAGIC} v{doc.format_version} {doc.kind}"]
    p = doc.payload
    if doc.kind == "density":
        lines.append(f"{fmt(p.radius)} {p.size}")
        lines.extend(f"{fmt(h.real)} {fmt(h.imag)}" for h in p.samples)
    else:
        pairs = p.terms if doc.kind == "expsum" else p.atoms
        lines.extend(f"{fmt(a.real)} {fmt(a.imag)} {fmt(w.real)} {fmt(w.imag)}" for a, w in pairs)
    return "\n".join(lines) + "\n"


def read_document(path: str | Path) -> Document:
    if str(path) == "-":
        return parse_document(sys.stdin.read())
    return parse_document(Path(path).read_text())


# -- reports -----------------------------------------------------------------

def _flatten(obj, prefix=""):
    # yields (key, scalar) pairs and ("<table>", rows) for atom lists
    if is_dataclass(obj):
        for f in fields(obj):
            yield from _flatten(getattr(obj, f.name), f"{prefix}{f.name}.")
        return
    key = prefix[:-1]
    if isinstance(obj, Enum):
        yield key, obj.value
    elif isinstance(obj, tuple) and obj and isinstance(obj[0], tuple):
        yield key, [(complex(a), complex(w)) for a, w in obj]
    elif isinstance(obj, tuple):
        yield key, []
    else:
        yield key, obj


def _scalar(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower()
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    if isinstance(v, complex):
        return f"{fmt(v.real)} {fmt(v.imag)}"
    return str(v)


def render_records(sections: dict) -> str:
    """One ``key value`` record per line; atom tables become ``key.row`` records."""
    out = []
    for name, obj in sections.items():
        for key, val in _flatten(obj, f"{name}."):
            if isinstance(val, list):
                out.append(f"{key}.count {len(val)}")
                out.extend(f"{key}.row {_scalar(a)} {_scalar(w)}" for a, w in val)
            else:
                out.append(f"{key} {_scalar(val)}")
    return "\n".join(out) + "\n"


def render_human(sections: dict) -> str:
    """Aligned key/value blocks with an atom table per section."""
    out = []
    for name, obj in sections.items():
        out.append(f"[{name}]")
        scalars, tables = [], []
        for key, val in _flatten(obj):
            (tables if isinstance(val, list) else scalars).append((key, val))
        width = max((len(k) for k, _ in scalars), default=0)
        for key, val in scalars:
            shown = f"{val:.10g}" if isinstance(val, float) else _scalar(val)
            out.append(f"  {key.ljust(width)}  {shown}")
        for key, rows in tables:
            out.append(f"  {key}: {len(rows)} atoms")
            if rows:
                out.append(f"    {'location':>34}  {'weight':>34}  {'|weight|':>10}")
                for a, w in rows:
                    out.append(f"    {a.real:>16.9g} {a.imag:>+16.9g}j  {w.real:>16.9g} {w.imag:>+16.9g}j"
                               f"  {abs(w):>10.3e}")
        out.append("")
    return "\n".join(out)
