"""Plain-text surface and map files.

Surface file::

    # comment
    name = example1_S1
    field = Q                 # or Q(sqrt(3))
    p1 = 0 1 1 0 1            # ascending coefficients of t
    p1_den = 1 0 1            # optional denominator, default 1
    p2 = ...
    p3 = ...
    q1 = 0 1 0 1
    q2 = ...
    q3 = ...

Coefficients are integers, fractions ``3/4`` or, in a quadratic field,
``a+b*sqrt(d)`` written without spaces.

Map file (as printed by ``ruled-equiv``)::

    A = a11 a12 a13 a21 a22 a23 a31 a32 a33
    b = b1 b2 b3
    psi = alpha beta gamma delta
    k = 1
    c_num = 0 2
    c_den = 1
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .algebra.scalars import FieldError, format_scalar, is_squarefree, parse_scalar
from .algebra.unipoly import RatFunc, UniPoly
from .maps import AffineMap, MobiusMap, Reparam
from .surface import RuledSurface

_FIELD_RE = re.compile(r"^Q(?:\(sqrt\((\d+)\)\))?$")
_SURFACE_KEYS = {"name", "field"} | {f"{x}{i}" for x in "pq" for i in (1, 2, 3)} | {
    f"{x}{i}_den" for x in "pq" for i in (1, 2, 3)}
_MAP_KEYS = {"A", "b", "psi", "k", "c_num", "c_den", "n"}


class FileFormatError(ValueError):
    def __init__(self, msg: str, path=None, line: int | None = None):
        where = f"{path or '<input>'}" + (f":{line}" if line else "")
        super().__init__(f"{where}: {msg}")
        self.path, self.line = path, line


@dataclass
class SurfaceFile:
    name: str | None
    d: int | None  # radicand of the field, None for Q
    surface: RuledSurface


def _key_values(text: str, path, allowed):
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FileFormatError(f"expected 'key = value', got {raw.strip()!r}", path, lineno)
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in allowed:
            raise FileFormatError(f"unknown key {key!r}", path, lineno)
        if key in out:
            raise FileFormatError(f"duplicate key {key!r}", path, lineno)
        out[key] = (value, lineno)
    return out


def _parse_field(value: str, path, line):
    m = _FIELD_RE.match(value.replace(" ", ""))
    if not m:
        raise FileFormatError(f"field must be Q or Q(sqrt(d)), got {value!r}", path, line)
    if m.group(1) is None:
        return None
    d = int(m.group(1))
    if d < 2 or not is_squarefree(d):
        raise FileFormatError(f"sqrt({d}): radicand must be a square-free integer > 1", path, line)
    return d


def _scalars(value: str, line, d, path):
    try:
        return [parse_scalar(tok, d) for tok in value.split()]
    except (ValueError, FieldError) as e:
        raise FileFormatError(str(e), path, line) from None


def parse_surface(text: str, path=None) -> SurfaceFile:
    kv = _key_values(text, path, _SURFACE_KEYS)
    d = None
    if "field" in kv:
        d = _parse_field(*kv["field"], path)
    comps = {}
    for x in "pq":
        for i in (1, 2, 3):
            key = f"{x}{i}"
            if key not in kv:
                raise FileFormatError(f"missing {key}", path)
            num = UniPoly(_scalars(*kv[key], d, path))
            den = UniPoly((1,))
            if key + "_den" in kv:
                den = UniPoly(_scalars(*kv[key + "_den"], d, path))
                if not den:
                    raise FileFormatError(f"zero denominator in {key}_den", path, kv[key + "_den"][1])
            comps[key] = RatFunc(num, den)
    name = kv["name"][0] if "name" in kv else None
    if name is None and path is not None:
        name = Path(path).stem
    p = [comps[f"p{i}"] for i in (1, 2, 3)]
    q = [comps[f"q{i}"] for i in (1, 2, 3)]
    if all(not f for f in q):
        raise FileFormatError("direction q is identically zero", path)
    return SurfaceFile(name, d, RuledSurface(p, q, name))


def read_surface(path) -> RuledSurface:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FileFormatError(f"cannot read: {e.strerror}", path) from None
    return parse_surface(text, path).surface


def _coeffs(p: UniPoly) -> str:
    return " ".join(format_scalar(c) for c in p.c) if p.c else "0"


def format_surface(S: RuledSurface, name: str | None = None) -> str:
    name = name or S.name
    lines = []
    if name:
        lines.append(f"name = {name}")
    d = S.field_d()
    lines.append("field = Q" if d is None else f"field = Q(sqrt({d}))")
    for x, comps in (("p", S.p), ("q", S.q)):
        for i, f in enumerate(comps, 1):
            f = f if isinstance(f, RatFunc) else RatFunc.from_poly(f)
            lines.append(f"{x}{i} = {_coeffs(f.num)}")
            if f.den.degree > 0 or f.den.lc != 1:
                lines.append(f"{x}{i}_den = {_coeffs(f.den)}")
    return "\n".join(lines) + "\n"


def parse_map(text: str, d=None, path=None):
    """(AffineMap, Reparam or None)."""
    kv = _key_values(text, path, _MAP_KEYS)
    if "A" not in kv or "b" not in kv:
        raise FileFormatError("map needs A and b", path)
    A = _scalars(*kv["A"], d, path)
    b = _scalars(*kv["b"], d, path)
    if len(A) != 9 or len(b) != 3:
        raise FileFormatError("A needs 9 entries and b needs 3", path)
    f = AffineMap([A[0:3], A[3:6], A[6:9]], b)
    if "psi" not in kv:
        return f, None
    psi = _scalars(*kv["psi"], d, path)
    if len(psi) != 4:
        raise FileFormatError("psi needs alpha beta gamma delta", path, kv["psi"][1])
    k = _scalars(*kv.get("k", ("1", None)), d, path)[0]
    num = UniPoly(_scalars(*kv["c_num"], d, path)) if "c_num" in kv else UniPoly()
    den = UniPoly(_scalars(*kv["c_den"], d, path)) if "c_den" in kv else UniPoly((1,))
    n = int(kv["n"][0]) if "n" in kv else None
    return f, (MobiusMap(*psi), k, RatFunc(num, den), n)


def format_map(f: AffineMap, phi: Reparam | None = None) -> str:
    lines = [
        "A = " + " ".join(format_scalar(x) for row in f.A for x in row),
        "b = " + " ".join(format_scalar(x) for x in f.b),
    ]
    if phi is not None:
        lines += [
            "psi = " + " ".join(format_scalar(x) for x in phi.psi.as_tuple()),
            f"k = {format_scalar(phi.k)}",
            f"c_num = {_coeffs(phi.c.num)}",
            f"c_den = {_coeffs(phi.c.den)}",
            f"n = {phi.n}",
        ]
    return "\n".join(lines) + "\n"
