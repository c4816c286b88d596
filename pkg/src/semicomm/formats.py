"""Reading and writing the semiring text format.

Two spellings are accepted.

JSON::

    {"order": 2, "zero": 0, "add": [[0, 1], [1, 1]], "mul": [[0, 0], [0, 0]]}

Keyword form, whitespace-delimited, ``#`` starts a comment::

    order 2
    zero 0
    add
      0 1
      1 1
    mul
      0 0
      0 0

Matrices are row-major: row ``x``, column ``y`` holds ``x + y`` (resp. ``x * y``).
"""

import json

from .algebra import FiniteSemiring, semiring_algebra, validate_semiring
from .errors import ParseError

KEYS = ("order", "zero", "add", "mul")


def _parse_keyword(text):
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    rec = {}
    i = 0

    def take_int():
        nonlocal i
        if i >= len(tokens):
            raise ParseError("unexpected end of input", i)
        try:
            v = int(tokens[i])
        except ValueError:
            raise ParseError(f"expected an integer, got {tokens[i]!r}", i) from None
        i += 1
        return v

    while i < len(tokens):
        key = tokens[i]
        i += 1
        if key not in KEYS:
            raise ParseError(f"unknown field {key!r}", i - 1)
        if key in ("order", "zero"):
            rec[key] = take_int()
        else:
            if "order" not in rec:
                raise ParseError(f"{key!r} given before 'order'", i - 1)
            n = rec["order"]
            rec[key] = [[take_int() for _ in range(n)] for _ in range(n)]
    return rec


def parse_record(text) -> dict:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.pos) from None
    else:
        rec = _parse_keyword(text)
    missing = [k for k in KEYS if k not in rec]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}")
    n = rec["order"]
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"order must be a positive integer, got {n!r}")
    for key in ("add", "mul"):
        m = rec[key]
        if len(m) != n or any(len(row) != n for row in m):
            raise ParseError(f"{key!r} must be a {n}x{n} matrix")
        if any(not isinstance(v, int) or not 0 <= v < n for row in m for v in row):
            raise ParseError(f"{key!r} has entries outside 0..{n - 1}")
    return rec


def parse_semiring(text, name=None) -> FiniteSemiring:
    """Parse and validate; raises ParseError or AxiomViolation."""
    rec = parse_record(text)
    alg = semiring_algebra(rec["add"], rec["mul"], rec["zero"])
    return validate_semiring(alg, rec["zero"], name=name)


def to_record(s: FiniteSemiring) -> dict:
    return {
        "order": s.order,
        "zero": s.zero,
        "add": [list(r) for r in s.plus],
        "mul": [list(r) for r in s.times],
    }


def dump_json(s: FiniteSemiring) -> str:
    """Canonical single-line JSON encoding."""
    return json.dumps(to_record(s), separators=(", ", ": "))


def dump_text(s: FiniteSemiring) -> str:
    """Canonical keyword encoding."""
    lines = [f"order {s.order}", f"zero {s.zero}", "add"]
    lines += ["  " + " ".join(map(str, row)) for row in s.plus]
    lines.append("mul")
    lines += ["  " + " ".join(map(str, row)) for row in s.times]
    return "\n".join(lines) + "\n"
