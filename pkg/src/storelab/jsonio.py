"""Decimal-preserving JSON helpers.

Money never passes through binary floating point on the way in: every load
in catalog paths parses numeric literals straight into ``Decimal``. On the
way out a ``Decimal`` is emitted as a plain JSON number via its shortest
float representation, which is checked to reparse to the same value (always
true for 2-fraction-digit prices of sane magnitude).
"""

from __future__ import annotations

import json
from decimal import Decimal
from pathlib import Path
from typing import Any


def loads(text: str) -> Any:
    return json.loads(text, parse_float=Decimal)


def load_path(path: Path) -> Any:
    return loads(path.read_text(encoding="utf-8"))


def _jsonable(value: Any) -> Any:
    if isinstance(value, Decimal):
        as_float = float(value)
        if Decimal(repr(as_float)) != value:
            # Exact-value fallback for decimals a float cannot carry.
            return str(value)
        return as_float
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return value


def dumps(obj: Any, *, indent: int | None = 2) -> str:
    return json.dumps(_jsonable(obj), indent=indent, ensure_ascii=False)


def dump_path(path: Path, obj: Any) -> None:
    path.write_text(dumps(obj) + "\n", encoding="utf-8")


def money(value: Decimal | str | int) -> Decimal:
    """Normalize a price to two fraction digits."""
    return Decimal(value).quantize(Decimal("0.01"))
