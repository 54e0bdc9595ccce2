"""Strict parsers for exact numeric command-line and file input."""

from __future__ import annotations

import json
import re
from fractions import Fraction

_NUMBER = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(token) -> Fraction:
    if isinstance(token, bool):
        raise ValueError(f"malformed number: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, Fraction):
        return token
    s = str(token).strip()
    if not _NUMBER.fullmatch(s):
        raise ValueError(f"malformed number: {token!r}")
    value = Fraction(s)
    return value


def parse_vector(text: str, length: int, what: str) -> tuple[Fraction, ...]:
    s = text.strip()
    if s.startswith("["):
        try:
            items = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON {what}: {exc}") from None
        if not isinstance(items, list):
            raise ValueError(f"{what} must be a JSON array")
        items = [i if isinstance(i, (int, str)) else repr(i) for i in items]
    else:
        items = [p for p in s.split(",")] if s else []
    if len(items) != length:
        raise ValueError(f"{what} needs exactly {length} values, got {len(items)}")
    return tuple(parse_rational(i) for i in items)


def parse_heights(text: str) -> tuple[Fraction, ...]:
    """20 coefficients, comma separated or as a JSON array; ``a/b`` allowed."""
    return parse_vector(text, 20, "height vector")


def parse_pluecker(text: str) -> tuple[Fraction, ...]:
    """Six Pluecker coordinates in the order P01,P02,P03,P12,P13,P23."""
    return parse_vector(text, 6, "Pluecker vector")
