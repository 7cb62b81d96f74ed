"""Canonical JSON: sorted keys, rationals as "p/q" strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence, Tuple

SCHEMA_VERSION = "rootdatum/1"


def fmt_rational(x) -> str:
    return str(Fraction(x))


def parse_rational(s) -> Fraction:
    if isinstance(s, float):
        raise ValueError("floats are not accepted; write rationals as 'p/q' strings")
    return Fraction(s)


def fmt_vector(v: Sequence) -> list:
    return [fmt_rational(x) for x in v]


def parse_vector(v: Sequence) -> Tuple[Fraction, ...]:
    return tuple(parse_rational(x) for x in v)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"
