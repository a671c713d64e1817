"""Parsing of the small textual specs shared by the CLI and the verifier.

Index expressions may mention ``n``: ``"n"``, ``"n-2"``, ``"3"``.
"""
from __future__ import annotations

import re

from .chain_core import Carrier, Chain, ChainError
from .derivations import SelfMap, delta, shift_derivation
from .strings import (
    StringType2,
    StringTypeM,
    SubfamilyKind,
    constants_ideal,
    string_type2,
    string_type_m,
    subfamily,
)


class SpecResolution(ChainError):
    pass


_EXPR = re.compile(r"^\s*(?:(n)\s*(?:([+-])\s*(\d+))?|(\d+))\s*$")


def parse_int_expr(text: str, n: int) -> int:
    match = _EXPR.match(text)
    if not match:
        raise SpecResolution(f"cannot read index expression {text!r}")
    if match.group(4) is not None:
        return int(match.group(4))
    value = n
    if match.group(2):
        offset = int(match.group(3))
        value = value + offset if match.group(2) == "+" else value - offset
    return value


def parse_n_range(text: str) -> range:
    """``"4"`` or ``"2..6"`` (inclusive)."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return range(int(lo), int(hi) + 1)
        except ValueError:
            raise SpecResolution(f"bad range {text!r}") from None
    try:
        value = int(text)
    except ValueError:
        raise SpecResolution(f"bad range {text!r}") from None
    return range(value, value + 1)


def parse_string(n: int, text: str) -> StringType2 | StringTypeM:
    anchors = [parse_int_expr(part, n) for part in text.split(",") if part.strip()]
    if len(anchors) == 2:
        return string_type2(Chain(n), *anchors)
    return string_type_m(Chain(n), anchors)


def _string_index(string, text: str):
    n = string.n
    if isinstance(string, StringType2):
        if ":" in text or "," in text:
            raise SpecResolution(f"type-2 strings take a single index, got {text!r}")
        k = parse_int_expr(text, n)
        return string.alpha(k)
    parts = re.split(r"[:,]", text)
    if len(parts) != 2:
        raise SpecResolution(f"type-m strings need an index pair k,l; got {text!r}")
    k, l = (parse_int_expr(p, n) for p in parts)
    return string.alpha(k, l)


def parse_derivation(text: str, string, domain: Carrier | None = None) -> SelfMap:
    """``"D"``, ``"delta:k"`` (type 2) or ``"delta:k,l"`` (type m)."""
    text = text.strip()
    domain = string.elements if domain is None else domain
    try:
        if text == "D":
            if not isinstance(string, StringType2):
                raise SpecResolution("the shift map D is defined on type-2 strings only")
            d = shift_derivation(string)
            return d if domain == string.elements else d.restrict(domain, domain)
        if text.startswith("delta:"):
            alpha = _string_index(string, text[len("delta:"):])
            label = f"delta({string.label(string.index_of(alpha))})"
            return delta(alpha, domain, string.elements, label=label)
    except SpecResolution:
        raise
    except ChainError as exc:
        raise SpecResolution(str(exc)) from exc
    raise SpecResolution(f"unknown derivation spec {text!r}")


_NAMED = {
    "N_a": SubfamilyKind.A_NILPOTENTS,
    "N_b": SubfamilyKind.B_NILPOTENTS,
    "Id": SubfamilyKind.IDEMPOTENTS,
    "S": SubfamilyKind.S,
    "T": SubfamilyKind.T,
    "DS": SubfamilyKind.DS,
}


def parse_subset(text: str, string) -> Carrier:
    """``"I:j"``, ``"CO"``, a named subfamily, ``"string"`` or ``"{i, j, ...}"``."""
    text = text.strip()
    try:
        if text in ("string", "R"):
            return string.elements
        if text == "CO":
            return constants_ideal(string).carrier
        if text.startswith("I:"):
            if not isinstance(string, StringType2):
                raise SpecResolution("differential ideals I_j are defined on type-2 strings")
            j = parse_int_expr(text[2:], string.n)
            return subfamily(string, SubfamilyKind.DIFFERENTIAL_IDEAL, j).carrier
        if text in _NAMED:
            if not isinstance(string, StringType2):
                raise SpecResolution(f"{text} is defined on type-2 strings")
            return subfamily(string, _NAMED[text]).carrier
        if text.startswith("{") and text.endswith("}"):
            body = text[1:-1].strip()
            if not body:
                return Carrier(string.chain, ())
            if isinstance(string, StringType2):
                items = [_string_index(string, p) for p in body.split(",")]
            else:
                items = [_string_index(string, p) for p in body.split(";")]
            return Carrier(string.chain, tuple(items))
    except SpecResolution:
        raise
    except ChainError as exc:
        raise SpecResolution(str(exc)) from exc
    raise SpecResolution(f"unknown subset spec {text!r}")
