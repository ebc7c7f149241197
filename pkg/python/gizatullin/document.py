"""
Surface documents: the JSON text form of an extended divisor.

    {
      "weights": [0, 0, -2, -3, -2, -2, -3],
      "feathers": [
        {"component": 4, "bridge": -1, "tail": [], "point": {"r": "1", "theta": "0"}}
      ],
      "flags": {"smooth": true, "condition_star": true}
    }

Rationals are strings ("p/q" or an integer) so that no float ever enters
the exact data. Semantic checks are left to ``extdiv.validate``.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .configinv import CStarPoint
from .errors import GizatullinError, SurfaceSyntaxError
from .extdiv import ExtendedDivisor, Feather
from .zigzag import WeightedChain

logger = logging.getLogger(__name__)

_TOP_LEVEL = ("weights", "feathers", "flags")
_FEATHER_KEYS = ("component", "bridge", "tail", "point", "mother")
_FLAG_KEYS = ("smooth", "condition_star")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SurfaceSyntaxError(f"expected an integer, got {value!r}", field=where)
    return value


def _int_list(value: Any, where: str) -> List[int]:
    if not isinstance(value, list):
        raise SurfaceSyntaxError(f"expected a list of integers, got {value!r}", field=where)
    return [_int(v, f"{where}[{k}]") for k, v in enumerate(value)]


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise SurfaceSyntaxError(f'rationals are written as strings "p/q", got {value!r}', field=where)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SurfaceSyntaxError(f"not a rational: {value!r}", field=where) from None


def _object(value: Any, where: str, allowed) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise SurfaceSyntaxError(f"expected an object, got {value!r}", field=where)
    unknown = sorted(set(value) - set(allowed))
    if unknown:
        raise SurfaceSyntaxError(f"unknown keys {unknown}", field=where)
    return value


def _point(value: Any, where: str) -> CStarPoint:
    obj = _object(value, where, ("r", "theta"))
    for key in ("r", "theta"):
        if key not in obj:
            raise SurfaceSyntaxError(f"missing key {key!r}", field=where)
    modulus = _rational(obj["r"], f"{where}.r")
    angle = _rational(obj["theta"], f"{where}.theta")
    try:
        return CStarPoint(modulus, angle)
    except GizatullinError as exc:
        field = f"{where}.r" if modulus <= 0 else f"{where}.theta"
        raise SurfaceSyntaxError(str(exc), field=field) from None


def _feather(value: Any, where: str) -> Feather:
    obj = _object(value, where, _FEATHER_KEYS)
    for key in ("component", "point"):
        if key not in obj:
            raise SurfaceSyntaxError(f"missing key {key!r}", field=where)
    mother = obj.get("mother")
    return Feather(
        component=_int(obj["component"], f"{where}.component"),
        point=_point(obj["point"], f"{where}.point"),
        bridge=_int(obj.get("bridge", -1), f"{where}.bridge"),
        tail=tuple(_int_list(obj.get("tail", []), f"{where}.tail")),
        mother=None if mother is None else _int(mother, f"{where}.mother"),
    )


def _flag(flags: Dict[str, Any], key: str) -> Optional[bool]:
    value = flags.get(key)
    if value is not None and not isinstance(value, bool):
        raise SurfaceSyntaxError(f"expected true or false, got {value!r}", field=f"flags.{key}")
    return value


def parse_surface(text: str) -> ExtendedDivisor:
    """Parse a surface document; errors name the line or the field at fault."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurfaceSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from None
    doc = _object(raw, "document", _TOP_LEVEL)
    if "weights" not in doc:
        raise SurfaceSyntaxError("missing key 'weights'", field="document")
    weights = _int_list(doc["weights"], "weights")
    if not weights:
        raise SurfaceSyntaxError("a chain needs at least one component", field="weights")
    feathers = doc.get("feathers", [])
    if not isinstance(feathers, list):
        raise SurfaceSyntaxError(f"expected a list, got {feathers!r}", field="feathers")
    flags = _object(doc.get("flags", {}), "flags", _FLAG_KEYS)
    div = ExtendedDivisor(
        WeightedChain(tuple(weights)),
        tuple(_feather(f, f"feathers[{k}]") for k, f in enumerate(feathers)),
        expect_smooth=_flag(flags, "smooth"),
        expect_condition_star=_flag(flags, "condition_star"),
    )
    logger.debug("parsed %s with %d feathers", div.chain, len(div.feathers))
    return div


def _feather_doc(f: Feather) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "component": f.component,
        "bridge": f.bridge,
        "tail": list(f.tail),
        "point": {"r": str(f.point.modulus), "theta": str(f.point.angle)},
    }
    if f.mother is not None:
        doc["mother"] = f.mother
    return doc


def surface_document(div: ExtendedDivisor) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "weights": list(div.chain.weights),
        "feathers": [_feather_doc(f) for f in div.feathers],
    }
    flags = {}
    if div.expect_smooth is not None:
        flags["smooth"] = div.expect_smooth
    if div.expect_condition_star is not None:
        flags["condition_star"] = div.expect_condition_star
    if flags:
        doc["flags"] = flags
    return doc


def emit_surface(div: ExtendedDivisor) -> str:
    """Canonical text: fixed key order, two-space indent, trailing newline."""
    return json.dumps(surface_document(div), indent=2, ensure_ascii=False) + "\n"
