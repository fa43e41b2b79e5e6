"""Instance specs for the command line: shorthand strings, inline JSON or @file.json.

Ring shorthand:   zmod6, z6, tri2 (upper triangular 2x2 over Z_2), mat2x2 or mat2x2p3 (2x2 over Z_p),
                  products joined by '*' (zmod2*zmod3).
Module shorthand: any ring shorthand (its regular module), z2+z2 (abelian group, ring
                  Z_lcm), z2/z4 (Z_2 as a Z_4-module), powers zmod2^3.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import SpecError
from .modules import FiniteModule, module_make
from .rings import FiniteRing, ring_make

_ZMOD = re.compile(r"^(?:zmod|z)(\d+)$")
_TRI = re.compile(r"^(?:tri|triangular)(\d+)$")
_MAT = re.compile(r"^mat(\d+)x(\d+)(?:p(\d+))?$")
_OVER = re.compile(r"^z(\d+)/z(?:mod)?(\d+)$")


def _load(text: str):
    text = text.strip()
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            return json.loads(path.read_text())
        except OSError as exc:
            raise SpecError(f"cannot read spec file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecError(f"spec file {path} is not JSON: {exc}") from exc
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"inline spec is not JSON: {exc}") from exc
    return text


def ring_spec(text) -> dict:
    obj = _load(text) if isinstance(text, str) else text
    if isinstance(obj, dict):
        return obj
    s = obj.lower().replace(" ", "")
    if "*" in s:
        return {"kind": "product", "factors": [ring_spec(part) for part in s.split("*")]}
    if m := _ZMOD.match(s):
        return {"kind": "zmod", "m": int(m.group(1))}
    if m := _TRI.match(s):
        return {"kind": "triangular", "p": int(m.group(1))}
    if m := _MAT.match(s):
        d1, d2 = int(m.group(1)), int(m.group(2))
        if d1 != d2:
            raise SpecError("matrix rings need square shapes")
        return {"kind": "matrix", "p": int(m.group(3) or 2), "d": d1}
    raise SpecError(f"unrecognised ring shorthand {obj!r}")


def module_spec(text) -> dict:
    obj = _load(text) if isinstance(text, str) else text
    if isinstance(obj, dict):
        return obj
    s = obj.lower().replace(" ", "")
    if "+" in s:
        inv = []
        for part in s.split("+"):
            m = _ZMOD.match(part)
            if not m:
                raise SpecError(f"abelian summands must look like z<n>, got {part!r}")
            inv.append(int(m.group(1)))
        return {"kind": "abelian", "invariants": inv}
    if m := _OVER.match(s):
        return {"kind": "zd-over-zm", "d": int(m.group(1)), "m": int(m.group(2))}
    if "^" in s:
        base, power = s.rsplit("^", 1)
        if not power.isdigit() or int(power) < 1:
            raise SpecError(f"bad power in {obj!r}")
        factor = module_spec(base)
        return factor if int(power) == 1 else {"kind": "product", "factors": [factor] * int(power)}
    return {"kind": "regular", "ring": ring_spec(s)}


def parse_ring(text) -> FiniteRing:
    return ring_make(ring_spec(text))


def parse_module(text) -> FiniteModule:
    return module_make(module_spec(text))
