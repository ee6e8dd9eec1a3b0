"""Serialisation of results to JSON-compatible values.

Rationals are written as ``"p/q"`` strings (``"2/1"`` for integers held as
rationals) and element sets as sorted index lists.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..covers import CoverReport, FractionalCover
from ..fair import FairnessReport, FairRepTrace
from ..intersection import ExchangeWalk
from ..sets import ElementSet
from .checks import CheckResult


def rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def to_jsonable(obj: Any, timings: bool = False) -> Any:
    rec = lambda o: to_jsonable(o, timings)  # noqa: E731
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, ElementSet):
        return list(obj.members())
    if isinstance(obj, FractionalCover):
        return {"total": rational(obj.total),
                "entries": [{"edge": list(e.members()), "weight": rational(w)}
                            for e, w in obj.entries]}
    if isinstance(obj, CoverReport):
        return {"value": rec(obj.value), "method": obj.method, "witness": rec(obj.witness)}
    if isinstance(obj, ExchangeWalk):
        return {"S": rec(obj.S), "T": rec(obj.T), "s_order": list(obj.s_order),
                "t_order": list(obj.t_order), "intermediates": [rec(r) for r in obj.intermediates]}
    if isinstance(obj, FairnessReport):
        return {"alpha": rational(obj.alpha),
                "blocks": [{"size": b.size, "required_fair": b.required_fair,
                            "required_almost": b.required_almost,
                            "required_linear": rational(b.required_linear),
                            "achieved": b.achieved, "verdict": b.verdict} for b in obj.blocks]}
    if isinstance(obj, FairRepTrace):
        return {"n": obj.n, "zeta": rec(obj.zeta), "g": obj.g, "delta": rec(obj.delta),
                "A": rec(obj.A), "S": rec(obj.S), "T": rec(obj.T), "walk": rec(obj.walk),
                "chosen": rec(obj.chosen), "chain_index": obj.chain_index,
                "report": rec(obj.report)}
    if isinstance(obj, CheckResult):
        out = {"check": obj.check, "label": obj.label, "verdict": obj.verdict,
               "certificate": rec(obj.certificate), "details": rec(obj.details)}
        if timings:
            out["seconds"] = round(obj.seconds, 6)
        return out
    if dataclasses.is_dataclass(obj):
        return {f.name: rec(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): rec(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rec(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_report(path: str | Path, payload: Any, timings: bool = False) -> None:
    with open(path, "w") as fh:
        json.dump(to_jsonable(payload, timings), fh, indent=2, sort_keys=True)
        fh.write("\n")
