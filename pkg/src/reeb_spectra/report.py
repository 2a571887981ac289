"""JSON/CSV encoding of reports.

Exact values travel as canonical grammar strings (``value_exact``) next to
their nearest double (``value_float``).  Infinite gaps are the string
``"inf"`` in both fields.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Optional, Sequence

from .approx import BestApprox, traynor_width
from .closing import CloseReport, GapReport
from .exactnum import ExactScalar, format_exact
from .spectrum import ActionSpectrum
from .toric import ReebOrbitFamily

INF = "inf"


def exact(x: Optional[ExactScalar]):
    return INF if x is None else format_exact(x)


def flt(x: Optional[ExactScalar]):
    return INF if x is None else float(x)


def spectrum_rows(seq: ActionSpectrum) -> list[dict]:
    rows = []
    for k, term in enumerate(seq.terms):
        m, n = term.witness if term.witness is not None else (None, None)
        rows.append({"k": k, "value_exact": exact(term.value),
                     "value_float": float(term.value), "m": m, "n": n})
    return rows


def orbit_rows(families: Iterable[ReebOrbitFamily]) -> list[dict]:
    return [{
        "kind": f.kind,
        "value_exact": exact(f.action),
        "value_float": float(f.action),
        "m": f.normal[0],
        "n": f.normal[1],
        "location": ";".join(f"({exact(x)},{exact(y)})" for x, y in f.location),
    } for f in families]


def approx_dict(ba: BestApprox) -> dict:
    width = traynor_width(ba)
    return {
        "a": exact(ba.a), "L": exact(ba.L),
        "m_minus": ba.m_minus, "n_minus": ba.n_minus,
        "m_plus": ba.m_plus, "n_plus": ba.n_plus,
        "det": ba.det,
        "width_exact": exact(width), "width_float": float(width),
    }


def gap_dict(rep: GapReport, **context) -> dict:
    out = {k: exact(v) for k, v in context.items()}
    out.update({
        "L": exact(rep.L),
        "gap": exact(rep.gap),
        "gap_float": flt(rep.gap),
        "k_star": rep.k_star,
        "c_k_star": None if rep.c_k_star is None else exact(rep.c_k_star),
        "c_k_star_minus_1": None if rep.c_k_star_minus_1 is None else exact(rep.c_k_star_minus_1),
    })
    return out


def close_dict(rep: CloseReport) -> dict:
    return {
        "a": exact(rep.a) if rep.a is not None else None,
        "L": exact(rep.L),
        "value_exact": exact(rep.value),
        "value_float": float(rep.value),
        "side": rep.side,
        "approx": approx_dict(rep.approx) if rep.approx is not None else None,
    }


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def dumps_csv(rows: Sequence[dict], columns: Optional[Sequence[str]] = None) -> str:
    if columns is None:
        columns = list(rows[0]) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def flatten(obj, prefix="") -> dict:
    """Nested dicts to one flat row with ``outer.inner`` keys."""
    flat = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(flatten(v, key + "."))
        elif isinstance(v, list):
            flat[key] = json.dumps(v)
        else:
            flat[key] = v
    return flat
