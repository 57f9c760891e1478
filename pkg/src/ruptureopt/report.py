"""Report rows and their CSV form.

Designs print as ``10 G^T``: joints separated by ``;``, muscles by spaces.
Radii and scores carry six significant digits.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ruptureopt.evaluation import RobustnessEval

REPORT_FIELDS = ["scenario", "design", "radii", "e_value", "e_count", "e", "no_solution", "wall_time"]


def sig6(x: float) -> float:
    return float(f"{x:.6g}") + 0.0


def fmt(x: float) -> str:
    return f"{sig6(x):.6g}"


def _entry(v: float) -> str:
    return f"{round(10.0 * v, 6) + 0.0:g}"


def format_design(G) -> str:
    G = np.asarray(G, dtype=float)
    if G.ndim == 1:
        G = G[:, None]
    return "; ".join(" ".join(_entry(v) for v in col) for col in G.T)


def parse_design(text: str) -> np.ndarray:
    rows = [[float(v) for v in part.split()] for part in text.split(";")]
    if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
        raise ValueError(f"malformed design {text!r}")
    return np.array(rows).T / 10.0


def fingerprint(G) -> str:
    """Permutation-invariant signature: muscle rows sorted, values in meters."""
    G = np.asarray(G, dtype=float)
    rows = sorted(tuple(round(v, 6) + 0.0 for v in row) for row in G)
    if G.shape[1] == 1:
        return "(" + ",".join(f"{r[0]:g}" for r in rows) + ")"
    return "(" + ",".join("(" + ",".join(f"{v:g}" for v in r) + ")" for r in rows) + ")"


@dataclass(frozen=True)
class ReportRow:
    scenario: str
    design: str
    radii: tuple
    e_value: float
    e_count: int
    e: float
    wall_time: Optional[float] = None

    @classmethod
    def from_eval(cls, scenario: str, G, ev: RobustnessEval, wall_time=None) -> "ReportRow":
        return cls(scenario, format_design(G), tuple(sig6(r) for r in ev.r), sig6(ev.e_value),
                   int(ev.e_count), sig6(ev.e), None if wall_time is None else sig6(wall_time))

    @property
    def no_solution(self) -> bool:
        return self.e == 0.0

    def as_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "design": self.design,
            "radii": " ".join(fmt(r) for r in self.radii),
            "e_value": fmt(self.e_value),
            "e_count": str(self.e_count),
            "e": fmt(self.e),
            "no_solution": "yes" if self.no_solution else "no",
            "wall_time": "" if self.wall_time is None else fmt(self.wall_time),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReportRow":
        return cls(
            d["scenario"],
            d["design"],
            tuple(float(v) for v in d["radii"].split()),
            float(d["e_value"]),
            int(d["e_count"]),
            float(d["e"]),
            float(d["wall_time"]) if d.get("wall_time") else None,
        )


def write_csv(rows, fh, fields=REPORT_FIELDS) -> None:
    w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row.as_dict() if hasattr(row, "as_dict") else row)


def report_csv(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_report_csv(fh) -> list:
    return [ReportRow.from_dict(d) for d in csv.DictReader(fh)]
