"""Report records and their JSON/CSV wire formats.

JSON is emitted by a tiny purpose-built serializer so that every float is
printed with 17 significant digits (lossless round trips) and records are
byte-identical across runs; CSV uses a fixed column order shared by every
command.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

CSV_COLUMNS = (
    "a",
    "c",
    "theta",
    "A",
    "B",
    "Bprime",
    "alpha1",
    "alpha2",
    "alpha3",
    "beta1",
    "beta2",
    "beta3",
    "ordering",
    "verdict",
    "max_err",
    "degenerate",
)

CSV_HEADER = ",".join(CSV_COLUMNS)


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _json_fragment(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    if isinstance(v, str):
        escaped = v.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_fragment(x) for x in v) + "]"
    if isinstance(v, dict):
        items = ", ".join(f'{_json_fragment(str(k))}: {_json_fragment(x)}' for k, x in v.items())
        return "{" + items + "}"
    raise TypeError(f"cannot serialize {type(v)!r}")


def json_line(pairs: dict[str, Any]) -> str:
    return _json_fragment(pairs)


@dataclass(frozen=True)
class ReportRecord:
    """One experiment outcome in wire-format-ready form."""

    experiment_id: str
    params: dict[str, Any] = field(default_factory=dict)
    lambda_initial: list[float] | None = None
    lambda_final: list[float] | None = None
    A: float | None = None
    B: float | None = None
    Bprime: float | None = None
    ordering: str | None = None
    verdict: str | None = None
    max_analytic_numeric_error: float | None = None
    degeneracy_flag: bool = False

    def to_json_line(self) -> str:
        return json_line(
            {
                "experiment_id": self.experiment_id,
                "params": self.params,
                "lambda_initial": self.lambda_initial,
                "lambda_final": self.lambda_final,
                "A": self.A,
                "B": self.B,
                "Bprime": self.Bprime,
                "ordering": self.ordering,
                "verdict": self.verdict,
                "maxAnalyticNumericError": self.max_analytic_numeric_error,
                "degeneracyFlag": self.degeneracy_flag,
            }
        )

    def to_csv_row(self) -> str:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, (float, np.floating)):
                return fmt_float(v)
            return str(v)

        def three(values):
            out = list(values) if values is not None else []
            return (out + [None] * 3)[:3]

        lam_i = three(self.lambda_initial)
        lam_f = three(self.lambda_final)
        values = [
            self.params.get("a"),
            self.params.get("c"),
            self.params.get("theta"),
            self.A,
            self.B,
            self.Bprime,
            *lam_i,
            *lam_f,
            self.ordering,
            self.verdict,
            self.max_analytic_numeric_error,
            "true" if self.degeneracy_flag else "false",
        ]
        return ",".join(cell(v) for v in values)
