import io
import json
import sys
from dataclasses import asdict, dataclass, fields
from typing import List, Optional

import pandas as pd
from hhutil.io import fmt_path

from gpibound.bounds import BoundReport, OppositeSignBounds, SameSignBound
from gpibound.utils import format_value


@dataclass(frozen=True)
class ReportRow:
    index: int
    sigma1: float
    sigma2: float
    alpha1: float
    alpha2: float
    rho: float
    theorem: str
    case_tag: Optional[str]
    gap: float
    bound: Optional[float]
    lower: Optional[float]
    upper: Optional[float]
    finite_lower: Optional[bool]
    swapped: Optional[bool]
    satisfied: bool
    slack: float
    quadrature_value: Optional[float]
    quadrature_error: Optional[float]
    quadrature_deviation: Optional[float]
    mc_value: Optional[float]
    mc_error: Optional[float]
    mc_deviation: Optional[float]
    error: Optional[str]
    flags: List[str]


COLUMNS = [f.name for f in fields(ReportRow)]


def _bound_columns(report: BoundReport):
    bound = report.bound
    if isinstance(bound, SameSignBound):
        return dict(case_tag=bound.case_tag.value, bound=bound.value, lower=None, upper=None,
                    finite_lower=None, swapped=None)
    if isinstance(bound, OppositeSignBounds):
        return dict(case_tag=bound.case_tag.value, bound=None, lower=bound.lower, upper=bound.upper,
                    finite_lower=bound.finite_lower, swapped=bound.swapped)
    return dict(case_tag=None, bound=None, lower=None, upper=None, finite_lower=None, swapped=None)


def row_from_context(context) -> ReportRow:
    r"""
    Flatten a per-point callback context into a ReportRow. Oracle columns are
    None when the oracle did not run or refused.
    """
    report: BoundReport = context['report']
    spec = report.spec
    quad = context.get('quadrature')
    mc = context.get('monte_carlo')
    deviations = context.get('deviations', {})
    return ReportRow(
        index=context['index'],
        sigma1=spec.sigma1, sigma2=spec.sigma2,
        alpha1=spec.alpha1, alpha2=spec.alpha2, rho=spec.rho,
        theorem=report.theorem.value,
        gap=report.gap,
        satisfied=report.satisfied,
        slack=report.slack,
        quadrature_value=quad.value if quad is not None else None,
        quadrature_error=quad.error_estimate if quad is not None else None,
        quadrature_deviation=deviations.get('quadrature'),
        mc_value=mc.value if mc is not None else None,
        mc_error=mc.error_estimate if mc is not None else None,
        mc_deviation=deviations.get('monte_carlo'),
        error=report.error,
        flags=list(context['flags']),
        **_bound_columns(report),
    )


def row_to_record(row: ReportRow):
    return {k: format_value(v) for k, v in asdict(row).items()}


def to_json_lines(rows) -> str:
    r"""
    One JSON object per row, keys in column order, infinities as "+inf"/"-inf"
    and missing values as null.
    """
    lines = [json.dumps(row_to_record(row), allow_nan=False) for row in rows]
    return "".join(line + "\n" for line in lines)


def to_frame(rows) -> pd.DataFrame:
    records = []
    for row in rows:
        record = row_to_record(row)
        record['flags'] = ";".join(row.flags)
        records.append(record)
    return pd.DataFrame.from_records(records, columns=COLUMNS)


def to_csv(rows) -> str:
    buf = io.StringIO()
    to_frame(rows).to_csv(buf, index=False, float_format="%.17g", lineterminator="\n")
    return buf.getvalue()


def render(rows, output_format) -> str:
    if output_format == "csv":
        return to_csv(rows)
    return to_json_lines(rows)


def write(content, output=None):
    if output is None:
        sys.stdout.write(content)
        sys.stdout.flush()
    else:
        fmt_path(output).write_text(content)

