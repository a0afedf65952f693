"""
Result Files
Raw and aggregate results as CSV or JSON (schema version 1)
"""

import csv
import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from common.errors import IoError, ValidationError
from common.settings import (
    AGGREGATE_RESULTS_NAME,
    DEFAULT_MEASURES,
    FLOAT_DIGITS,
    RAW_RESULTS_NAME,
    SCHEMA_VERSION,
)
from harness import AggregateRow, TrialRecord
from harness.aggregate import AGGREGATED_MEASURES

logger = logging.getLogger(__name__)

RAW_COLUMNS = (
    'd', 'n', 'replicate', 'seed', 'j', 'eigen_ratio', 'abs_inner',
    'inner_sq', 'subspace_cos', 'path', 'wall_ms',
)
AGGREGATE_COLUMNS = ('d', 'n', 'j', 'count') + tuple(
    f'{name}_{stat}' for name in AGGREGATED_MEASURES for stat in ('mean', 'stderr')
)
MEASURE_COLUMNS = ('eigen_ratio', 'abs_inner', 'inner_sq', 'subspace_cos')


class ResultFormat(Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class ResultFile:
    format: ResultFormat
    schema_version: str
    raw_path: Path
    aggregate_path: Path
    raw_rows: int
    aggregate_rows: int


def format_float(value: float) -> str:
    return f"{value:.{FLOAT_DIGITS}g}"


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _json_scalar(value: Any) -> str:
    if value is None:
        return 'null'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    return json.dumps(value)


def raw_rows(records: Sequence[TrialRecord], measures: Sequence[str] = DEFAULT_MEASURES) -> List[Dict[str, Any]]:
    """Flatten records; measures not requested and wall_ms without 'timing' are blanked"""
    rows = []
    for rec in sorted(records, key=lambda r: (r.d, r.replicate)):
        for row in rec.rows():
            for name in MEASURE_COLUMNS:
                if name not in measures:
                    row[name] = None
            if 'timing' not in measures:
                row['wall_ms'] = None
            rows.append(row)
    return rows


def _write_csv(path: Path, columns: Sequence[str], rows: Sequence[Dict[str, Any]]) -> None:
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])


def _write_json(path: Path, kind: str, columns: Sequence[str], rows: Sequence[Dict[str, Any]]) -> None:
    # json.dumps would print shortest-repr floats; rows are flat, so write them directly
    lines = [
        '{',
        f'  "schema_version": {json.dumps(SCHEMA_VERSION)},',
        f'  "kind": {json.dumps(kind)},',
        f'  "columns": {json.dumps(list(columns))},',
        '  "rows": [',
    ]
    body = []
    for row in rows:
        fields = ', '.join(f'{json.dumps(c)}: {_json_scalar(row.get(c))}' for c in columns)
        body.append(f'    {{{fields}}}')
    lines.append(',\n'.join(body))
    lines.append('  ]')
    lines.append('}')
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')


def emit_results(records: Sequence[TrialRecord],
                 aggregates: Sequence[AggregateRow],
                 format: Union[ResultFormat, str],
                 path: Union[str, Path],
                 measures: Sequence[str] = DEFAULT_MEASURES) -> ResultFile:
    """
    Write the raw and aggregate result files into a directory

    Args:
        records: Trial records (at least one)
        aggregates: Per-(d, j) aggregates
        format: CSV or JSON
        path: Output directory
        measures: Measures to fill in; 'timing' enables wall_ms

    Returns:
        ResultFile describing both files
    """
    if not records:
        raise ValidationError('records', "nothing to emit")
    fmt = ResultFormat(format)
    out_dir = Path(path)
    raw = raw_rows(records, measures)
    agg = [a.as_dict() for a in aggregates]
    raw_path = out_dir / f"{RAW_RESULTS_NAME}.{fmt.value}"
    agg_path = out_dir / f"{AGGREGATE_RESULTS_NAME}.{fmt.value}"

    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if fmt is ResultFormat.CSV:
            _write_csv(raw_path, RAW_COLUMNS, raw)
            _write_csv(agg_path, AGGREGATE_COLUMNS, agg)
        else:
            _write_json(raw_path, 'results', RAW_COLUMNS, raw)
            _write_json(agg_path, 'aggregates', AGGREGATE_COLUMNS, agg)
    except OSError as e:
        raise IoError(f"cannot write results to {out_dir}: {e}") from e

    logger.info(f"Wrote {len(raw)} rows to {raw_path} and {len(agg)} rows to {agg_path}")
    return ResultFile(fmt, SCHEMA_VERSION, raw_path, agg_path, len(raw), len(agg))


def write_json(payload: Dict[str, Any], path: Union[str, Path]) -> Path:
    """Small JSON side files (rate fit summary, phase matrix)"""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write('\n')
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e
    return path


def _parse_cell(value: str) -> Any:
    if value == '':
        return None
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            continue
    return value


def load_results_csv(path: Union[str, Path]) -> List[Dict[str, Any]]:
    """Read an emitted CSV back; numbers are parsed, blanks become None"""
    try:
        with open(path, newline='', encoding='utf-8') as f:
            return [{k: _parse_cell(v) for k, v in row.items()} for row in csv.DictReader(f)]
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e


def load_results_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, encoding='utf-8') as f:
            return json.load(f)
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e
