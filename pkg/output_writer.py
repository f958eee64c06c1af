#!/usr/bin/env python3
"""
CSV / JSON emission of command tables
Every table carries the run configuration it was produced from
"""

import csv
import io
import json
import logging
import math
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import CSV_LINE_TERMINATOR, FLOAT_FORMAT, JSON_INDENT

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    """
    Render one cell as text

    Floats use FLOAT_FORMAT so identical configs give byte-identical files;
    complex numbers are written as Python complex literals.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return f"({format(value.real, FLOAT_FORMAT)}{format(value.imag, '+' + FLOAT_FORMAT)}j)"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no NaN / inf literals
        return value if math.isfinite(value) else format_value(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": _json_value(complex(value).real), "im": _json_value(complex(value).imag)}
    return value


def config_line(header: Sequence[Tuple[str, Any]]) -> str:
    """`# config: key=value ...` header line"""
    return "# config: " + " ".join(f"{key}={format_value(value)}" for key, value in header)


def render_csv(header: Sequence[Tuple[str, Any]], columns: Sequence[str], rows: List[Dict[str, Any]]) -> str:
    buffer = io.StringIO()
    buffer.write(config_line(header) + CSV_LINE_TERMINATOR)
    writer = csv.writer(buffer, lineterminator=CSV_LINE_TERMINATOR)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(header: Sequence[Tuple[str, Any]], columns: Sequence[str], rows: List[Dict[str, Any]],
                metadata: Optional[Dict[str, Any]] = None) -> str:
    document = {
        "config": {key: _json_value(value) for key, value in header},
        "metadata": {key: _json_value(value) for key, value in (metadata or {}).items()},
        "columns": list(columns),
        "rows": [[_json_value(row.get(column)) for column in columns] for row in rows],
    }
    return json.dumps(document, indent=JSON_INDENT, ensure_ascii=False) + "\n"


def write_table(header: Sequence[Tuple[str, Any]], columns: Sequence[str], rows: List[Dict[str, Any]],
                output_format: str = "csv", output_path: Optional[str] = None,
                metadata: Optional[Dict[str, Any]] = None) -> str:
    """
    Write a table to a file or stdout

    Args:
        header: Ordered config items for the header
        columns: Column names, in output order
        rows: One dict per row keyed by column name
        output_format: "csv" or "json"
        output_path: Destination file; stdout when None
        metadata: Extra key/value pairs; CSV appends them to the config line

    Returns:
        The rendered text
    """
    if output_format == "json":
        text = render_json(header, columns, rows, metadata)
    else:
        text = render_csv(list(header) + list((metadata or {}).items()), columns, rows)

    if output_path:
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"✅ Wrote {len(rows)} rows to {output_path}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return text
