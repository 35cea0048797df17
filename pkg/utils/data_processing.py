import dataclasses
import json
import logging
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


def encode_complex_matrix(matrix) -> List[float]:
    """Row-major interleaved [re, im, re, im, ...] encoding of a complex matrix."""
    arr = np.asarray(matrix, dtype=complex)
    flat = arr.reshape(-1)
    out = np.empty(2 * flat.size)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out.tolist()


def decode_complex_matrix(values: Sequence[float], dim: int) -> np.ndarray:
    """Inverse of encode_complex_matrix for a dim x dim matrix."""
    arr = np.asarray(values, dtype=float)
    if arr.size != 2 * dim * dim:
        raise ValueError(f"expected {2 * dim * dim} interleaved numbers for a {dim}x{dim} matrix, got {arr.size}")
    return (arr[0::2] + 1j * arr[1::2]).reshape(dim, dim)


def convert_to_json_serializable(obj):
    """Convert data structures to JSON serializable format"""

    if isinstance(obj, pd.DataFrame):
        return convert_to_json_serializable(obj.to_dict('records'))
    elif isinstance(obj, pd.Series):
        return convert_to_json_serializable(obj.to_list())
    elif isinstance(obj, np.ndarray):
        return convert_to_json_serializable(obj.tolist())
    elif isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, (complex, np.complexfloating)):
        return {"re": convert_to_json_serializable(obj.real), "im": convert_to_json_serializable(obj.imag)}
    elif isinstance(obj, (float, np.floating)):
        value = float(obj)
        # JSON has no NaN/Inf
        return value if math.isfinite(value) else str(value)
    elif isinstance(obj, datetime):
        return obj.isoformat()
    elif isinstance(obj, Path):
        return str(obj)
    elif dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return convert_to_json_serializable(
            {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}
        )
    elif isinstance(obj, dict):
        return {str(key): convert_to_json_serializable(value) for key, value in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [convert_to_json_serializable(item) for item in obj]
    else:
        return obj


def export_data_to_json(data, filename) -> Path:
    """Export processed data to JSON format"""

    json_data = convert_to_json_serializable(data)
    path = Path(filename)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(json_data, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def export_table_to_csv(frame: pd.DataFrame, filename) -> Path:
    """RFC-4180 style CSV with a header row and '.' decimals."""
    path = Path(filename)
    frame.to_csv(path, index=False, float_format="%.12g", lineterminator="\r\n")
    return path


@dataclasses.dataclass
class Assertion:
    """One machine-checkable pass/fail line of a report."""

    name: str
    passed: bool
    value: Any = None
    threshold: Any = None
    detail: str = ""


@dataclasses.dataclass
class SuiteResult:
    """Outcome of one scenario command: assertions, results and CSV tables."""

    assertions: List[Assertion] = dataclasses.field(default_factory=list)
    results: Dict[str, Any] = dataclasses.field(default_factory=dict)
    tables: Dict[str, pd.DataFrame] = dataclasses.field(default_factory=dict)
    notes: List[str] = dataclasses.field(default_factory=list)

    def check(self, name: str, passed: bool, value: Any = None, threshold: Any = None, detail: str = "") -> bool:
        passed = bool(passed)
        self.assertions.append(Assertion(name, passed, value, threshold, detail))
        if not passed:
            logger.warning("assertion %s failed: value=%s threshold=%s %s", name, value, threshold, detail)
        return passed

    @property
    def all_passed(self) -> bool:
        return all(a.passed for a in self.assertions)


def build_report(scenario_name: str, command: str, seed: int, sign_convention: str,
                 suite: SuiteResult, table_files: Dict[str, str],
                 generated_at: Optional[datetime] = None) -> Dict[str, Any]:
    """Report document; only `generated_at` varies between identical runs."""
    generated_at = generated_at or datetime.now(timezone.utc)
    return {
        "scenario": scenario_name,
        "command": command,
        "seed": seed,
        "sign_convention": sign_convention,
        "passed": suite.all_passed,
        "assertions": suite.assertions,
        "results": suite.results,
        "notes": suite.notes,
        "tables": table_files,
        "generated_at": generated_at.strftime("%Y-%m-%dT%H:%M:%SZ"),
    }
