import json
import math
from datetime import datetime, timezone

import numpy as np
import pandas as pd
import pytest
from hypothesis import given
from hypothesis import strategies as st

from utils.data_processing import (
    SuiteResult,
    build_report,
    convert_to_json_serializable,
    decode_complex_matrix,
    encode_complex_matrix,
    export_data_to_json,
    export_table_to_csv,
)


def test_complex_matrix_encoding_is_row_major_interleaved():
    matrix = np.array([[1 + 2j, 3 - 4j], [5j, -6.0]])
    assert encode_complex_matrix(matrix) == [1.0, 2.0, 3.0, -4.0, 0.0, 5.0, -6.0, 0.0]


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_complex_matrix_decoding_inverts_encoding(dim, seed):
    rng = np.random.default_rng(seed)
    matrix = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    np.testing.assert_array_equal(decode_complex_matrix(encode_complex_matrix(matrix), dim), matrix)


def test_decode_rejects_wrong_length():
    with pytest.raises(ValueError):
        decode_complex_matrix([1.0, 2.0, 3.0], 1)


def test_json_conversion_of_numeric_types():
    data = {
        "flag": np.bool_(True),
        "count": np.int64(3),
        "value": np.float64(0.5),
        "z": 1 - 2j,
        "missing": math.nan,
        "array": np.array([1.0, 2.0]),
        "frame": pd.DataFrame({"T": [10.0], "norm_sq": [8.5]}),
        1: "int key",
    }
    converted = convert_to_json_serializable(data)
    assert converted == {
        "flag": True,
        "count": 3,
        "value": 0.5,
        "z": {"re": 1.0, "im": -2.0},
        "missing": "nan",
        "array": [1.0, 2.0],
        "frame": [{"T": 10.0, "norm_sq": 8.5}],
        "1": "int key",
    }
    json.dumps(converted)


def test_suite_result_tracks_failures():
    suite = SuiteResult()
    assert suite.all_passed
    assert suite.check("ok", True, 1e-9, 1e-6)
    assert not suite.check("bad", np.bool_(False), 1.0, 1e-6, detail="too large")
    assert not suite.all_passed
    assert [a.name for a in suite.assertions] == ["ok", "bad"]
    assert suite.assertions[1].passed is False


def test_report_and_json_export(tmp_path):
    suite = SuiteResult()
    suite.check("residual", True, 1e-8, 1e-6)
    suite.results["slope"] = 1.0
    stamp = datetime(2024, 1, 2, 3, 4, 5, tzinfo=timezone.utc)
    report = build_report("demo", "counterexample", 42, "exchanged", suite, {"divergence": "divergence.csv"}, stamp)
    path = export_data_to_json(report, tmp_path / "report.json")
    loaded = json.loads(path.read_text(encoding="utf-8"))
    assert loaded["generated_at"] == "2024-01-02T03:04:05Z"
    assert loaded["passed"] is True
    assert loaded["assertions"] == [
        {"name": "residual", "passed": True, "value": 1e-8, "threshold": 1e-6, "detail": ""}
    ]
    assert loaded["tables"] == {"divergence": "divergence.csv"}
    assert list(loaded) == sorted(loaded)


def test_csv_export_has_header_and_crlf(tmp_path):
    frame = pd.DataFrame({"T": [10.0, 100.0], "norm_sq": [8.500090799859525, 98.5]})
    path = export_table_to_csv(frame, tmp_path / "divergence.csv")
    raw = path.read_bytes()
    assert raw.startswith(b"T,norm_sq\r\n")
    assert raw.count(b"\r\n") == 3
    back = pd.read_csv(path)
    np.testing.assert_allclose(back["norm_sq"], frame["norm_sq"], rtol=1e-11)
