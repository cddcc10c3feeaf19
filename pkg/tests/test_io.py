import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nhcalc.errors import InputError
from nhcalc.io import (
    matrix_from_csv,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    parse_function_spec,
    read_function_spec,
    read_matrix,
    write_matrix,
)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
entries = st.builds(complex, finite, finite)


@st.composite
def matrices(draw):
    n = draw(st.integers(1, 5))
    vals = draw(st.lists(entries, min_size=n * n, max_size=n * n))
    return np.array(vals, dtype=np.complex128).reshape(n, n)


@given(matrices())
def test_json_round_trip_is_exact(a):
    text = json.dumps(matrix_to_json(a))
    assert np.array_equal(matrix_from_json(text), a)


@given(matrices())
def test_csv_round_trip_is_exact(a):
    assert np.array_equal(matrix_from_csv(matrix_to_csv(a)), a)


def test_csv_entry_forms():
    a = matrix_from_csv("1, -i, 2+3i\n-2.5e-1-i, i, 4\n0, 1e2i, -7-0.5i\n")
    expected = [[1, -1j, 2 + 3j], [-0.25 - 1j, 1j, 4], [0, 100j, -7 - 0.5j]]
    assert np.array_equal(a, np.array(expected))


def test_csv_errors_name_position():
    with pytest.raises(InputError, match="2:1"):
        matrix_from_csv("1,2\nfoo,3\n")
    with pytest.raises(InputError, match="square"):
        matrix_from_csv("1,2,3\n4,5,6\n")


def test_malformed_json_reports_location():
    with pytest.raises(InputError, match=r"line 2, column \d+ \(char \d+\)"):
        matrix_from_json('{"rows": 1,\n "cols": 1 "data": []}')


def test_json_shape_and_entry_checks():
    with pytest.raises(InputError, match="expected 4"):
        matrix_from_json({"rows": 2, "cols": 2, "data": [[1, 0]]})
    with pytest.raises(InputError, match="keys"):
        matrix_from_json({"rows": 1})
    with pytest.raises(InputError):
        matrix_from_json({"rows": 1, "cols": 2, "data": [[1, 0], [2, 0]]})
    with pytest.raises(InputError):
        matrix_from_json({"rows": 1, "cols": 1, "data": [["nan", 0]]})


def test_files_by_suffix(tmp_path):
    a = np.array([[1 + 2j, -3], [0.5j, 4]])
    for fmt in ("json", "csv"):
        path = tmp_path / f"m.{fmt}"
        write_matrix(path, a, fmt)
        assert np.array_equal(read_matrix(path), a)
    with pytest.raises(InputError, match="cannot read"):
        read_matrix(tmp_path / "missing.json")


def test_function_specs(tmp_path):
    assert parse_function_spec("tau")(2j) == -2j
    assert parse_function_spec({"fn": "monomial", "k": 1, "m": 1})(2) == pytest.approx(4)
    p = parse_function_spec('{"fn": "holo_poly", "coeffs": [[1, 0], [0, 1]]}')
    assert p(2) == pytest.approx(1 + 2j)
    q = parse_function_spec({"fn": "zzbar_poly", "terms": [[0, 2, 1, 0]]})
    assert q(1j) == pytest.approx(-1)
    path = tmp_path / "f.json"
    path.write_text('{"fn": "abs_fn"}')
    assert read_function_spec(path)(3 + 4j) == pytest.approx(5)
    for bad in ('{"fn": "monomial", "k": 1}', "[1, 2]", "{nope"):
        with pytest.raises(InputError):
            parse_function_spec(bad)
