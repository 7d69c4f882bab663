import pytest

from intmat.errors import DimensionError
from intmat.formats import (
    format_matrix,
    format_vector,
    parse_matrix,
    parse_vector,
    read_matrix,
    read_vector,
    write_matrix,
    write_vector,
)
from intmat.geometry import RealVector
from intmat.linalg import IntMatrix


def test_matrix_round_trip(tmp_path):
    m = IntMatrix.from_rows([[1, -2, 3], [40, 5, -6]])
    path = tmp_path / "m.txt"
    write_matrix(m, path)
    assert read_matrix(path) == m


def test_matrix_format_shape():
    text = format_matrix(IntMatrix.from_rows([[1, 2], [3, 4]]))
    assert text == "2 2\n1 2\n3 4\n"


def test_matrix_parse_errors():
    with pytest.raises(DimensionError):
        parse_matrix("2 2\n1 2 3\n")
    with pytest.raises(DimensionError):
        parse_matrix("x y\n")


def test_vector_round_trip(tmp_path):
    v = RealVector.from_values(["0.125", "-3.5", "2"])
    path = tmp_path / "v.txt"
    write_vector(v, path)
    back = read_vector(path)
    assert [float(e) for e in back.entries] == [0.125, -3.5, 2.0]


def test_vector_parse_errors():
    with pytest.raises(DimensionError):
        parse_vector("3\n1.0 2.0\n")
    with pytest.raises(DimensionError):
        parse_vector("")


def test_vector_header_is_length():
    assert format_vector(RealVector.from_values([1.0, 2.0])).splitlines()[0] == "2"
