import json

import numpy as np
import pytest

from src.core.classifier import Case
from src.core.errors import InputError
from src.utils.file_utils import FileUtils
from src.utils.json_codec import MatrixCodec


class TestDecodeComplex:

    @pytest.mark.parametrize("value, expected", [
        ([1, -0.5], 1 - 0.5j),
        ("1,-0.5", 1 - 0.5j),
        ("2.5", 2.5),
        (3, 3),
        (0.25, 0.25),
    ])
    def test_forms(self, value, expected):
        assert MatrixCodec.decode_complex(value) == expected

    @pytest.mark.parametrize("value", ["1,2,3", "x", [1], [[1, 0], [0, 1]], None, True, [1, np.inf]])
    def test_rejects(self, value):
        with pytest.raises(InputError) as info:
            MatrixCodec.decode_complex(value, field="gamma")
        assert info.value.details["field"] == "gamma"


class TestDecodeMatrix:

    def test_two_by_two(self):
        M = MatrixCodec.decode_matrix([[[1, 0], [0, 1]], [[0, -1], 2]])
        np.testing.assert_array_equal(M, [[1, 1j], [-1j, 2]])

    def test_four_by_four_allowed_without_dim(self):
        assert MatrixCodec.decode_matrix(np.eye(4).tolist()).shape == (4, 4)

    def test_dimension_enforced(self):
        with pytest.raises(InputError):
            MatrixCodec.decode_matrix(np.eye(4).tolist(), dim=2)

    def test_ragged_row(self):
        with pytest.raises(InputError) as info:
            MatrixCodec.decode_matrix([[1, 0], [1]], field="eta")
        assert info.value.details["field"] == "eta[1]"


class TestEncode:

    def test_dumps(self):
        text = MatrixCodec.dumps({"eta": np.array([[1, 0.5j]]), "case": Case.CASE2,
                                  "ok": np.bool_(True), "n": np.int64(3)})
        assert text == '{"eta":[[[1.0,0.0],[0.0,0.5]]],"case":"case2","ok":true,"n":3}'
        assert "\n" not in text

    def test_loads_error_names_field(self):
        with pytest.raises(InputError) as info:
            MatrixCodec.loads("{", field="input")
        assert info.value.details["field"] == "input"


class TestCsv:

    def test_full_precision(self):
        text = MatrixCodec.to_csv(["x", "y", "status"], [[0.1, None, "ok"], [1 / 3, True, "neither"]])
        lines = text.split("\n")
        assert lines[0] == "x,y,status"
        assert lines[1] == "0.10000000000000001,,ok"
        assert float(lines[2].split(",")[0]) == 1 / 3
        assert lines[2].endswith(",true,neither")


class TestFileUtils:

    def test_inline_and_file(self, tmp_path):
        assert FileUtils.read_text('{"h": 1}') == '{"h": 1}'
        path = tmp_path / "h.json"
        path.write_text("[1]", encoding="utf-8")
        assert FileUtils.read_text(str(path)) == "[1]"
        assert FileUtils.read_text("@" + str(path)) == "[1]"

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            FileUtils.read_text("@" + str(tmp_path / "missing.json"))

    def test_write_creates_parent(self, tmp_path):
        target = tmp_path / "out" / "eta.json"
        FileUtils.write_text(json.dumps([1]), target)
        assert target.read_text(encoding="utf-8") == "[1]"
