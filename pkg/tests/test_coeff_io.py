"""Coefficient JSON, recovery CSV and piecewise definition files."""

import csv
import json
import math

import numpy as np
import pytest

from innerdisk.core.coeff_io import (
    coefficients_payload, dumps, format_float, load_piecewise, parse_coefficients,
    parse_piecewise, read_coefficients, write_coefficients, write_recovery_csv,
)
from innerdisk.core.data_models import RecoveryResult, SingularKind, TaylorCoefficients
from innerdisk.core.errors import CoefficientFileError, PiecewiseFileError

from conftest import exact_fourier


class TestFormat:
    @pytest.mark.parametrize("value, text", [
        (0.1, "0.10000000000000001"),
        (1.0, "1.0"),
        (-0.0, "-0.0"),
        (1e20, "1e+20"),
        (math.inf, "null"),
        (math.nan, "null"),
    ])
    def test_format_float(self, value, text):
        assert format_float(value) == text

    def test_dumps_is_valid_json(self):
        text = dumps({"a": [1.0, 2], "b": {"c": None, "d": True}, "e": "x"})
        assert json.loads(text) == {"a": [1.0, 2], "b": {"c": None, "d": True}, "e": "x"}
        assert '"a": [1.0, 2]' in text

    def test_dumps_keeps_key_order(self):
        text = dumps({"z": 1, "a": 2})
        assert text.index('"z"') < text.index('"a"')

    def test_unserializable(self):
        with pytest.raises(TypeError):
            dumps({"x": object()})


class TestCoefficientFiles:
    def test_values_survive_exactly(self, tmp_path, rng):
        c = rng.normal(size=33) * 10.0 ** rng.integers(-300, 300, size=33) \
            + 1j * rng.normal(size=33)
        c[3] = complex(-0.0, 0.0)
        c[4] = complex(5e-324, -0.0)
        tc = TaylorCoefficients(c=c, provenance="random")
        path = tmp_path / "coeffs.json"
        write_coefficients(path, tc)
        _, back = read_coefficients(path)
        assert np.array_equal(back.c.real.view(np.int64), tc.c.real.view(np.int64))
        assert np.array_equal(back.c.imag.view(np.int64), tc.c.imag.view(np.int64))
        assert back.provenance == "random"

    def test_fourier_payload(self):
        payload = coefficients_payload(exact_fourier("log_sine", 4))
        assert list(payload) == ["name", "N", "M", "alpha0", "alpha", "beta", "c_re", "c_im", "provenance"]
        assert payload["N"] == 4
        assert payload["name"] == "log_sine"

    def test_fourier_only(self):
        fc, tc = parse_coefficients({"alpha0": 2, "alpha": [0, 0], "beta": [1, 0], "M": 1})
        np.testing.assert_array_equal(tc.c, [1, -1j, 0])
        assert tc.bound_M == 1.0
        assert fc.N == 2

    def test_taylor_only(self):
        fc, tc = parse_coefficients({"c_re": [0, 1], "c_im": [0, 0]})
        assert fc.alpha.tolist() == [1.0]
        assert fc.M == pytest.approx(0.25)
        assert tc.bound_M is None

    @pytest.mark.parametrize("payload", [
        [],
        {},
        {"alpha": [1], "beta": [0], "M": 1},
        {"alpha0": 0, "alpha": [1], "beta": [0]},
        {"c_re": [0, 1], "c_im": [0]},
        {"c_re": [0, 1]},
        {"c_re": [0, 1], "c_im": [0, 0], "N": 3},
        {"c_re": [0, "x"], "c_im": [0, 0]},
        {"c_re": "0 1", "c_im": [0, 0]},
        {"alpha0": 0, "alpha": [1, 2], "beta": [0, 0], "M": 1, "c_re": [0, 1], "c_im": [0, 0]},
        {"alpha0": 0, "alpha": [1], "beta": [0], "M": -1},
    ])
    def test_malformed(self, payload):
        with pytest.raises(CoefficientFileError):
            parse_coefficients(payload)

    def test_unreadable(self, tmp_path):
        with pytest.raises(CoefficientFileError):
            read_coefficients(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{", encoding="utf-8")
        with pytest.raises(CoefficientFileError):
            read_coefficients(bad)


class TestRecoveryCsv:
    def test_rows(self, tmp_path):
        result = RecoveryResult(
            theta=0.25, estimates=((0.5, 1.0), (0.75, 2.0)), extrapolated=2.0,
            converged=False, residual=1.0,
        )
        path = tmp_path / "recover.csv"
        write_recovery_csv(path, [result, result])
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["theta", "rho", "u"]
        assert rows[1] == ["0.25", "0.5", "1.0"]
        assert len(rows) == 5


class TestPiecewiseFiles:
    PAYLOAD = {
        "name": "bump",
        "domain": ["-pi", "pi"],
        "intervals": [
            {"lo": "-pi", "hi": 0, "coeffs": [1.0]},
            [0, "pi", [1.0, -1.0]],
        ],
        "singular_points": [{"x": 0, "kind": "log-divergence"}],
    }

    def test_parse(self):
        pw = parse_piecewise(self.PAYLOAD)
        assert pw.name == "bump"
        assert pw.pieces[0] == (-math.pi, 0.0, (1.0,))
        assert pw.pieces[1] == (0.0, math.pi, (1.0, -1.0))
        assert pw.singular_points == ((0.0, SingularKind.LOG_DIVERGENCE),)

    def test_load(self, tmp_path):
        path = tmp_path / "bump.json"
        path.write_text(json.dumps(self.PAYLOAD), encoding="utf-8")
        assert load_piecewise(path).pieces == parse_piecewise(self.PAYLOAD).pieces

    @pytest.mark.parametrize("change", [
        {"intervals": []},
        {"intervals": ["abc"]},
        {"intervals": [{"lo": "-pi", "hi": "pi", "coeffs": 1.0}]},
        {"intervals": [{"lo": "-pi", "hi": "pi", "coeffs": ["inf"]}]},
        {"domain": [0]},
        {"singular_points": [{"x": 0, "kind": "pole"}]},
        {"singular_points": [{"kind": "jump"}]},
    ])
    def test_malformed(self, change):
        payload = dict(self.PAYLOAD, **change)
        with pytest.raises(PiecewiseFileError):
            parse_piecewise(payload)

    def test_missing_file(self, tmp_path):
        with pytest.raises(PiecewiseFileError):
            load_piecewise(tmp_path / "none.json")
