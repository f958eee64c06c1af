"""Tests for run configuration, presets and model tokens"""

import numpy as np
import pytest

from fock_core import HARMONIC, QUADRATIC, ModelKind
from models import Command, ConfigError, RunConfig, apply_preset, parse_model


class TestParseModel:

    @pytest.mark.parametrize("token,expected", [("harmonic", HARMONIC), ("Quadratic", QUADRATIC)])
    def test_named(self, token, expected):
        assert parse_model(token) == expected

    def test_linear_quadratic(self):
        model = parse_model("lq:2,0.5")
        assert model.kind is ModelKind.LINEAR_QUADRATIC
        assert (model.A, model.B) == (2.0, 0.5)

    @pytest.mark.parametrize("token", ["cubic", "lq:1", "lq:a,b", "lq:1,0", "lq:-2,1"])
    def test_invalid(self, token):
        with pytest.raises(ConfigError):
            parse_model(token)


class TestRunConfig:

    def test_single_step_grid(self):
        cfg = RunConfig(Command.DISPERSION, z_min=1.5, z_max=3.0, z_steps=1).validate()
        np.testing.assert_array_equal(cfg.z_grid, [1.5])

    @pytest.mark.parametrize("field,value", [
        ("z_steps", 0), ("z_min", 5.0), ("levels", 0), ("gamma", 1.0), ("theta", 4.0),
        ("models", ()), ("workers", 0), ("method", "exact"), ("x_steps", 1),
    ])
    def test_invalid(self, field, value):
        with pytest.raises(ConfigError):
            RunConfig(Command.DISPERSION, **{field: value}).validate()

    def test_header_records_full_config(self):
        keys = [key for key, _ in RunConfig(Command.ENTROPY_SWEEP).header_items()]
        for key in ("models", "A", "B", "gamma", "N", "theta", "phi", "convention", "method"):
            assert key in keys


class TestPresets:

    def test_fig3(self):
        values = apply_preset("fig3", {"levels": None, "command": None})
        assert values["command"] is Command.ENTROPY_SWEEP
        assert values["gamma"] == 0.5
        assert values["levels"] == 40
        assert values["models"] == (HARMONIC, QUADRATIC)

    def test_override_wins(self):
        assert apply_preset("fig1", {"levels": 25})["levels"] == 25

    def test_fig4_needs_linear_quadratic(self):
        with pytest.raises(ConfigError):
            apply_preset("fig4b", {"models": [QUADRATIC]})

    def test_fig4_adds_quadratic(self):
        lq = parse_model("lq:1,1")
        values = apply_preset("fig4a", {"models": [lq]})
        assert values["models"] == (QUADRATIC, lq)
        assert values["levels"] == 30
        assert values["gamma"] == 0.0

    def test_command_mismatch(self):
        with pytest.raises(ConfigError):
            apply_preset("fig1", {"command": Command.DENSITY})

    def test_unknown(self):
        with pytest.raises(ConfigError):
            apply_preset("fig9", {})
