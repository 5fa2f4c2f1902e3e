"""Analysis-config validation and layering."""

from __future__ import annotations

import pytest

from strategizer.config import AnalysisConfig
from strategizer.errors import SchemaError, ValidationError


class TestValidation:
    def test_defaults_are_valid(self):
        config = AnalysisConfig()
        assert config.lower < config.upper
        assert config.width == 4.0

    @pytest.mark.parametrize(
        "overrides",
        [
            {"lower": 5.0, "upper": 1.0},
            {"w_c": 0.5},
            {"w_q": 0.0},
            {"c_ref": 5.0},
            {"c_ref": 0.5},
            {"fit_tolerance": 0.0},
            {"max_possible_cost": -1.0},
            {"max_possible_lifespan": 0.0},
            {"hurwicz_alpha": 1.2},
            {"sweep_increment": 0.6},
            {"sweep_increment": 0.0},
            {"households": 0},
            {"pilot_n": 1},
        ],
    )
    def test_invariant_violations(self, overrides):
        with pytest.raises(ValidationError):
            AnalysisConfig(**{**AnalysisConfig().to_dict(), **overrides})


class TestMerging:
    def test_overrides_win_layer_by_layer(self):
        base = AnalysisConfig()
        from_file = base.merged({"w_c": 1.0, "seed": 5})
        assert from_file.w_c == 1.0 and from_file.seed == 5
        from_flags = from_file.merged({"w_c": 1.5})
        assert from_flags.w_c == 1.5
        assert from_flags.seed == 5  # untouched layers persist

    def test_none_values_are_ignored(self):
        merged = AnalysisConfig().merged({"w_c": None, "seed": 3})
        assert merged.w_c == 2.0
        assert merged.seed == 3

    def test_unknown_field_names_path(self):
        with pytest.raises(SchemaError) as excinfo:
            AnalysisConfig().merged({"mystery": 1})
        assert excinfo.value.path == "config.mystery"

    def test_empty_merge_returns_self(self):
        config = AnalysisConfig()
        assert config.merged({}) is config
        assert config.merged(None) is config

    def test_dict_round_trip(self):
        config = AnalysisConfig(w_c=1.5, seed=9, max_possible_lifespan=40.0)
        assert AnalysisConfig.from_dict(config.to_dict()) == config
