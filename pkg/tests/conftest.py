import json

import pytest


@pytest.fixture
def write_config(tmp_path):
    """Dump a config dict to a JSON file and hand back the path."""

    def _write(cfg, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(cfg), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def preset_aa_config():
    # pi/3 cone, one period of the rotating field, adapted initial state
    return {
        "task": "aa_phase",
        "dimension": 2,
        "generator": {
            "preset": {
                "name": "spin_half_rotating_field",
                "params": {"B": 2.0, "theta_c": 1.0471975511965976, "omega": 1.0},
            }
        },
        "initial_state": [[0.8660254037844387, 0.0], [0.5, 0.0]],
        "time": {"t_final": 6.283185307179586, "steps": 2000},
    }
