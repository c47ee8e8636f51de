import json
import math

import numpy as np
import pandas as pd

from appExperiments.reporting import config_line
from appExperiments.reporting import dumps
from appExperiments.reporting import frame_records
from appExperiments.reporting import plot_lines
from appExperiments.reporting import read_csv
from appExperiments.reporting import write_csv
from appExperiments.reporting import write_json


def test_csv_starts_with_the_config(tmp_path):
    frame = pd.DataFrame({"method": ["schon", "ran"], "fidelity": [1.0, 0.875]})
    config = {"seed": 3, "methods": ["schon", "ran"], "threshold": None}
    path = write_csv(frame, tmp_path / "out" / "bench.csv", config)
    first = path.read_text().splitlines()[0]
    assert first == config_line(config)
    assert first.startswith("# config: ")
    back, back_config = read_csv(path)
    assert back_config == config
    pd.testing.assert_frame_equal(back, frame)


def test_json_is_strict(tmp_path):
    data = {"values": [math.nan, math.inf, 1.5], "count": np.int64(4), "flag": np.bool_(True), "array": np.arange(3)}
    path = write_json(data, tmp_path / "r.json", {"seed": 0})
    loaded = json.loads(path.read_text())
    assert loaded["values"] == [None, None, 1.5]
    assert loaded["count"] == 4
    assert loaded["flag"] is True
    assert loaded["array"] == [0, 1, 2]
    assert loaded["config"] == {"seed": 0}


def test_dumps_uses_to_dict():
    class Thing:
        def to_dict(self):
            return {"a": 1}

    assert json.loads(dumps({"thing": Thing()})) == {"thing": {"a": 1}}


def test_frame_records():
    frame = pd.DataFrame({"x": [1, 2], "y": [0.5, None]})
    assert frame_records(frame) == [{"x": 1, "y": 0.5}, {"x": 2, "y": None}]


def test_plot_is_svg(tmp_path):
    series = {"aqc-tensor": ([0, 1, 2], [-0.5, -0.3, -0.1]), "reference (TEBD)": ([0, 1, 2], [-0.5, -0.31, -0.12])}
    path = plot_lines(series, tmp_path / "plots" / "q.svg", xlabel="t", ylabel="SM", title="quench")
    text = path.read_text()
    assert "<svg" in text
    assert path.stat().st_size > 0
