"""CSV, JSON and SVG writers. Every file carries the resolved run config."""

import json
import logging
import math
import os
from pathlib import Path

import numpy as np
import pandas as pd

os.environ.setdefault("MPLCONFIGDIR", "/tmp/matplotlib")  # noqa: S108

import matplotlib  # noqa: E402

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "svg")
FLOAT_FORMAT = "%.10g"


def _jsonable(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return str(value)


def _clean_floats(value):
    """NaN and infinities become None so the output stays strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean_floats(v) for v in value]
    return value


def dumps(data) -> str:
    normalized = json.loads(json.dumps(data, default=_jsonable))
    return json.dumps(_clean_floats(normalized), indent=2, sort_keys=True, allow_nan=False)


def config_line(config: dict) -> str:
    return "# config: " + json.dumps(_clean_floats(json.loads(json.dumps(config, default=_jsonable))), sort_keys=True)


def write_csv(frame: pd.DataFrame, path, config: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(config_line(config) + "\n")
        frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info("Wrote %s (%d rows)", path, len(frame))
    return path


def read_csv(path) -> tuple[pd.DataFrame, dict]:
    """Table and config of a file written by ``write_csv``."""
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        first = handle.readline()
        config = json.loads(first.removeprefix("# config: ")) if first.startswith("# config: ") else {}
        frame = pd.read_csv(handle)
    return frame, config


def write_json(data: dict, path, config: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps({"config": config, **data}) + "\n", encoding="utf-8")
    logger.info("Wrote %s", path)
    return path


def frame_records(frame: pd.DataFrame) -> list[dict]:
    return json.loads(frame.to_json(orient="records"))


def plot_lines(  # noqa: PLR0913
    series: dict,
    path,
    *,
    xlabel: str,
    ylabel: str,
    title: str = "",
    logy: bool = False,
    markers: bool = True,
) -> Path:
    """
    One line per ``label -> (x, y)`` entry, written as SVG.

    Labels starting with "ref" are drawn dashed.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    plt.rcParams["svg.hashsalt"] = "mpsc"
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for label, (x, y) in series.items():
        style = "--" if label.startswith("ref") else "-"
        ax.plot(x, y, style, marker="o" if markers and style == "-" else None, label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(series) > 1:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("Wrote %s", path)
    return path
