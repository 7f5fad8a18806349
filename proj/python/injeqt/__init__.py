"""Rz-state injection planner and simulator."""

import json

from . import _injeqt
from ._injeqt import (
    Circuit,
    ConfigError,
    InjeqtError,
    MeasurementOrderError,
    QasmSyntaxError,
    UnsupportedGate,
    compile_pbc,
    parse_qasm,
    parse_qasm_file,
    run_trials,
    rz_viability,
)

__all__ = [
    "Circuit",
    "ConfigError",
    "InjeqtError",
    "MeasurementOrderError",
    "QasmSyntaxError",
    "UnsupportedGate",
    "analyze",
    "cli",
    "compare",
    "compile_pbc",
    "parse_qasm",
    "parse_qasm_file",
    "run_trials",
    "rz_viability",
    "sweep",
]


def analyze(factory="distillation", tech="surgery", c=None, config=None):
    """Closed-form report as a dict. `config` is an architecture dict."""
    cfg = json.dumps(config) if config is not None else None
    return json.loads(_injeqt.analyze_json(factory, tech, c, cfg))


def sweep(circuit, factory="distillation", tech="surgery", policy="injeqt", r=(1, 20), trials=20, seed=0):
    return json.loads(_injeqt.sweep_json(circuit, factory, tech, policy, r[0], r[1], trials, seed))


def compare(circuit, injeqt_factory="distillation", tech="surgery", r=(1, 20), trials=20, seed=0):
    return json.loads(_injeqt.compare_json(circuit, injeqt_factory, tech, r[0], r[1], trials, seed))


def cli(args):
    """Returns (exit_code, stdout, stderr)."""
    return _injeqt.cli(list(args))
