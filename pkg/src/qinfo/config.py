"""Run defaults: the packaged defaults.json, overlaid by the file named in QINFO_CONFIG."""
from __future__ import annotations

import json
import os
from importlib import resources

from .measures import QuadratureSpec


def _merge(base: dict, over: dict) -> dict:
    out = dict(base)
    for k, v in over.items():
        out[k] = _merge(out[k], v) if isinstance(v, dict) and isinstance(out.get(k), dict) else v
    return out


def load_config(path: str | None = None) -> dict:
    cfg = json.loads(resources.files("qinfo").joinpath("defaults.json").read_text())
    path = path or os.environ.get("QINFO_CONFIG")
    if path:
        with open(path) as fh:
            cfg = _merge(cfg, json.load(fh))
    return cfg


def quadrature_spec(cfg: dict, **overrides) -> QuadratureSpec:
    q = dict(cfg["quadrature"])
    q.update({k: v for k, v in overrides.items() if v is not None})
    return QuadratureSpec(**q)
