"""JSON loaders for cones, gauges and descent problems."""

import json
import os
import tempfile
from pathlib import Path

from .cones import Lorentz, Orthant, PolyhedralCone
from .descent import DescentConfig
from .exceptions import ConeError
from .gauge import FiniteGauge, OrientedDistanceGauge


def _read_json(source, base_dir=None):
    """Accept a dict, a JSON string path, or a Path; return ``(obj, directory)``."""
    if isinstance(source, dict):
        return source, base_dir
    path = Path(source)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    with open(path) as fh:
        return json.load(fh), path.parent


def cone_from_dict(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ConeError("cone object needs a 'kind' field")
    kind = obj["kind"]
    if kind == "orthant":
        return Orthant(obj["dim"])
    if kind == "lorentz":
        return Lorentz(obj["dim"])
    if kind == "polyhedral":
        cone = PolyhedralCone(obj["generators"], obj.get("dual_generators"))
        if "dim" in obj and int(obj["dim"]) != cone.dim:
            raise ConeError(f"declared dim {obj['dim']} does not match generators ({cone.dim})")
        return cone
    raise ConeError(f"unknown cone kind {kind!r}")


def load_cone(source, base_dir=None):
    obj, _ = _read_json(source, base_dir)
    return cone_from_dict(obj)


def load_gauge(source, base_dir=None):
    """``{"cone": ..., "dual_set": [...]}`` or ``{"cone": ..., "kind": "oriented"}``.

    The cone may be inline or a path relative to the gauge file.
    """
    obj, here = _read_json(source, base_dir)
    if not isinstance(obj, dict) or "cone" not in obj:
        raise ConeError("gauge object needs a 'cone' field")
    cone_src = obj["cone"]
    cone = cone_from_dict(cone_src) if isinstance(cone_src, dict) else load_cone(cone_src, here)
    kind = obj.get("kind", "finite")
    if kind == "oriented":
        return OrientedDistanceGauge(cone)
    if kind != "finite" or "dual_set" not in obj:
        raise ConeError("finite gauge needs a 'dual_set'")
    return FiniteGauge(cone, obj["dual_set"])


def load_problem(source):
    obj, here = _read_json(source)
    for key in ("problem", "x0", "cone"):
        if key not in obj:
            raise ValueError(f"problem file lacks {key!r}")
    cone = cone_from_dict(obj["cone"]) if isinstance(obj["cone"], dict) else load_cone(obj["cone"], here)
    cfg = DescentConfig(**obj.get("config", {}))
    return obj["problem"], [float(v) for v in obj["x0"]], cone, obj.get("dual_set"), cfg


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temporary file in the same directory."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
