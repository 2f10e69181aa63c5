"""Scenario files: build a spectrum, evaluate inequalities, write reports.

A scenario is a JSON object::

    {
      "name": "cube",
      "geometry": {"variant": "box", "lengths": [1, 1, 1]},
      "operator": "laplacian",
      "spectrum_source": "analytic",          # or "fem", "fd", {"file": path}
      "count": 11,
      "inequalities": ["yang1"],               # or "applicable"
      "k_range": [1, 10],
      "sobolev": {"c1": {"preset": "talenti"}, "c2": {"value": 0.3}},
      "options": {"grid_h": 0.0625, "levels": 2},
      "output": "reports/cube"
    }

Relative paths are resolved against the scenario file's directory.  The
report is written to ``<output>.json`` and ``<output>.csv``.
"""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import os
import platform
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from . import __version__, kernels
from .bounds import InequalityId, REGISTRY, applicable_ids, check
from .errors import EigenboundError, ScenarioError
from .types import (
    Box,
    EuclideanBall,
    MeshGeometry,
    Operator,
    SobolevConfig,
    Spectrum,
    dumps,
    geometry_from_dict,
    validate_spectrum,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

CSV_COLUMNS = ["scenario", "inequality", "k", "lhs", "rhs", "holds", "tightness", "implied_bound"]


@dataclass
class Scenario:
    name: str
    geometry: Any
    operator: Operator
    spectrum_source: Union[str, Dict[str, str]]
    count: int
    inequalities: Union[str, List[str]]
    k_range: Tuple[int, int]
    sobolev: Optional[SobolevConfig] = None
    options: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    base_dir: str = "."

    @classmethod
    def from_dict(cls, d: dict, base_dir: str = ".") -> "Scenario":
        try:
            k_range = d.get("k_range", [1, 1])
            sc = cls(
                name=str(d["name"]),
                geometry=geometry_from_dict(d["geometry"]),
                operator=Operator(d.get("operator", "laplacian")),
                spectrum_source=d.get("spectrum_source", "analytic"),
                count=int(d.get("count", int(k_range[1]) + 1)),
                inequalities=d.get("inequalities", "applicable"),
                k_range=(int(k_range[0]), int(k_range[1])),
                sobolev=SobolevConfig.from_dict(d["sobolev"]) if d.get("sobolev") else None,
                options=dict(d.get("options", {})),
                output=d.get("output"),
                base_dir=base_dir,
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, EigenboundError):
                raise
            raise ScenarioError(f"malformed scenario: {exc!r}") from None
        if sc.k_range[0] < 1 or sc.k_range[1] < sc.k_range[0]:
            raise ScenarioError(f"bad k_range {list(sc.k_range)}")
        if sc.count < sc.k_range[1] + 1:
            raise ScenarioError(f"count {sc.count} must be at least max(k_range) + 1")
        return sc

    def resolve(self, path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(self.base_dir, path)


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from None
    return Scenario.from_dict(d, os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------


def _load_spectrum_file(path: str) -> Spectrum:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read spectrum {path}: {exc}") from None
    try:
        s = Spectrum.from_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, EigenboundError):
            raise
        raise ScenarioError(f"malformed spectrum file {path}: {exc!r}") from None
    return validate_spectrum(s)


def _mesh_for(sc: Scenario):
    from .mesh import grid, load_mesh, tetgrid

    g = sc.geometry
    if isinstance(g, MeshGeometry):
        return load_mesh(sc.resolve(g.path), g.intrinsic_dim)
    if isinstance(g, Box) and g.dim in (2, 3):
        res = int(sc.options.get("resolution", 32 if g.dim == 2 else 12))
        if g.dim == 2:
            return grid(res, res, g.lengths[0], g.lengths[1])
        return tetgrid(res, lengths=g.lengths)
    raise ScenarioError("fem spectra need a mesh geometry or a 2-d/3-d box")


def build_spectrum(sc: Scenario) -> Spectrum:
    """Compute or load the scenario's spectrum."""
    src = sc.spectrum_source
    if isinstance(src, dict):
        if "file" not in src:
            raise ScenarioError("spectrum_source object needs a 'file' entry")
        s = _load_spectrum_file(sc.resolve(src["file"]))
        if s.operator is not sc.operator:
            raise ScenarioError(f"spectrum file holds a {s.operator.value} spectrum")
        return s
    if src == "analytic":
        from .spectra import spectrum_for_geometry

        return spectrum_for_geometry(sc.geometry, sc.operator, sc.count)
    if src == "fem":
        from .fem import fem_dirichlet_eigs

        if sc.operator is not Operator.LAPLACIAN:
            raise ScenarioError("fem spectra are Dirichlet Laplacian spectra")
        return fem_dirichlet_eigs(_mesh_for(sc), sc.count).spectrum
    if src == "fd":
        from .fem import fd_plate_eigs

        if sc.operator is not Operator.BILAPLACIAN:
            raise ScenarioError("fd spectra are clamped-plate spectra")
        grid_h = float(sc.options.get("grid_h", 1.0 / 16))
        levels = int(sc.options.get("levels", 2))
        return fd_plate_eigs(sc.geometry, grid_h, sc.count, levels).spectrum
    raise ScenarioError(f"unknown spectrum_source {src!r}")


def build_curvature(sc: Scenario):
    g = sc.geometry
    if isinstance(g, MeshGeometry):
        from .mesh import discrete_mean_curvature

        return discrete_mean_curvature(_mesh_for(sc)).summary
    from .mesh import curvature_summary_analytic

    return curvature_summary_analytic(g)


def geometry_hash(sc: Scenario) -> str:
    h = hashlib.sha256(dumps(sc.geometry.to_dict()).encode())
    if isinstance(sc.geometry, MeshGeometry):
        try:
            with open(sc.resolve(sc.geometry.path), "rb") as fh:
                h.update(fh.read())
        except OSError:
            pass
    return h.hexdigest()


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        t = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        t = _dt.datetime.now(tz=_dt.timezone.utc)
    return t.replace(microsecond=0).isoformat()


def _versions() -> dict:
    import numpy
    import scipy

    return {
        "eigenbound": __version__,
        "kernels": kernels.BACKEND,
        "numpy": numpy.__version__,
        "python": platform.python_version(),
        "scipy": scipy.__version__,
    }


def content_hash(doc: dict) -> str:
    """SHA-256 of the canonical report text without timestamp and hash fields."""
    body = {k: v for k, v in doc.items() if k != "content_hash"}
    header = {k: v for k, v in body.get("header", {}).items() if k != "timestamp"}
    body["header"] = header
    return hashlib.sha256(dumps(body).encode()).hexdigest()


@dataclass
class ScenarioResult:
    document: dict
    exit_code: int
    csv_text: str


def _csv(name: str, rows: List[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        if "error" in r:
            continue
        w.writerow(
            [
                name,
                r["inequality_id"],
                r["k"],
                r["lhs"],
                r["rhs"],
                "true" if r["holds"] else "false",
                r["tightness"],
                "" if r["implied_bound"] is None else r["implied_bound"],
            ]
        )
    return buf.getvalue()


def evaluate_scenario(sc: Scenario) -> ScenarioResult:
    """Run a scenario in memory and return the report document and exit code."""
    header: Dict[str, Any] = {
        "scenario": sc.name,
        "versions": _versions(),
        "geometry": sc.geometry.to_dict(),
        "geometry_hash": geometry_hash(sc),
        "operator": sc.operator.value,
        "k_range": list(sc.k_range),
        "timestamp": _timestamp(),
    }
    rows: List[dict] = []
    try:
        spectrum = build_spectrum(sc)
        header["spectrum"] = {
            "source": spectrum.source,
            "count": len(spectrum.values),
            "dim_n": spectrum.dim_n,
        }
        curv = build_curvature(sc)
        header["curvature"] = curv.to_dict()
        if sc.inequalities == "applicable":
            ids = None
        else:
            try:
                ids = sorted({InequalityId(i) for i in sc.inequalities}, key=lambda i: i.value)
            except ValueError as exc:
                raise ScenarioError(str(exc)) from None
        needs_constants = ids is None or any(REGISTRY[i].constant for i in ids)
        sob = None
        if sc.sobolev is not None and needs_constants:
            from .sobolev import resolve_sobolev

            if spectrum.dim_n >= 3 or ids is not None:
                sob = resolve_sobolev(sc.sobolev, curv, spectrum.dim_n)
        header["constants"] = {
            "config": sc.sobolev.to_dict() if sc.sobolev else {},
            "derived": sob.to_dict() if sob else None,
        }
        if ids is None:
            ids = sorted(applicable_ids(spectrum, curv, sob), key=lambda i: i.value)
        for iid in ids:
            for k in range(sc.k_range[0], sc.k_range[1] + 1):
                try:
                    rows.append(check(iid, spectrum, k, curv, sob).to_dict())
                except EigenboundError as exc:
                    rows.append({"inequality_id": iid.value, "k": k, "error": exc.code, "message": str(exc)})
    except EigenboundError as exc:
        doc = {
            "header": header,
            "reports": rows,
            "status": "error",
            "error": {"code": exc.code, "message": str(exc)},
            "exit_code": EXIT_ERROR,
        }
        doc["content_hash"] = content_hash(doc)
        return ScenarioResult(doc, EXIT_ERROR, _csv(sc.name, rows))
    rows.sort(key=lambda r: (r["inequality_id"], r["k"]))
    if any("error" in r for r in rows):
        code, status = EXIT_ERROR, "error"
    elif all(r["holds"] for r in rows):
        code, status = EXIT_OK, "ok"
    else:
        code, status = EXIT_VIOLATION, "violation"
    doc = {"header": header, "reports": rows, "status": status, "exit_code": code}
    doc["content_hash"] = content_hash(doc)
    return ScenarioResult(doc, code, _csv(sc.name, rows))


def run_scenario(sc: Union[Scenario, str], output: Optional[str] = None) -> ScenarioResult:
    """Evaluate a scenario and write ``<output>.json`` and ``<output>.csv``.

    ``output`` overrides the scenario's own ``output`` entry; when neither is
    set nothing is written.
    """
    if isinstance(sc, str):
        sc = load_scenario(sc)
    res = evaluate_scenario(sc)
    target = output if output is not None else (sc.resolve(sc.output) if sc.output else None)
    if target:
        os.makedirs(os.path.dirname(os.path.abspath(target)), exist_ok=True)
        with open(target + ".json", "w", encoding="utf-8") as fh:
            fh.write(dumps(res.document))
        with open(target + ".csv", "w", encoding="utf-8") as fh:
            fh.write(res.csv_text)
    return res


def shipped_scenarios_dir() -> str:
    return os.path.join(os.path.dirname(__file__), "scenarios")


def main_suite(paths: List[str], output_dir: Optional[str] = None, stream=None) -> int:
    """Run scenario files (directories expand to their ``*.json`` files).

    Returns the worst exit code: 1 for errors, then 2 for violations.
    """
    stream = stream or sys.stdout
    files: List[str] = []
    for p in paths:
        if os.path.isdir(p):
            files += sorted(os.path.join(p, f) for f in os.listdir(p) if f.endswith(".json"))
        else:
            files.append(p)
    worst = EXIT_OK
    for f in files:
        try:
            sc = load_scenario(f)
        except EigenboundError as exc:
            stream.write(f"{f}: error {exc.code}: {exc}\n")
            worst = EXIT_ERROR
            continue
        out = os.path.join(output_dir, sc.name) if output_dir else None
        res = run_scenario(sc, out)
        status = res.document["status"]
        extra = f" {res.document['error']['code']}" if "error" in res.document else ""
        if status == "error" and not extra:
            codes = sorted({r["error"] for r in res.document["reports"] if "error" in r})
            extra = " " + ",".join(codes)
        stream.write(f"{sc.name}: {status}{extra} ({len(res.document['reports'])} rows)\n")
        if res.exit_code == EXIT_ERROR:
            worst = EXIT_ERROR
        elif res.exit_code == EXIT_VIOLATION and worst != EXIT_ERROR:
            worst = EXIT_VIOLATION
    return worst
