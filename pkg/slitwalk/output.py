"""Writing run results to disk: CSV data, an extrema summary and a manifest."""

import json
import logging
import os
import shutil
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Generator, Optional, Tuple, Union

import numpy as np

from . import __version__
from .config import render_config
from .errors import OutputError
from .experiments import ExperimentResult, OutputOptions
from .lattice import parity_mask
from .measurement import screen_profile
from .misc import sha256_of_file, utcnow
from .topology import AXIS

log = logging.getLogger(__name__)

FIELD_FILE = "field.csv"
SCREEN_FILE = "screen.csv"
EXTREMA_FILE = "extrema.json"
MANIFEST_FILE = "manifest.json"

CSV_FORMAT = "%.17g"


@dataclass(frozen=True)
class RunManifest:
    directory: Path
    config_text: str
    version: str
    assumptions: Tuple[str, ...]
    files: Tuple[Tuple[str, str], ...]
    created_at: str
    metadata: Dict[str, Any]

    def checksum(self, name: str) -> Optional[str]:
        return dict(self.files).get(name)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "tool": "slitwalk",
            "version": self.version,
            "created_at": self.created_at,
            "config": self.config_text,
            "assumptions": list(self.assumptions),
            "files": [{"path": name, "sha256": digest} for name, digest in self.files],
            "metadata": self.metadata,
        }


@contextmanager
def staged_directory(path: Union[str, Path]) -> Generator[Path, None, None]:
    """Context manager for writing a set of files all at once.

    with staged_directory('out') as staging:
        (staging / 'a.csv').write_text(...)

    Files move into ``path`` when the block exits cleanly; on an exception
    nothing in ``path`` changes.
    """
    target = Path(path)
    target.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=f".{target.name}-staging-", dir=str(target.parent)))
    try:
        yield staging
        for f in sorted(staging.iterdir()):
            os.replace(str(f), str(target / f.name))
    finally:
        shutil.rmtree(str(staging), ignore_errors=True)


def _write_csv(fpath: Path, header: str, rows: np.ndarray) -> None:
    np.savetxt(str(fpath), rows, fmt=CSV_FORMAT, delimiter=",", header=header, comments="")


def field_rows(result: ExperimentResult, options: OutputOptions) -> np.ndarray:
    """``(m, n, P)`` rows over the lattice sites of the box, row-major."""
    P = result.probability
    ms, ns = P.coordinates()
    i, l = np.nonzero(parity_mask(P.radius))
    values = P.values[i, l]
    keep = values > options.eps if options.filter_nonzero else np.ones(len(values), dtype=bool)
    return np.column_stack([ms[i][keep], ns[l][keep], values[keep]])


def _extrema_summary(result: ExperimentResult) -> Dict[str, Any]:
    summary: Dict[str, Any] = {
        "name": result.config.name,
        "coin": result.config.coin,
        "steps": result.config.steps,
        "transmitted_fraction": result.transmitted_fraction,
        "assumptions": list(result.assumptions),
        "max_norm_drift": result.max_norm_drift,
        "maxima": [],
        "minima": [],
        "threshold": result.config.outputs.threshold,
        "central": None,
        "valley_ratio": None,
    }
    e = result.extrema
    if e is not None:
        summary["maxima"] = [{"row": r, "intensity": v} for r, v in e.maxima]
        summary["minima"] = [{"row": r, "intensity": v} for r, v in e.minima]
        summary["threshold"] = e.threshold
        if e.central_index is not None:
            summary["central"] = {"row": e.maxima[e.central_index][0], "axis": e.axis}
        summary["valley_ratio"] = e.valley_ratio()
    return summary


def write_outputs(
    result: ExperimentResult, options: Optional[OutputOptions] = None
) -> RunManifest:
    """
    Args:
        result: a finished run.
        options: where and what to write; defaults to ``result.config.outputs``.

    Returns:
        The :class:`RunManifest` that was also written as ``manifest.json``.

    Only ``manifest.json`` carries a timestamp, so rerunning a config
    reproduces every checksum it lists.
    """
    if options is None:
        options = result.config.outputs
    directory = Path(options.directory)

    try:
        with staged_directory(directory) as staging:
            written = []
            if "field" in options.products:
                _write_csv(staging / FIELD_FILE, "m,n,P", field_rows(result, options))
                written.append(FIELD_FILE)

            if "screen" in options.products and result.screen is not None:
                row_name = "n" if result.screen.orientation == AXIS else "u"
                profile = screen_profile(result.screen, options.filter_nonzero, options.eps)
                rows = np.array(profile, dtype=float).reshape(-1, 2)
                _write_csv(staging / SCREEN_FILE, f"{row_name},intensity", rows)
                written.append(SCREEN_FILE)

            if "extrema" in options.products:
                with open(str(staging / EXTREMA_FILE), "w", encoding="utf-8") as f:
                    json.dump(_extrema_summary(result), f, indent=2, sort_keys=True)
                    f.write("\n")
                written.append(EXTREMA_FILE)

            manifest = RunManifest(
                directory=directory,
                config_text=render_config(result.config),
                version=__version__,
                assumptions=tuple(result.assumptions),
                files=tuple((name, sha256_of_file(staging / name)) for name in written),
                created_at=utcnow().to_iso8601_string(),
                metadata=dict(result.metadata),
            )
            with open(str(staging / MANIFEST_FILE), "w", encoding="utf-8") as f:
                json.dump(manifest.as_dict(), f, indent=2, sort_keys=True)
                f.write("\n")
    except OSError as e:
        raise OutputError(f"could not write outputs to {directory}: {e}") from e

    for name in written:
        log.info("wrote %s", directory / name)
    return manifest


def read_manifest(directory: Union[str, Path]) -> Dict[str, Any]:
    with open(str(Path(directory) / MANIFEST_FILE), encoding="utf-8") as f:
        return json.load(f)
