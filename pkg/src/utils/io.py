"""
CSV and JSON input/output with embedded schema versions
"""
import json
import logging
import math
import os
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from .. import SCHEMA_VERSION
from ..exceptions import DomainError
from ..models.profile import RadialProfile, Spectrum

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def schema_tag(kind: str) -> str:
    return f"hypwave.{kind}/{SCHEMA_VERSION}"


def write_table(df: pd.DataFrame, path: str, kind: str) -> str:
    """
    Write a data frame as CSV preceded by a schema comment line

    Args:
        df: Table to write
        path: Destination file
        kind: Schema kind (profile, spectrum, kernel, net, spherical)

    Returns:
        The path written
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(f"# schema: {schema_tag(kind)}\n")
        df.to_csv(f, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(df)} rows to {path}")
    return path


def read_table(path: str, kind: Optional[str] = None) -> pd.DataFrame:
    """
    Read a CSV written by write_table

    Args:
        path: Source file
        kind: Expected schema kind; checked when the file carries a header

    Returns:
        The table
    """
    with open(path, "r") as f:
        first = f.readline().strip()
    if kind is not None and first.startswith("# schema:"):
        found = first.split(":", 1)[1].strip()
        if not found.startswith(f"hypwave.{kind}/"):
            raise DomainError(f"{path} holds schema {found}, expected {schema_tag(kind)}")
    return pd.read_csv(path, comment="#")


def profile_frame(profile: RadialProfile) -> pd.DataFrame:
    return pd.DataFrame({
        "s": profile.s_grid,
        "re": np.real(profile.values),
        "im": np.imag(profile.values),
    })


def write_profile(profile: RadialProfile, path: str) -> str:
    return write_table(profile_frame(profile), path, "profile")


def read_profile(path: str) -> RadialProfile:
    df = read_table(path, "profile")
    if "s" not in df.columns:
        raise DomainError(f"{path} lacks an 's' column")
    return RadialProfile(df["s"].to_numpy(), _complex_column(df))


def write_spectrum(spectrum: Spectrum, path: str) -> str:
    df = pd.DataFrame({
        "lambda": spectrum.lam_grid,
        "re": np.real(spectrum.values),
        "im": np.imag(spectrum.values),
    })
    return write_table(df, path, "spectrum")


def read_spectrum(path: str) -> Spectrum:
    df = read_table(path, "spectrum")
    if "lambda" not in df.columns:
        raise DomainError(f"{path} lacks a 'lambda' column")
    return Spectrum(df["lambda"].to_numpy(), _complex_column(df))


def _complex_column(df: pd.DataFrame) -> np.ndarray:
    re = df["re"].to_numpy(dtype=float)
    if "im" in df.columns and np.any(df["im"].to_numpy(dtype=float) != 0):
        return re + 1j * df["im"].to_numpy(dtype=float)
    return re


def _sanitize(value: Any) -> Any:
    """Replace non-finite floats by None and numpy scalars by Python ones"""
    if isinstance(value, dict):
        return {str(k): _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_sanitize(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def write_json(payload: Dict[str, Any], path: str, kind: str) -> str:
    """
    Write a JSON document with a top-level schema key

    Args:
        payload: Report content
        path: Destination file
        kind: Schema kind (report, decomposition, growth)

    Returns:
        The path written
    """
    document = {"schema": schema_tag(kind)}
    document.update(_sanitize(payload))
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        json.dump(document, f, indent=2, sort_keys=True, allow_nan=False)
        f.write("\n")
    logger.info(f"Wrote {kind} report to {path}")
    return path


def read_json(path: str) -> Dict[str, Any]:
    with open(path, "r") as f:
        return json.load(f)
