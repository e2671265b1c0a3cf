"""JSON serialization of frames and dual pairs, and table formatting."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import FrameLabError
from .frame import DualPair, Frame, canonical_dual


class FormatError(FrameLabError, ValueError):
    """Malformed frame or pair file."""


def matrix_to_json(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def frame_to_dict(F: Frame) -> dict:
    return {"dim": F.dim, "vectors": matrix_to_json(F.vectors)}


def pair_to_dict(P: DualPair) -> dict:
    return {"F": frame_to_dict(P.F), "G": frame_to_dict(P.G)}


def _parse_vectors(raw, dim: int) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise FormatError("'vectors' must be a non-empty list")
    out = np.empty((len(raw), dim), dtype=complex)
    for i, vec in enumerate(raw):
        if not isinstance(vec, list) or len(vec) != dim:
            got = len(vec) if isinstance(vec, list) else type(vec).__name__
            raise FormatError(f"vector {i} has {got} entries, expected dim={dim}")
        for k, z in enumerate(vec):
            if not (isinstance(z, list) and len(z) == 2):
                raise FormatError(f"entry ({i},{k}) must be a [re, im] pair")
            try:
                out[i, k] = complex(float(z[0]), float(z[1]))
            except (TypeError, ValueError) as exc:
                raise FormatError(f"entry ({i},{k}) is not numeric: {z!r}") from exc
    return out


def frame_from_dict(d: dict) -> Frame:
    if not isinstance(d, dict) or "dim" not in d or "vectors" not in d:
        raise FormatError("frame object needs 'dim' and 'vectors'")
    dim = d["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FormatError(f"'dim' must be a positive integer, got {dim!r}")
    return Frame(_parse_vectors(d["vectors"], dim))


def pair_from_dict(d: dict, tol: float = 1e-9) -> DualPair:
    if "F" not in d or "G" not in d:
        raise FormatError("pair object needs 'F' and 'G'")
    return DualPair(frame_from_dict(d["F"]), frame_from_dict(d["G"]), tol)


def dumps(obj: dict) -> str:
    # repr-based float output round-trips every double exactly
    return json.dumps(obj, indent=1)


def write_json(path, obj: dict) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_pair(path, tol: float = 1e-9) -> DualPair:
    """Read a pair file; a bare frame file is paired with its canonical dual."""
    d = read_json(path)
    if isinstance(d, dict) and "F" in d:
        return pair_from_dict(d, tol)
    F = frame_from_dict(d)
    return DualPair(F, canonical_dual(F), tol)


def load_frame(path) -> Frame:
    d = read_json(path)
    if isinstance(d, dict) and "F" in d:
        return frame_from_dict(d["F"])
    return frame_from_dict(d)


# --------------------------------------------------------------------------
# text rendering


def fmt_real(x) -> str:
    return "-" if x is None else f"{x:.6f}"


def fmt_complex(z) -> str:
    z = complex(z)
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.6f}{sign}{abs(z.imag):.6f}i"


def table(rows: list[list[str]], header: list[str] | None = None) -> str:
    allrows = ([header] if header else []) + rows
    if not allrows:
        return ""
    widths = [max(len(r[k]) for r in allrows) for k in range(len(allrows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in allrows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
