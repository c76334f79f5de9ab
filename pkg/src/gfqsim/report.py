"""Report emission: atomic file writes, JSON/CSV serialization with an
embedded configuration echo, and matplotlib figures rendered next to the
delimited output."""

from __future__ import annotations

import json
import os
import tempfile

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .config import RunConfig, canonical_echo, config_dict  # noqa: E402


def atomic_write_text(path: str, text: str):
    """Write text via a temp file in the same directory plus rename, so a
    crashed run never leaves a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def json_text(payload: dict, cfg: RunConfig = None) -> str:
    """Canonical JSON serialization with the effective config embedded."""
    body = dict(payload)
    if cfg is not None:
        body["config"] = config_dict(cfg)
    return json.dumps(body, indent=2, sort_keys=True,
                      ensure_ascii=True) + "\n"


def csv_text(header, rows, cfg: RunConfig = None) -> str:
    """CSV with '.' decimals, ',' separator, LF endings; the config echo is
    embedded as '#'-prefixed comment lines above the header."""
    lines = []
    if cfg is not None:
        for line in canonical_echo(cfg).rstrip("\n").split("\n"):
            lines.append(f"# {line}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_json(path: str, payload: dict, cfg: RunConfig = None):
    atomic_write_text(path, json_text(payload, cfg))


def write_csv(path: str, header, rows, cfg: RunConfig = None):
    atomic_write_text(path, csv_text(header, rows, cfg))


# ---------------------------------------------------------------------------
# figures


def _save(fig, path: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_landscape(path: str, xs, ys, energy, minima=()):
    """Filled contour map of the 2D potential with minima marked."""
    fig, ax = plt.subplots(figsize=(6, 4.2))
    cs = ax.contourf(np.asarray(xs), np.asarray(ys),
                     np.asarray(energy).T, levels=40, cmap="viridis")
    fig.colorbar(cs, ax=ax, label="V / E_J")
    for m in minima:
        ax.plot(m.position[0], m.position[-1], "r+", ms=10, mew=2)
    ax.set_xlabel(r"$\varphi_p$")
    ax.set_ylabel(r"$\tilde\varphi_m$")
    _save(fig, path)


def render_cut(path: str, phi_p, energy, minima=()):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(np.asarray(phi_p), np.asarray(energy), "b-")
    for m in minima:
        ax.plot(m.position[0], m.energy, "ro")
    ax.set_xlabel(r"$\varphi_p$")
    ax.set_ylabel("V / E_J")
    _save(fig, path)


def render_curves(path: str, x, series, xlabel, ylabel):
    """Overlaid line plots; `series` maps legend label to a y-array."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label in sorted(series):
        ax.plot(np.asarray(x), np.asarray(series[label]), label=str(label))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if len(series) > 1:
        ax.legend()
    _save(fig, path)
