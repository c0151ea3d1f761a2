"""Tensor documents, boundary CSV and SVG output.

A tensor document is JSON::

    {"shape": [2, 2], "row_modes": 1, "data": [[1, 0], [0, 0], [0, 0], [1, 0]]}

with ``data`` holding ``[re, im]`` pairs in row-major order.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .errors import TensorError
from .tensor import Tensor


class DocumentError(TensorError):
    """Malformed tensor document; the message names the offending line or field."""


def _reject_constant(name):
    raise DocumentError(f"non-finite value {name} is not allowed")


def parse_tensor(text: str) -> Tensor:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("shape", "row_modes", "data"):
        if key not in doc:
            raise DocumentError(f"missing field '{key}'")
    shape = doc["shape"]
    if not isinstance(shape, list) or not all(
        isinstance(n, int) and not isinstance(n, bool) and n > 0 for n in shape
    ):
        raise DocumentError("field 'shape': expected a list of positive integers")
    row_modes = doc["row_modes"]
    if not isinstance(row_modes, int) or isinstance(row_modes, bool) or not 0 <= row_modes <= len(shape):
        raise DocumentError(f"field 'row_modes': expected an integer in [0, {len(shape)}]")
    data = doc["data"]
    if not isinstance(data, list):
        raise DocumentError("field 'data': expected a list of [re, im] pairs")
    expected = math.prod(shape)
    if len(data) != expected:
        raise DocumentError(f"field 'data': expected {expected} entries for shape {shape}, got {len(data)}")
    values = np.empty(expected, dtype=np.complex128)
    for k, pair in enumerate(data):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise DocumentError(f"field 'data[{k}]': expected a [re, im] number pair")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise DocumentError(f"field 'data[{k}]': non-finite value")
        values[k] = complex(re, im)
    return Tensor(values.reshape(shape), row_modes)


def serialize_tensor(T: Tensor) -> str:
    """Canonical document text; ``parse_tensor`` inverts it bit-exactly."""
    rows = ",\n".join(
        f"    [{json.dumps(float(z.real))}, {json.dumps(float(z.imag))}]" for z in T.array.ravel()
    )
    return (
        "{\n"
        f'  "shape": {json.dumps(list(T.shape))},\n'
        f'  "row_modes": {T.row_modes},\n'
        f'  "data": [\n{rows}\n  ]\n'
        "}\n"
    )


def read_tensor(path) -> Tensor:
    with open(path, encoding="utf-8") as fh:
        return parse_tensor(fh.read())


def write_tensor(path, T: Tensor) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_tensor(T))


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def boundary_csv(boundary) -> str:
    lines = ["theta,support,re,im"]
    for s in boundary.samples:
        lines.append(",".join((_g17(s.theta), _g17(s.support), _g17(s.point.real), _g17(s.point.imag))))
    return "\n".join(lines) + "\n"


def boundary_svg(points, eigenvalues=(), width=800, height=600, margin=0.05) -> str:
    """Closed polyline through ``points`` plus cross markers at ``eigenvalues``.

    Both axes share one scale; the drawing is centred with ``margin`` padding.
    """
    pts = np.asarray(points, dtype=np.complex128)
    eigs = np.asarray(list(eigenvalues), dtype=np.complex128)
    allz = np.concatenate([pts, eigs])
    xmin, xmax = allz.real.min(), allz.real.max()
    ymin, ymax = allz.imag.min(), allz.imag.max()
    span_x = max(xmax - xmin, 1e-12)
    span_y = max(ymax - ymin, 1e-12)
    inner_w, inner_h = width * (1 - 2 * margin), height * (1 - 2 * margin)
    scale = min(inner_w / span_x, inner_h / span_y)
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2

    def to_px(z):
        return width / 2 + (z.real - cx) * scale, height / 2 - (z.imag - cy) * scale

    poly = " ".join("{:.3f},{:.3f}".format(*to_px(z)) for z in pts)
    arm = 6
    marks = []
    for z in eigs:
        x, y = to_px(z)
        marks.append(
            f'<path d="M{x - arm:.3f},{y - arm:.3f} L{x + arm:.3f},{y + arm:.3f} '
            f'M{x - arm:.3f},{y + arm:.3f} L{x + arm:.3f},{y - arm:.3f}" '
            'stroke="red" stroke-width="2" fill="none"/>'
        )
    x0, y0 = to_px(0j)
    axes = (
        f'<line x1="0" y1="{y0:.3f}" x2="{width}" y2="{y0:.3f}" stroke="#bbb" stroke-width="1"/>\n'
        f'<line x1="{x0:.3f}" y1="0" x2="{x0:.3f}" y2="{height}" stroke="#bbb" stroke-width="1"/>'
    )
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f"{axes}\n"
        f'<polygon points="{poly}" fill="#dde8f6" stroke="#1f4e9a" stroke-width="1.5"/>\n'
        + "\n".join(marks)
        + ("\n" if marks else "")
        + "</svg>\n"
    )
