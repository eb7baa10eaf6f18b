"""Escape-time numerics for filled Julia sets.

Everything here is floating point and only ever used as a sanity check
beside the exact engine: the preimage identity ``X^-1(K(A)) == K(B)`` for a
semiconjugacy ``A o X == X o B`` is compared on low-discrepancy samples,
with points too close to the boundary left out.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import qmc

from .poly_core import Polynomial

__all__ = [
    "BOUNDED",
    "DEFAULT_CAP",
    "DEFAULT_MARGIN",
    "AgreementReport",
    "JuliaGrid",
    "bounded_indicator",
    "check_preimage_identity",
    "escape_radius",
    "escape_steps",
    "render",
    "write_pgm",
]

# Escape step recorded for orbits that stay bounded up to the cap.
BOUNDED = -1
DEFAULT_CAP = 200
DEFAULT_MARGIN = 3


def escape_radius(P: Polynomial) -> float:
    """A radius beyond which every orbit of P escapes monotonically."""
    c = P.complex_coeffs()
    lead = abs(c[-1])
    return max(2.0, (1.0 + sum(abs(x) for x in c[:-1])) / lead)


def escape_steps(P: Polynomial, z, cap: int = DEFAULT_CAP, radius: float | None = None) -> np.ndarray:
    """Vectorized escape time: first k with |P^k(z)| > radius, or BOUNDED."""
    coeffs = P.complex_coeffs()
    radius = escape_radius(P) if radius is None else radius
    shape = np.shape(z)
    w = np.array(z, dtype=complex).ravel()
    steps = np.full(w.shape, BOUNDED, dtype=np.int64)
    alive = np.abs(w) <= radius
    steps[~alive] = 0
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, cap + 1):
            if not alive.any():
                break
            cur = w[alive]
            acc = np.full(cur.shape, coeffs[-1], dtype=complex)
            for c in reversed(coeffs[:-1]):
                acc = acc * cur + c
            w[alive] = acc
            # Overflow to inf/nan counts as escape.
            out = ~(np.abs(acc) <= radius)
            idx = np.flatnonzero(alive)[out]
            steps[idx] = k
            alive[idx] = False
    return steps.reshape(shape)


def bounded_indicator(P: Polynomial, z: complex, cap: int = DEFAULT_CAP, radius: float | None = None) -> int:
    """BOUNDED if the orbit of z stays within ``radius`` for ``cap`` steps,
    else the first step k with |P^k(z)| > radius."""
    if P.degree < 2:
        raise ValueError("escape time needs deg P >= 2")
    radius = escape_radius(P) if radius is None else radius
    if radius < escape_radius(P):
        raise ValueError("radius below the escape bound")
    return int(escape_steps(P, np.array([z]), cap, radius)[0])


@dataclass
class AgreementReport:
    samples: int
    retained: int
    agreement: float
    counterexamples: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _sample_half_width(B: Polynomial) -> float:
    # K(B) sits inside the escape disc; the slack adds a band of escaping points.
    return 1.1 * escape_radius(B)


def _retained(steps: np.ndarray, cap: int, margin: int) -> np.ndarray:
    return (steps == BOUNDED) | (steps < cap - margin)


def check_preimage_identity(A: Polynomial, X: Polynomial, B: Polynomial, samples: int = 10_000,
                            seed: int = 0, margin: int = DEFAULT_MARGIN,
                            cap: int = DEFAULT_CAP, max_counterexamples: int = 10) -> AgreementReport:
    """Compare ``z in K(B)`` with ``X(z) in K(A)`` on Halton samples.

    Points whose escape time on either side falls within ``margin`` steps
    of the cap are treated as undecided and dropped.
    """
    half = _sample_half_width(B)
    pts = qmc.Halton(d=2, scramble=True, seed=seed).random(samples)
    z = (2 * pts[:, 0] - 1) * half + 1j * (2 * pts[:, 1] - 1) * half
    xc = X.complex_coeffs()
    with np.errstate(over="ignore", invalid="ignore"):
        xz = np.full(z.shape, xc[-1], dtype=complex)
        for c in reversed(xc[:-1]):
            xz = xz * z + c
    sb = escape_steps(B, z, cap)
    sa = escape_steps(A, xz, cap)
    keep = _retained(sb, cap, margin) & _retained(sa, cap, margin)
    inside_b = sb == BOUNDED
    inside_a = sa == BOUNDED
    agree = keep & (inside_b == inside_a)
    retained = int(keep.sum())
    bad = np.flatnonzero(keep & ~agree)[:max_counterexamples]
    examples = [
        {"z": [float(z[i].real), float(z[i].imag)], "indB": int(sb[i]), "indA": int(sa[i])}
        for i in bad
    ]
    frac = float(agree.sum()) / retained if retained else 1.0
    return AgreementReport(samples, retained, frac, examples)


@dataclass(frozen=True)
class JuliaGrid:
    bounds: tuple[float, float, float, float]  # re_min, re_max, im_min, im_max
    resolution: tuple[int, int]  # width, height
    iterations: int = DEFAULT_CAP
    escape_radius: float | None = None

    def points(self) -> np.ndarray:
        x0, x1, y0, y1 = self.bounds
        w, h = self.resolution
        # Pixel centres; row 0 is the top of the image.
        xs = x0 + (np.arange(w) + 0.5) * (x1 - x0) / w
        ys = y1 - (np.arange(h) + 0.5) * (y1 - y0) / h
        return xs[None, :] + 1j * ys[:, None]

    def indicator(self, P: Polynomial) -> np.ndarray:
        radius = self.escape_radius if self.escape_radius is not None else escape_radius(P)
        if radius < escape_radius(P):
            raise ValueError("escape radius below the bound for this polynomial")
        return escape_steps(P, self.points(), self.iterations, radius)


def _gray(steps: np.ndarray, cap: int) -> np.ndarray:
    img = np.zeros(steps.shape, dtype=np.uint8)
    esc = steps != BOUNDED
    # Fast escape is bright; bounded orbits stay black.
    img[esc] = 255 - (np.minimum(steps[esc], cap) * 200) // max(cap, 1)
    return img


def write_pgm(path: str | Path, img: np.ndarray) -> None:
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img, dtype=np.uint8).tobytes())


def render(grid: JuliaGrid, P: Polynomial, path: str | Path) -> np.ndarray:
    """Write the escape-time picture of P as an 8-bit binary PGM and return it."""
    img = _gray(grid.indicator(P), grid.iterations)
    write_pgm(path, img)
    return img
