"""Operand quantisation and the four binary input-encoding schemes.

Signed operands in {-1, 0, 1} must be expressed as {0, 1} pulse trains
before they can drive a binary crossbar. Four schemes are supported, each
with an affine rule that recovers the signed dot product from the per-phase
crossbar results:

===== ==================== =============================== ======
mode  input mapping        dot-product reconstruction      cycles
===== ==================== =============================== ======
B-I   x = 2*xp - 1         y = 2*(xp . w) - sum(w)         1
B-II  x = -2*xn + 1        y = -2*(xn . w) + sum(w)        1
T-I   x = xp - xn          y = (xp . w) - (xn . w)         2
T-II  x = -2*x1 + x0       y = -2*(x1 . w) + (x0 . w)      2
===== ==================== =============================== ======

B-I/B-II admit only inputs in {-1, +1}; T-I splits positive and negative
parts, T-II bit-slices the two's-complement representation (-1 = 11b,
0 = 00b, +1 = 01b, so x1 flags -1 and x0 flags odd values).

All transformations are pure and stateless.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import CalibrationError, EncodingError, ValidationError


class EncodingMode(enum.Enum):
    B_I = "B-I"
    B_II = "B-II"
    T_I = "T-I"
    T_II = "T-II"

    @property
    def cycles(self) -> int:
        return 1 if self in (EncodingMode.B_I, EncodingMode.B_II) else 2

    @property
    def needs_weight_sums(self) -> bool:
        return self in (EncodingMode.B_I, EncodingMode.B_II)

    @classmethod
    def parse(cls, text: str) -> "EncodingMode":
        for mode in cls:
            if mode.value == text:
                return mode
        raise EncodingError(
            f"unknown encoding mode {text!r} (expected one of "
            + ", ".join(m.value for m in cls)
            + ")"
        )


@dataclass(frozen=True)
class QuantisationSpec:
    """Binary (sign) or ternary (dead-band threshold) quantiser."""

    kind: str  # "binary" or "ternary"
    threshold: float | None = None

    def __post_init__(self):
        if self.kind not in ("binary", "ternary"):
            raise ValidationError(f"unknown quantiser kind {self.kind!r}")
        if self.kind == "ternary":
            if self.threshold is None:
                raise ValidationError("ternary quantiser needs a threshold")
            if self.threshold < 0:
                raise ValidationError("ternary threshold must be >= 0")
        elif self.threshold is not None:
            raise ValidationError("binary quantiser carries no threshold")


@dataclass(frozen=True)
class EncodedInput:
    """Binary pulse phases for one signed input vector plus its decode rule.

    ``phases`` holds one {0,1} vector per cycle. The signed dot product is
    recovered as ``sum(phase_coeffs[p] * result[p]) + sum_w_coeff * sum(w)``.
    """

    mode: EncodingMode
    phases: tuple[np.ndarray, ...]
    phase_coeffs: tuple[float, ...]
    sum_w_coeff: float


def quantise(values, spec: QuantisationSpec) -> np.ndarray:
    """Quantise real values to {-1, +1} (binary) or {-1, 0, +1} (ternary).

    Binary maps x >= 0 to +1. Ternary zeroes the open band |x| < T; on the
    boundary |x| = T the sign wins (with +1 at exactly 0 when T = 0).
    """
    x = np.asarray(values)
    if spec.kind == "binary":
        return np.where(x >= 0, 1, -1).astype(np.int8)
    dead = np.abs(x) < spec.threshold
    return np.where(dead, 0, np.where(x >= 0, 1, -1)).astype(np.int8)


def calibrate_ternary_threshold(weights, factor: float = 0.7) -> float:
    """Per-layer ternary threshold: ``factor * mean(|w|)`` (0.7 by default)."""
    w = np.asarray(weights, dtype=np.float64)
    if w.size == 0:
        raise CalibrationError("cannot calibrate a threshold from an empty weight vector")
    return float(factor * np.abs(w).mean())


# Per-mode decode coefficients: (per-phase multipliers, sum(w) multiplier).
_DECODE = {
    EncodingMode.B_I: ((2.0,), -1.0),
    EncodingMode.B_II: ((-2.0,), 1.0),
    EncodingMode.T_I: ((1.0, -1.0), 0.0),
    EncodingMode.T_II: ((-2.0, 1.0), 0.0),
}


def encode_input(x, mode: EncodingMode) -> EncodedInput:
    """Split a signed {-1,0,1} vector into the mode's binary pulse phases."""
    xv = np.asarray(x)
    if not np.isin(xv, (-1, 0, 1)).all():
        bad = np.unique(xv[~np.isin(xv, (-1, 0, 1))])
        raise EncodingError(f"inputs must lie in {{-1, 0, 1}}, found {bad.tolist()}")
    if mode.needs_weight_sums:  # binary-only modes
        zeros = np.flatnonzero(xv == 0)
        if zeros.size:
            raise EncodingError(
                f"mode {mode.value} admits only -1/+1 inputs; "
                f"found 0 at index {int(zeros[0])}"
            )

    if mode is EncodingMode.B_I:
        phases = ((xv == 1).astype(np.uint8),)
    elif mode is EncodingMode.B_II:
        phases = ((xv == -1).astype(np.uint8),)
    elif mode is EncodingMode.T_I:
        phases = ((xv == 1).astype(np.uint8), (xv == -1).astype(np.uint8))
    else:  # T-II, two's-complement bit slices
        phases = ((xv == -1).astype(np.uint8), (xv != 0).astype(np.uint8))
    coeffs, sum_w = _DECODE[mode]
    return EncodedInput(mode, phases, coeffs, sum_w)


def reconstruct_dot(phase_results, mode: EncodingMode, weight_sums=None) -> np.ndarray:
    """Apply the mode's affine identity to per-phase dot-product results.

    ``phase_results`` holds one array per cycle (any matching shapes, last
    axis = logical columns). ``weight_sums`` carries the per-column sum(w)
    required by B-I/B-II.
    """
    results = [np.asarray(r, dtype=np.float64) for r in phase_results]
    if len(results) != mode.cycles:
        raise EncodingError(
            f"mode {mode.value} expects {mode.cycles} phase result(s), got {len(results)}"
        )
    enc = encode_input(np.zeros(0, dtype=np.int8), mode)
    out = sum(c * r for c, r in zip(enc.phase_coeffs, results))
    if mode.needs_weight_sums:
        if weight_sums is None:
            raise ValueError(f"mode {mode.value} requires per-column weight sums")
        out = out + enc.sum_w_coeff * np.asarray(weight_sums, dtype=np.float64)
    return out
