"""Binary 1T1R crossbar model and its output-current solvers.

Data layout contract
--------------------
``g_matrix`` has shape ``(n_rows, n_cols)`` in uS. Row index 0 is the row
physically farthest from the column outputs (ADC side); row ``n_rows - 1``
is adjacent to the outputs. Results depend on this ordering whenever
``r_p > 0``, so it is part of the interface.

Each column is a resistive ladder: every row node connects to the read
voltage through its (gated) cell conductance, adjacent row nodes are joined
by one wire segment of resistance ``r_p``, and a final wire segment joins
the last node to the column output, which is held at virtual ground.
Rows whose input bit is 0 have their cell disconnected by the select
transistor; the wire segments remain.

Three solvers share this topology:

* :func:`solve_ideal` — no parasitics, plain dot product.
* :func:`solve_fast`  — sweep of series/parallel conductance reductions from
  the far row toward the output, vectorised across columns (and across a
  batch of input vectors). Exact for this ladder topology.
* :func:`solve_oracle` — direct linear-system solution of the nodal
  equations, used as the independent reference.

All solvers are pure functions; crossbar instances are immutable after
construction, so concurrent evaluation over inputs/columns/instances is
safe. Per-column accumulation order is fixed (row 0 upward), making results
bit-reproducible regardless of batching.

Currents are returned in uA.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack

from .errors import MappingError, PairingError, ValidationError
from .tech import TechnologyPreset

DEFAULT_T_READ = 10e-9  # effective read pulse length in s


@dataclass(frozen=True)
class CrossbarInstance:
    """A programmed crossbar: conductance matrix plus electrical parameters."""

    n_rows: int
    n_cols: int
    g_matrix: np.ndarray  # (n_rows, n_cols) in uS
    r_p: float  # per-segment wire resistance in ohm
    v_read: float  # read pulse amplitude in V
    t_read: float = DEFAULT_T_READ  # effective read pulse length in s
    tech: TechnologyPreset | None = field(default=None, compare=False)

    def __post_init__(self):
        g = np.asarray(self.g_matrix, dtype=np.float64)
        if g.shape != (self.n_rows, self.n_cols):
            raise ValidationError(
                f"g_matrix shape {g.shape} does not match ({self.n_rows}, {self.n_cols})"
            )
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValidationError("crossbar needs at least one row and one column")
        if np.any(g < 0):
            raise ValidationError("negative conductances are not physical")
        if self.r_p < 0:
            raise ValidationError("r_p must be >= 0")
        if self.v_read <= 0:
            raise ValidationError("v_read must be positive")
        g.flags.writeable = False
        object.__setattr__(self, "g_matrix", g)

    @property
    def mean_conductance_s(self) -> float:
        """Mean cell conductance over the whole array, in siemens."""
        return float(self.g_matrix.mean()) * 1e-6


def program_differential(
    weights: np.ndarray,
    tech: TechnologyPreset,
    r_p: float,
    v_read: float,
    t_read: float = DEFAULT_T_READ,
    n_rows: int | None = None,
    n_cols: int | None = None,
) -> CrossbarInstance:
    """Map a signed ternary weight matrix onto differential column pairs.

    Logical weight column ``k`` occupies physical columns ``(2k, 2k+1)`` as
    its (positive, negative) device pair: ``+1 -> (LRS, HRS)``,
    ``-1 -> (HRS, LRS)``, ``0 -> (HRS, HRS)``. Unused cells are left in HRS.

    ``n_rows``/``n_cols`` give the physical crossbar size; they default to a
    crossbar that exactly fits the weights.
    """
    w = np.asarray(weights)
    if w.ndim != 2:
        raise MappingError(f"weights must be a 2-D matrix, got ndim={w.ndim}")
    if not np.isin(w, (-1, 0, 1)).all():
        bad = np.unique(w[~np.isin(w, (-1, 0, 1))])
        raise ValidationError(f"weights must lie in {{-1, 0, 1}}, found {bad.tolist()}")
    rows_w, cols_w = w.shape
    n_rows = rows_w if n_rows is None else n_rows
    n_cols = 2 * cols_w if n_cols is None else n_cols
    if rows_w > n_rows:
        raise MappingError(f"row overflow: weight matrix has {rows_w} rows, crossbar {n_rows}")
    if 2 * cols_w > n_cols:
        raise MappingError(
            f"column overflow: {cols_w} weight columns need {2 * cols_w} physical columns, "
            f"crossbar has {n_cols}"
        )

    g = np.full((n_rows, n_cols), tech.g_hrs_us, dtype=np.float64)
    g[:rows_w, 0 : 2 * cols_w : 2] = np.where(w == 1, tech.g_lrs_us, tech.g_hrs_us)
    g[:rows_w, 1 : 2 * cols_w : 2] = np.where(w == -1, tech.g_lrs_us, tech.g_hrs_us)
    return CrossbarInstance(n_rows, n_cols, g, r_p, v_read, t_read, tech)


def _as_input_batch(xbar: CrossbarInstance, bits) -> tuple[np.ndarray, bool]:
    """Validate a {0,1} input vector or batch and return it as (B, n_rows) float."""
    x = np.asarray(bits)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    if x.shape[-1] != xbar.n_rows:
        raise ValidationError(
            f"input length {x.shape[-1]} does not match n_rows {xbar.n_rows}"
        )
    if not np.isin(x, (0, 1)).all():
        raise ValidationError("input vector entries must be exactly 0 or 1")
    return x.astype(np.float64), single


def solve_ideal(xbar: CrossbarInstance, bits) -> np.ndarray:
    """Output currents in uA without wire parasitics: I_j = v_read * sum of active g.

    Accepts a single {0,1} vector of length n_rows or a batch of shape
    (B, n_rows); returns shape (n_cols,) or (B, n_cols) accordingly.
    """
    x, single = _as_input_batch(xbar, bits)
    out = xbar.v_read * (x @ xbar.g_matrix)
    return out[0] if single else out


def solve_fast(xbar: CrossbarInstance, bits) -> np.ndarray:
    """Output currents in uA with wire parasitics, via ladder reduction.

    Starting from the far row, the accumulated column conductance is combined
    in parallel with each row's gated cell conductance and in series with one
    wire-segment conductance ``g_wire = 1e6 / r_p`` uS. All columns (and all
    batch entries) advance simultaneously; the result is independent of
    internal batching. ``r_p == 0`` is delegated to :func:`solve_ideal`.
    """
    if xbar.r_p == 0.0:
        return solve_ideal(xbar, bits)
    x, single = _as_input_batch(xbar, bits)
    g_wire = 1e6 / xbar.r_p
    g = xbar.g_matrix
    acc = np.zeros((x.shape[0], xbar.n_cols))
    for i in range(xbar.n_rows):
        tot = acc + g[i] * x[:, i : i + 1]
        acc = tot * g_wire / (tot + g_wire)
    out = acc * xbar.v_read
    return out[0] if single else out


def solve_oracle(xbar: CrossbarInstance, bits, method: str = "banded") -> np.ndarray:
    """Output currents in uA from the full nodal-analysis linear system.

    One unknown node voltage per row position per column; active cells tie
    their node to ``v_read`` through the cell conductance, adjacent nodes are
    joined by ``1/r_p`` and the output node is held at virtual ground. The
    per-column tridiagonal system is solved with LAPACK ``dgtsv``
    (``method="banded"``) or assembled densely and solved with
    ``numpy.linalg.solve`` (``method="dense"``, the slow test reference).

    Single input vectors only. ``r_p == 0`` delegates to :func:`solve_ideal`.
    """
    if method not in ("banded", "dense"):
        raise ValueError(f"unknown oracle method {method!r}")
    if xbar.r_p == 0.0:
        return solve_ideal(xbar, bits)
    x, single = _as_input_batch(xbar, bits)
    if not single:
        raise ValidationError("solve_oracle accepts a single input vector")
    n, m = xbar.n_rows, xbar.n_cols
    g_wire = 1e6 / xbar.r_p
    gated = xbar.g_matrix * x[0][:, None]  # (n, m)

    if not np.any(gated > 0):
        return np.zeros(m)

    # Diagonal: cell + one wire segment per incident link (far row has one).
    diag = gated + 2.0 * g_wire
    diag[0] -= g_wire
    rhs = gated * xbar.v_read

    if method == "dense":
        a = np.zeros((m, n, n))
        idx = np.arange(n)
        a[:, idx, idx] = diag.T
        if n > 1:
            a[:, idx[:-1], idx[:-1] + 1] = -g_wire
            a[:, idx[:-1] + 1, idx[:-1]] = -g_wire
        v = np.linalg.solve(a, rhs.T[..., None])[..., 0]  # (m, n)
        return g_wire * v[:, -1]

    out = np.empty(m)
    off = np.full(n - 1, -g_wire)
    for j in range(m):
        if n == 1:
            out[j] = g_wire * rhs[0, j] / diag[0, j]
            continue
        _, _, _, v, info = lapack.dgtsv(off, diag[:, j].copy(), off, rhs[:, j].copy())
        if info != 0:
            raise ValidationError(f"nodal system for column {j} is singular (info={info})")
        out[j] = g_wire * v[-1]
    return out


def differential_readout(currents: np.ndarray) -> np.ndarray:
    """Column-pair current differences: delta[k] = I[2k] - I[2k+1].

    Works on a single current vector or a batch (last axis = columns).
    """
    c = np.asarray(currents)
    if c.shape[-1] % 2 != 0:
        raise PairingError(f"differential readout needs an even column count, got {c.shape[-1]}")
    return c[..., 0::2] - c[..., 1::2]
