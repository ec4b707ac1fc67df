"""Uniform closed-box grids, sampled fields, quadrature, and inner products.

Everything downstream integrates over truncated boxes with the trapezoid rule
(deterministic) or seeded Monte Carlo. Grids store both endpoints; symmetric
frequency grids meant to straddle ω = 0 must use an even point count so no
node lands on the origin (the |ω|^{-m} weight is then finite at every node
and odd integrands cancel exactly in the symmetric sum).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np


class DomainError(ValueError):
    """Contract violation: mismatched grids, invalid parameters, empty input."""


class DataError(ValueError):
    """Non-finite values where finite data is required."""


class UnsupportedProfileError(DomainError):
    """A profile lacks the evaluator (real or spectral) an operation needs."""


class AccuracyError(RuntimeError):
    """Requested computation cannot meet its accuracy contract on this grid."""


@dataclass(frozen=True)
class Grid:
    """Uniform grid over a closed box, one entry per axis.

    spacing[k] = (upper[k] - lower[k]) / (counts[k] - 1) > 0.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in np.atleast_1d(self.lower))
        upper = tuple(float(v) for v in np.atleast_1d(self.upper))
        counts = tuple(int(v) for v in np.atleast_1d(self.counts))
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "counts", counts)
        if not (len(lower) == len(upper) == len(counts)) or len(lower) == 0:
            raise DomainError("grid axes must agree and be nonempty")
        for lo, hi, n in zip(lower, upper, counts):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise DomainError(f"invalid axis bounds [{lo}, {hi}]")
            if n < 2:
                raise DomainError("each axis needs at least 2 points")

    @property
    def dim(self) -> int:
        return len(self.counts)

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple((hi - lo) / (n - 1) for lo, hi, n in zip(self.lower, self.upper, self.counts))

    @property
    def total_points(self) -> int:
        return int(np.prod(self.counts))

    @property
    def volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in zip(self.lower, self.upper)]))

    def axis(self, k: int = 0) -> np.ndarray:
        return np.linspace(self.lower[k], self.upper[k], self.counts[k])

    def axes(self) -> list[np.ndarray]:
        return [self.axis(k) for k in range(self.dim)]

    def mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*self.axes(), indexing="ij", sparse=True)

    def points(self) -> np.ndarray:
        """All nodes as a (total_points, dim) array, C order."""
        dense = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([d.ravel() for d in dense], axis=-1)

    def axis_weights(self, k: int) -> np.ndarray:
        w = np.full(self.counts[k], self.spacing[k])
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    def weights(self) -> np.ndarray:
        """Trapezoid weights on the full grid (outer product over axes)."""
        w = self.axis_weights(0)
        for k in range(1, self.dim):
            w = np.multiply.outer(w, self.axis_weights(k))
        return w

    def straddles_zero(self, k: int = 0) -> bool:
        return not np.any(np.isclose(self.axis(k), 0.0, atol=1e-15 * max(1.0, abs(self.upper[k]))))

    @staticmethod
    def line(lo: float, hi: float, n: int) -> "Grid":
        return Grid((lo,), (hi,), (n,))

    @staticmethod
    def symmetric(half_width: float | Sequence[float], counts: int | Sequence[int]) -> "Grid":
        hw = np.atleast_1d(half_width).astype(float)
        ns = np.broadcast_to(np.atleast_1d(counts), hw.shape)
        return Grid(tuple(-hw), tuple(hw), tuple(int(n) for n in ns))


def _as_field_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    vals = np.asarray(values, dtype=complex)
    if vals.size != grid.total_points:
        raise DomainError(f"value count {vals.size} != grid point count {grid.total_points}")
    vals = vals.reshape(grid.counts)
    if not np.all(np.isfinite(vals)):
        raise DataError("field contains NaN/Inf values")
    vals = vals.copy()
    vals.flags.writeable = False
    return vals


@dataclass(frozen=True)
class _Field:
    """Complex values on a grid. Immutable; arithmetic returns new fields."""

    grid: Grid
    values: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _as_field_values(self.grid, self.values))

    def _wrap(self, values: np.ndarray) -> "_Field":
        return type(self)(self.grid, values)

    def __add__(self, other):
        self._require_same_grid(other)
        return self._wrap(self.values + other.values)

    def __sub__(self, other):
        self._require_same_grid(other)
        return self._wrap(self.values - other.values)

    def __mul__(self, scalar):
        return self._wrap(self.values * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.values)

    def _require_same_grid(self, other):
        if not isinstance(other, _Field) or other.grid != self.grid:
            raise DomainError("fields live on different grids")


class SampledFunction(_Field):
    """f sampled on an input-space grid (dim m)."""


class ParamDistribution(_Field):
    """γ sampled on a parameter grid over (a₁..a_m, b); dim = m + 1."""

    def __post_init__(self):
        super().__post_init__()
        if self.grid.dim < 2:
            raise DomainError("parameter grids need dim >= 2 (a-axes plus b)")

    @property
    def m(self) -> int:
        return self.grid.dim - 1


class SpectralFunction(_Field):
    """Values on a frequency grid (ξ axes, ω axis, or (a, ω))."""


def sample(grid: Grid, fn: Callable, cls=SampledFunction):
    """Sample a callable of the grid coordinates onto the grid."""
    mesh = grid.mesh()
    vals = np.broadcast_to(np.asarray(fn(*mesh), dtype=complex), grid.counts)
    return cls(grid, vals)


TRAPEZOID = "trapezoid"
MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class QuadratureScheme:
    """Trapezoid uses every grid node with end-weights; Monte Carlo draws
    uniform points in the grid box from an explicit seed."""

    kind: str = TRAPEZOID
    sample_count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (TRAPEZOID, MONTE_CARLO):
            raise DomainError(f"unknown quadrature kind {self.kind!r}")
        if self.kind == MONTE_CARLO and self.sample_count <= 0:
            raise DomainError("MonteCarlo requires positive sample_count")

    @staticmethod
    def trapezoid() -> "QuadratureScheme":
        return QuadratureScheme(TRAPEZOID)

    @staticmethod
    def monte_carlo(sample_count: int, seed: int) -> "QuadratureScheme":
        return QuadratureScheme(MONTE_CARLO, sample_count, seed)


def uniform_points(grid: Grid, n: int, seed: int) -> np.ndarray:
    """n uniform points in the grid box, (n, dim), reproducible per seed."""
    rng = np.random.default_rng(seed)
    lo = np.asarray(grid.lower)
    hi = np.asarray(grid.upper)
    return lo + rng.random((n, grid.dim)) * (hi - lo)


def interpolate(fld: _Field, points: np.ndarray, method: str = "cubic") -> np.ndarray:
    """Evaluate a field at off-grid points (separable spline, 0 outside box)."""
    from scipy.interpolate import RegularGridInterpolator

    pts = np.atleast_2d(np.asarray(points, dtype=float))
    interp_re = RegularGridInterpolator(
        fld.grid.axes(), fld.values.real, method=method, bounds_error=False, fill_value=0.0
    )
    interp_im = RegularGridInterpolator(
        fld.grid.axes(), fld.values.imag, method=method, bounds_error=False, fill_value=0.0
    )
    return interp_re(pts) + 1j * interp_im(pts)


def integrate(fld: _Field, scheme: QuadratureScheme = QuadratureScheme()) -> complex:
    """∫ field over its grid box.

    Trapezoid is deterministic and exact for constants; Monte Carlo draws
    uniform points in the box, evaluates the field by interpolation, and
    returns volume · mean (reproducible under a fixed seed).
    """
    if scheme.kind == TRAPEZOID:
        return complex(np.sum(fld.grid.weights() * fld.values))
    pts = uniform_points(fld.grid, scheme.sample_count, scheme.seed)
    vals = interpolate(fld, pts, method="linear")
    return complex(fld.grid.volume * np.mean(vals))


def l2_inner(u: _Field, v: _Field) -> complex:
    """⟨u, v⟩ = ∫ u · conj(v) over the shared grid (trapezoid)."""
    u._require_same_grid(v)
    return complex(np.sum(u.grid.weights() * u.values * np.conj(v.values)))


def l2_norm(u: _Field) -> float:
    return float(np.sqrt(max(l2_inner(u, u).real, 0.0)))


def weighted_omega_inner(u, v, m: int, omega_grid: Grid | None = None) -> complex:
    """(2π)^{m-1} ∫ u(ω) conj(v(ω)) |ω|^{-m} dω on a shared 1-D ω grid.

    Accepts SpectralFunction fields (shared grid required) or plain value
    arrays together with an explicit ω grid. The grid must straddle ω = 0.
    """
    if isinstance(u, _Field):
        u._require_same_grid(v)
        grid, uv, vv = u.grid, u.values, v.values
    else:
        if omega_grid is None:
            raise DomainError("array inputs require an explicit omega_grid")
        grid = omega_grid
        uv = np.asarray(u, dtype=complex)
        vv = np.asarray(v, dtype=complex)
        if uv.shape != vv.shape or uv.size != grid.total_points:
            raise DomainError("value arrays must match each other and the grid")
    if grid.dim != 1:
        raise DomainError("weighted ω inner product needs a 1-D grid")
    if not grid.straddles_zero():
        raise DomainError("ω grid has a node at 0; use an even point count straddling grid")
    omega = grid.axis(0)
    w = grid.axis_weights(0)
    return complex((2.0 * np.pi) ** (m - 1) * np.sum(uv * np.conj(vv) * np.abs(omega) ** (-m) * w))


def weighted_omega_norm(u, m: int, omega_grid: Grid | None = None) -> float:
    return float(np.sqrt(max(weighted_omega_inner(u, u, m, omega_grid).real, 0.0)))
