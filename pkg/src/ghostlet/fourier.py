"""Continuous Fourier transforms on grids, multipliers, and the weighted
Sobolev machinery.

Conventions (all transforms are weighted discrete sums with true phases, not
bare cyclic FFTs, so identities hold in the continuous normalization):

    m-dim forward   f̂(ξ) = ∫ f(x) e^{-i x·ξ} dx
    m-dim inverse   f(x) = (2π)^{-m} ∫ f̂(ξ) e^{+i x·ξ} dξ
    1-dim sharp     φ♯(ω) = ∫ φ(b) e^{-i b ω} db         (inverse: flat)
    Plancherel      ‖f̂‖² = (2π)^m ‖f‖²

The japanese bracket is ⟨y⟩ = (1 + |y|²)^{1/2}.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import (
    AccuracyError,
    DomainError,
    Grid,
    ParamDistribution,
    SampledFunction,
    SpectralFunction,
    _Field,
)


@dataclass(frozen=True)
class SobolevOrders:
    """(t, s) of the weighted space: σ(b) = ⟨b⟩^t φ(b) with φ of H-order s."""

    t: float
    s: float


def bracket(y: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + np.abs(np.asarray(y, dtype=float)) ** 2)


def _axis_transform(values: np.ndarray, axis: int, src: np.ndarray, w: np.ndarray,
                    dst: np.ndarray, sign: float) -> np.ndarray:
    kernel = np.exp(sign * 1j * np.outer(dst, src)) * w
    moved = np.moveaxis(values, axis, 0)
    out = np.tensordot(kernel, moved, axes=(1, 0))
    return np.moveaxis(out, 0, axis)


def _boundary_decay(values: np.ndarray) -> float:
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        return 0.0
    edge = 0.0
    for ax in range(values.ndim):
        sl = [slice(None)] * values.ndim
        for end in (0, -1):
            sl[ax] = end
            edge = max(edge, float(np.max(np.abs(values[tuple(sl)]))))
    return edge / peak


def fourier_forward(u: SampledFunction, output_grid: Grid) -> SpectralFunction:
    """m-dim continuous transform of a sampled function onto a frequency grid."""
    if output_grid.dim != u.grid.dim:
        raise DomainError("frequency grid dimension must match the input grid")
    vals = u.values
    for ax in range(u.grid.dim):
        vals = _axis_transform(vals, ax, u.grid.axis(ax), u.grid.axis_weights(ax),
                               output_grid.axis(ax), -1.0)
    out = SpectralFunction(output_grid, vals)
    out.meta["boundary_decay"] = _boundary_decay(u.values)
    return out


def fourier_inverse(u: SpectralFunction, output_grid: Grid) -> SampledFunction:
    if output_grid.dim != u.grid.dim:
        raise DomainError("output grid dimension must match the spectrum grid")
    vals = u.values
    for ax in range(u.grid.dim):
        vals = _axis_transform(vals, ax, u.grid.axis(ax), u.grid.axis_weights(ax),
                               output_grid.axis(ax), +1.0)
    vals = vals / (2.0 * np.pi) ** u.grid.dim
    out = SampledFunction(output_grid, vals)
    out.meta["boundary_decay"] = _boundary_decay(u.values)
    return out


def sharp(phi: SampledFunction, omega_grid: Grid) -> SpectralFunction:
    """1-D forward transform φ ↦ φ♯ for profiles on the b axis."""
    if phi.grid.dim != 1 or omega_grid.dim != 1:
        raise DomainError("sharp is the 1-D transform")
    return fourier_forward(phi, omega_grid)


def flat(phi_sharp: SpectralFunction, b_grid: Grid) -> SampledFunction:
    if phi_sharp.grid.dim != 1 or b_grid.dim != 1:
        raise DomainError("flat is the 1-D inverse transform")
    return fourier_inverse(phi_sharp, b_grid)


def fourier_at(u: SampledFunction, xi: np.ndarray) -> np.ndarray:
    """f̂ evaluated at arbitrary frequency points (1-D input only)."""
    if u.grid.dim != 1:
        raise DomainError("fourier_at supports 1-D inputs")
    x = u.grid.axis(0)
    w = u.grid.axis_weights(0)
    xi = np.asarray(xi, dtype=float)
    return np.exp(-1j * xi[..., None] * x) @ (w * u.values)


def partial_sharp_b(gamma: ParamDistribution, omega_grid: Grid) -> SpectralFunction:
    """1-D transform along the trailing b axis for each fixed a row:
    γ♯(a, ω) = ∫ γ(a, b) e^{-iωb} db."""
    if omega_grid.dim != 1:
        raise DomainError("omega_grid must be 1-D")
    vals = _axis_transform(gamma.values, gamma.grid.dim - 1, gamma.grid.axis(gamma.grid.dim - 1),
                           gamma.grid.axis_weights(gamma.grid.dim - 1), omega_grid.axis(0), -1.0)
    grid = Grid(gamma.grid.lower[:-1] + omega_grid.lower,
                gamma.grid.upper[:-1] + omega_grid.upper,
                gamma.grid.counts[:-1] + omega_grid.counts)
    out = SpectralFunction(grid, vals)
    out.meta["boundary_decay"] = _boundary_decay(gamma.values)
    return out


def partial_flat_b(gamma_sharp: SpectralFunction, b_grid: Grid) -> ParamDistribution:
    """Inverse of partial_sharp_b: back to (a, b) from (a, ω)."""
    if b_grid.dim != 1:
        raise DomainError("b_grid must be 1-D")
    dim = gamma_sharp.grid.dim
    vals = _axis_transform(gamma_sharp.values, dim - 1, gamma_sharp.grid.axis(dim - 1),
                           gamma_sharp.grid.axis_weights(dim - 1), b_grid.axis(0), +1.0)
    vals = vals / (2.0 * np.pi)
    grid = Grid(gamma_sharp.grid.lower[:-1] + b_grid.lower,
                gamma_sharp.grid.upper[:-1] + b_grid.upper,
                gamma_sharp.grid.counts[:-1] + b_grid.counts)
    return ParamDistribution(grid, vals)


def fractional_bracket(phi_sharp: SpectralFunction, order: float,
                       b_grid: Grid | None = None) -> SpectralFunction:
    """⟨∂_ω⟩^t as a Fourier multiplier: ⟨∂_ω⟩^t[φ♯] = (⟨·⟩^t φ)♯.

    Pipeline: inverse transform to the b domain, multiply by ⟨b⟩^t, forward
    transform back to the same ω grid. Inputs that do not decay at the ω
    boundary get an accuracy warning in the result metadata.
    """
    if phi_sharp.grid.dim != 1:
        raise DomainError("fractional_bracket acts on 1-D spectra")
    grid = phi_sharp.grid
    if b_grid is None:
        half = max(abs(grid.lower[0]), abs(grid.upper[0]))
        b_grid = Grid.line(-half, half, grid.counts[0])
    phi = flat(phi_sharp, b_grid)
    weighted = SampledFunction(b_grid, phi.values * bracket(b_grid.axis(0)) ** order)
    out = sharp(weighted, grid)
    decay = _boundary_decay(phi_sharp.values)
    out.meta["input_boundary_decay"] = decay
    if decay > 1e-6:
        out.meta["accuracy_warning"] = (
            f"spectrum boundary decay {decay:.2e} above 1e-6; bracket pipeline may alias"
        )
    return out


def bracket_self_adjoint_defect(phi_sharp: SpectralFunction, psi_sharp: SpectralFunction,
                                order: float) -> float:
    """|∫ φ♯ conj(⟨∂⟩^t ψ♯) − ∫ ⟨∂⟩^t φ♯ conj(ψ♯)| (should vanish)."""
    from .grids import l2_inner

    lhs = l2_inner(phi_sharp, fractional_bracket(psi_sharp, order))
    rhs = l2_inner(fractional_bracket(phi_sharp, order), psi_sharp)
    return abs(lhs - rhs)


# A boundary/peak ratio this large means σ(b)/⟨b⟩^t does not decay, i.e. the
# declared t is too small for σ to sit in the weighted space (ReLU needs
# t > 3/2; t = 2 decays like 1/b and passes, t = 1 tends to a constant).
_WH_DECAY_LIMIT = 0.25


def wh_norm(sigma, orders: SobolevOrders, b_grid: Grid | None = None,
            omega_grid: Grid | None = None) -> float:
    """Weighted Sobolev norm ‖σ‖ = ( ∫ |φ♯(ω)|² ⟨ω⟩^{2s} dω / 2π )^{1/2}
    with φ := σ/⟨·⟩^t sampled on the b grid."""
    from .profiles import DEFAULT_B_GRID, DEFAULT_OMEGA_GRID, Profile1D

    if b_grid is None:
        b_grid = DEFAULT_B_GRID
    if omega_grid is None:
        omega_grid = DEFAULT_OMEGA_GRID
    if isinstance(sigma, Profile1D):
        if sigma.real_eval is None:
            sigma_vals = flat(SpectralFunction(omega_grid, sigma.spectral_values(omega_grid)),
                              b_grid).values
        else:
            sigma_vals = sigma.real_values(b_grid)
        name = sigma.name
    else:
        sigma_vals = np.asarray(sigma(b_grid.axis(0)), dtype=complex)
        name = getattr(sigma, "__name__", "sigma")
    b = b_grid.axis(0)
    phi = sigma_vals / bracket(b) ** orders.t
    peak = float(np.max(np.abs(phi)))
    if peak > 0.0:
        edge = max(abs(phi[0]), abs(phi[-1])) / peak
        if edge > _WH_DECAY_LIMIT:
            raise DomainError(
                f"{name}/⟨b⟩^{orders.t} does not decay (boundary/peak = {edge:.3f}); "
                f"t is too small for this profile to lie in the weighted space"
            )
    phi_sharp = sharp(SampledFunction(b_grid, phi), omega_grid)
    omega = omega_grid.axis(0)
    w = omega_grid.axis_weights(0)
    val = np.sum(np.abs(phi_sharp.values) ** 2 * bracket(omega) ** (2 * orders.s) * w)
    return float(np.sqrt(val / (2.0 * np.pi)))
