"""The integral representation S, the ridgelet transform R, their
Fourier-slice fast paths, and the adjoint machinery.

    S[γ](x)    = ∫ γ(a,b) σ(a·x − b) da db
    R[f;ρ](a,b) = ∫ f(x) conj(ρ(a·x − b)) dx

Disentangled spectral forms (the fast paths):

    R[f;ρ]♯(a,ω) = f̂(ωa) · conj(ρ♯(ω))
    Ŝ[γ](ξ)      = (2π)^{m−1} ∫ γ♯(ξ/ω, ω) σ♯(ω) |ω|^{−m} dω

Both paths agree on shared grids; the direct path honors the configured
quadrature, the spectral path interpolates the sheared spectrum (cubic,
zero outside the box).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .fourier import (
    SobolevOrders,
    bracket,
    fourier_at,
    fourier_forward,
    fourier_inverse,
    fractional_bracket,
    partial_flat_b,
    partial_sharp_b,
    wh_norm,
)
from .grids import (
    DomainError,
    Grid,
    MONTE_CARLO,
    ParamDistribution,
    QuadratureScheme,
    SampledFunction,
    SpectralFunction,
    UnsupportedProfileError,
    interpolate,
    l2_inner,
    l2_norm,
    uniform_points,
    weighted_omega_norm,
)
from .profiles import DEFAULT_OMEGA_GRID, Profile1D, pairing

PLAIN_L2 = "plain_l2"
WEIGHTED_SOBOLEV = "weighted_sobolev"


@dataclass(frozen=True)
class AdjointMode:
    kind: str = PLAIN_L2
    orders: SobolevOrders | None = None

    def __post_init__(self):
        if self.kind not in (PLAIN_L2, WEIGHTED_SOBOLEV):
            raise DomainError(f"unknown adjoint mode {self.kind!r}")
        if self.kind == WEIGHTED_SOBOLEV and self.orders is None:
            raise DomainError("WeightedSobolev mode requires Sobolev orders")

    @staticmethod
    def plain() -> "AdjointMode":
        return AdjointMode(PLAIN_L2)

    @staticmethod
    def weighted(orders: SobolevOrders) -> "AdjointMode":
        return AdjointMode(WEIGHTED_SOBOLEV, orders)


@dataclass(frozen=True)
class NetworkOperator:
    """S with a fixed activation, parameter grid, input grid, and quadrature.

    When `normalize` is requested at construction the activation is rescaled
    so its weighted norm is 1 (this is what makes P = S*∘S a projection in
    plain-L² mode); the original scale is kept for reporting.
    """

    sigma: Profile1D
    param_grid: Grid
    input_grid: Grid
    scheme: QuadratureScheme = QuadratureScheme()
    norm_constant: float | None = None
    original_scale: float = 1.0
    omega_grid: Grid = DEFAULT_OMEGA_GRID

    def __post_init__(self):
        if self.param_grid.dim != self.input_grid.dim + 1:
            raise DomainError("parameter grid dim must be input grid dim + 1")

    @property
    def m(self) -> int:
        return self.input_grid.dim

    @property
    def is_normalized(self) -> bool:
        return self.norm_constant is not None and abs(self.norm_constant - 1.0) < 1e-6


def make_operator(sigma: Profile1D, param_grid: Grid, input_grid: Grid,
                  scheme: QuadratureScheme = QuadratureScheme(),
                  normalize: bool = True,
                  omega_grid: Grid | None = None) -> NetworkOperator:
    """Build a NetworkOperator, normalizing σ in the weighted norm when it is
    finite there (tanh and ReLU are not; they keep norm_constant = None)."""
    omega_grid = omega_grid or DEFAULT_OMEGA_GRID
    m = input_grid.dim
    norm = None
    if sigma.spectral_eval is not None:
        try:
            spec = sigma.spectral_values(omega_grid)
            raw = weighted_omega_norm(spec, m, omega_grid)
            # Divergent norms grow without bound under grid refinement; the
            # |ω|^{-m} mass near the origin is the telltale.
            omega = omega_grid.axis(0)
            near = np.abs(omega) < 0.25
            w = omega_grid.axis_weights(0)
            near_mass = np.sum((np.abs(spec) ** 2 * np.abs(omega) ** (-m) * w)[near])
            if np.isfinite(raw) and raw > 0 and near_mass < 0.5 * raw ** 2:
                norm = raw
        except Exception:
            norm = None
    if normalize and norm is not None:
        sigma = sigma.scaled(1.0 / norm, name=f"{sigma.name}~unit")
        return NetworkOperator(sigma, param_grid, input_grid, scheme,
                               norm_constant=1.0, original_scale=norm,
                               omega_grid=omega_grid)
    return NetworkOperator(sigma, param_grid, input_grid, scheme,
                           norm_constant=norm, original_scale=1.0,
                           omega_grid=omega_grid)


_CHUNK = 1 << 22  # kernel-evaluation entries per chunk, keeps peak memory ~128 MB


def _neuron_sum(points_a: np.ndarray, points_b: np.ndarray, coeff: np.ndarray,
                x_nodes: np.ndarray, profile_eval, conjugate: bool) -> np.ndarray:
    """Σ_k coeff_k · σ(a_k·x − b_k) evaluated for every x node (chunked)."""
    n_out = x_nodes.shape[0]
    out = np.zeros(n_out, dtype=complex)
    rows = max(1, _CHUNK // max(points_a.shape[0], 1))
    for start in range(0, n_out, rows):
        xs = x_nodes[start:start + rows]
        arg = points_a @ xs.T - points_b[:, None]
        vals = np.asarray(profile_eval(arg))
        if conjugate:
            vals = np.conj(vals)
        out[start:start + rows] = coeff @ vals
    return out


def forward_s(op: NetworkOperator, gamma: ParamDistribution) -> SampledFunction:
    """Direct-quadrature S[γ] on the operator's input grid (linear in γ)."""
    if gamma.grid != op.param_grid:
        raise DomainError("γ lives on a different grid than the operator")
    if op.sigma.real_eval is None:
        raise UnsupportedProfileError(
            f"activation {op.sigma.name!r} has no real-domain evaluator")
    x_nodes = op.input_grid.points()
    if op.scheme.kind == MONTE_CARLO:
        pts = uniform_points(op.param_grid, op.scheme.sample_count, op.scheme.seed)
        gvals = interpolate(gamma, pts)
        coeff = gvals * (op.param_grid.volume / op.scheme.sample_count)
        pa, pb = pts[:, :-1], pts[:, -1]
    else:
        pts = op.param_grid.points()
        coeff = (gamma.values * op.param_grid.weights()).ravel()
        pa, pb = pts[:, :-1], pts[:, -1]
    vals = _neuron_sum(pa, pb, coeff, x_nodes, op.sigma.real_eval, conjugate=False)
    return SampledFunction(op.input_grid, vals.reshape(op.input_grid.counts))


def ridgelet(f: SampledFunction, rho: Profile1D, param_grid: Grid,
             scheme: QuadratureScheme = QuadratureScheme()) -> ParamDistribution:
    """Direct-quadrature R[f;ρ] on the parameter grid (linear in f,
    conjugate-linear in ρ)."""
    if rho.real_eval is None:
        raise UnsupportedProfileError(f"ridgelet profile {rho.name!r} has no real evaluator")
    if param_grid.dim != f.grid.dim + 1:
        raise DomainError("parameter grid dim must be f's dim + 1")
    pts = param_grid.points()
    pa, pb = pts[:, :-1], pts[:, -1]
    if scheme.kind == MONTE_CARLO:
        x_nodes = uniform_points(f.grid, scheme.sample_count, scheme.seed)
        fvals = interpolate(f, x_nodes)
        coeff = fvals * (f.grid.volume / scheme.sample_count)
    else:
        x_nodes = f.grid.points()
        coeff = (f.values * f.grid.weights()).ravel()
    # Same kernel sum with roles swapped: output over (a,b), reduction over x.
    out = np.zeros(pts.shape[0], dtype=complex)
    rows = max(1, _CHUNK // max(x_nodes.shape[0], 1))
    for start in range(0, pts.shape[0], rows):
        arg = pa[start:start + rows] @ x_nodes.T - pb[start:start + rows, None]
        out[start:start + rows] = np.conj(np.asarray(rho.real_eval(arg))) @ coeff
    return ParamDistribution(param_grid, out.reshape(param_grid.counts))


def _fhat_evaluator(f: SampledFunction):
    """Return a callable ξ ↦ f̂(ξ): a cubic spline of f̂ on a dense grid out
    to the input grid's Nyquist frequency, zero beyond (band-limited use)."""
    from scipy.interpolate import CubicSpline

    x_extent = max(abs(v) for v in f.grid.lower + f.grid.upper)
    if f.grid.dim == 1:
        half = min(np.pi / f.grid.spacing[0], 64.0)
        n = int(np.ceil(2 * half * x_extent / 0.4)) + 1
        xi_grid = Grid.line(-half, half, min(n, 16001))
        fhat = fourier_forward(f, xi_grid)
        spline = CubicSpline(xi_grid.axis(0), fhat.values)

        def evaluator(xi):
            xi = np.asarray(xi, dtype=float)
            out = np.asarray(spline(np.clip(xi, -half, half)), dtype=complex)
            return np.where(np.abs(xi) > half, 0.0, out)

        return evaluator
    half = tuple(min(np.pi / d, 24.0) for d in f.grid.spacing)
    xi_grid = Grid.symmetric(half, [min(int(2 * h * x_extent / 0.4) | 1, 513) for h in half])
    fhat = fourier_forward(f, xi_grid)
    return lambda xi: interpolate(fhat, xi)


def ridgelet_fourier(f: SampledFunction, rho: Profile1D, param_grid: Grid,
                     omega_grid: Grid | None = None) -> ParamDistribution:
    """Fourier-slice path: build R♯(a,ω) = f̂(ωa)·conj(ρ♯(ω)) on the (a,ω)
    grid, then inverse-transform the ω axis to b."""
    if rho.spectral_eval is None:
        raise UnsupportedProfileError(f"profile {rho.name!r} has no spectral evaluator")
    if param_grid.dim != f.grid.dim + 1:
        raise DomainError("parameter grid dim must be f's dim + 1")
    omega_grid = omega_grid or _default_op_omega_grid(param_grid)
    omega = omega_grid.axis(0)
    rho_sharp = rho.spectral_values(omega_grid)
    fhat = _fhat_evaluator(f)
    m = f.grid.dim
    a_axes = [param_grid.axis(k) for k in range(m)]
    a_mesh = np.meshgrid(*a_axes, indexing="ij")
    a_pts = np.stack([g.ravel() for g in a_mesh], axis=-1)          # (Na, m)
    sheared = a_pts[:, None, :] * omega[None, :, None]               # (Na, Nω, m)
    fhat_vals = fhat(sheared.reshape(-1, m) if m > 1 else sheared.reshape(-1))
    spec_vals = fhat_vals.reshape(len(a_pts), len(omega)) * np.conj(rho_sharp)[None, :]
    spec_grid = Grid(param_grid.lower[:-1] + omega_grid.lower,
                     param_grid.upper[:-1] + omega_grid.upper,
                     param_grid.counts[:-1] + omega_grid.counts)
    spec = SpectralFunction(spec_grid, spec_vals.reshape(spec_grid.counts))
    b_grid = Grid.line(param_grid.lower[-1], param_grid.upper[-1], param_grid.counts[-1])
    return partial_flat_b(spec, b_grid)


def _default_op_omega_grid(param_grid: Grid) -> Grid:
    """ω grid conjugate to the b axis: fine enough to resolve phases e^{iωb}
    across the whole b box, wide enough for the stock profile spectra, and
    capped below the b grid's Nyquist frequency (beyond it the b-trapezoid
    aliases low-ω content into the band)."""
    b_half = max(abs(param_grid.lower[-1]), abs(param_grid.upper[-1]))
    b_spacing = param_grid.spacing[-1]
    half = min(8.0, 0.9 * np.pi / b_spacing)
    n = int(np.ceil(2 * half * max(b_half, 8.0) * 1.25 / np.pi))
    n += n % 2  # even count straddles ω = 0
    return Grid.line(-half, half, n)


def forward_s_fourier(op: NetworkOperator, gamma: ParamDistribution,
                      output_grid: Grid | None = None) -> SpectralFunction:
    """Fourier-slice path for S: Ŝ[γ](ξ) = (2π)^{m−1} ∫ γ♯(ξ/ω,ω) σ♯(ω)
    |ω|^{−m} dω, with γ♯ sheared by separable cubic interpolation (zero
    outside the grid; the |ω|→0 rows self-truncate)."""
    from scipy.interpolate import CubicSpline

    if op.sigma.spectral_eval is None:
        raise UnsupportedProfileError(f"{op.sigma.name!r} has no spectral evaluator")
    if gamma.grid != op.param_grid:
        raise DomainError("γ lives on a different grid than the operator")
    m = op.m
    omega_grid = _default_op_omega_grid(op.param_grid)
    omega = omega_grid.axis(0)
    w_omega = omega_grid.axis_weights(0)
    gam_sharp = partial_sharp_b(gamma, omega_grid)
    sig = op.sigma.spectral_values(omega_grid)
    if output_grid is None:
        output_grid = _default_xi_grid(op.input_grid)
    if m == 1:
        a_nodes = op.param_grid.axis(0)
        xi = output_grid.axis(0)
        acc = np.zeros(len(xi), dtype=complex)
        lo, hi = a_nodes[0], a_nodes[-1]
        weight = sig * np.abs(omega) ** (-m) * w_omega
        for i, om in enumerate(omega):
            spline = CubicSpline(a_nodes, gam_sharp.values[:, i])
            pos = xi / om
            inside = (pos >= lo) & (pos <= hi)
            if not np.any(inside):
                continue
            row = np.zeros(len(xi), dtype=complex)
            row[inside] = spline(pos[inside])
            acc += row * weight[i]
        vals = (2.0 * np.pi) ** (m - 1) * acc
        out = SpectralFunction(output_grid, vals)
    else:
        xi_pts = output_grid.points()
        acc = np.zeros(xi_pts.shape[0], dtype=complex)
        weight = sig * np.abs(omega) ** (-m) * w_omega
        a_grid_axes = [op.param_grid.axis(k) for k in range(m)]
        for i, om in enumerate(omega):
            slab = SpectralFunction(Grid(op.param_grid.lower[:-1], op.param_grid.upper[:-1],
                                         op.param_grid.counts[:-1]),
                                    np.ascontiguousarray(gam_sharp.values[..., i]))
            acc += interpolate(slab, xi_pts / om) * weight[i]
        vals = (2.0 * np.pi) ** (m - 1) * acc.reshape(output_grid.counts)
        out = SpectralFunction(output_grid, vals)
    out.meta["boundary_decay"] = gam_sharp.meta.get("boundary_decay", 0.0)
    return out


def _default_xi_grid(input_grid: Grid) -> Grid:
    half = []
    counts = []
    for k in range(input_grid.dim):
        h = 2.0 + np.pi / input_grid.spacing[k] / 4.0
        h = min(max(h, 10.0), 16.0)
        n = int(np.ceil(2 * h * max(abs(input_grid.lower[k]), abs(input_grid.upper[k])) * 1.25 / np.pi))
        n += n % 2
        half.append(h)
        counts.append(n)
    return Grid.symmetric(half, counts)


def forward_s_via_fourier(op: NetworkOperator, gamma: ParamDistribution) -> SampledFunction:
    """Convenience: slice-path S[γ] brought back to the input grid."""
    spec = forward_s_fourier(op, gamma)
    return fourier_inverse(spec, op.input_grid)


def reconstruct(op: NetworkOperator, f: SampledFunction, rho: Profile1D,
                use_fourier: bool = False):
    """S[R[f;ρ]] together with the computed pairing ⟨⟨σ,ρ⟩⟩.

    With an admissible ρ normalized to unit pairing the output approximates f;
    with a non-admissible ρ it degenerates toward zero.
    """
    pair = pairing(op.sigma, rho, op.m, op.omega_grid)
    if use_fourier:
        gam = ridgelet_fourier(f, rho, op.param_grid)
        out = forward_s_via_fourier(op, gam)
    else:
        gam = ridgelet(f, rho, op.param_grid, op.scheme)
        out = forward_s(op, gam)
    return out, pair


def build_sigma_star(sigma: Profile1D, orders: SobolevOrders, m: int,
                     omega_grid: Grid | None = None) -> Profile1D:
    """σ*♯(ω) = (2π)^{m−1} |ω|^m ⟨∂_ω⟩^{−t} ⟨ω⟩^{2s} ⟨∂_ω⟩^{−t} σ♯(ω).

    The bracket pipeline runs through the real domain, so σ♯ must decay at
    the ω boundary.
    """
    from .fourier import _boundary_decay
    from .profiles import _interp_profile

    omega_grid = omega_grid or DEFAULT_OMEGA_GRID
    spec = SpectralFunction(omega_grid, sigma.spectral_values(omega_grid))
    if _boundary_decay(spec.values) > 1e-6:
        raise DomainError(
            f"{sigma.name!r} spectrum does not decay at the ω boundary; "
            "the fractional bracket pipeline would alias")
    omega_axis = omega_grid.axis(0)
    inner = np.max(np.abs(spec.values[np.abs(omega_axis) <= 1.5 * omega_grid.spacing[0]]))
    unit_band = np.max(np.abs(spec.values[(np.abs(omega_axis) > 0.9)
                                          & (np.abs(omega_axis) < 1.1)]))
    if inner > 100.0 * max(unit_band, 1e-300):
        raise DomainError(
            f"{sigma.name!r} spectrum blows up at ω = 0 (principal-value type); "
            "the bracket pipeline cannot represent it on a truncated grid")
    stage = fractional_bracket(spec, -orders.t)
    stage = SpectralFunction(omega_grid,
                             stage.values * bracket(omega_grid.axis(0)) ** (2 * orders.s))
    stage = fractional_bracket(stage, -orders.t)
    omega = omega_grid.axis(0)
    vals = (2.0 * np.pi) ** (m - 1) * np.abs(omega) ** m * stage.values
    return _interp_profile(f"{sigma.name}*", omega_grid, vals,
                           notes=f"adjoint profile at orders (t={orders.t:g}, s={orders.s:g})")


def adjoint(op: NetworkOperator, f: SampledFunction, mode: AdjointMode) -> ParamDistribution:
    """S*[f].

    Plain-L² mode (σ in the weighted space, normalized): S* = R[·;σ].
    Weighted-Sobolev mode: S* = R[·;σ*] with σ* from build_sigma_star; the
    duality then holds against the sheared-bracket inner product (hd_inner).
    """
    if mode.kind == PLAIN_L2:
        if op.norm_constant is None:
            raise DomainError("plain-L² adjoint needs σ with a finite weighted norm")
        return ridgelet(f, op.sigma, op.param_grid, op.scheme)
    star = build_sigma_star(op.sigma, mode.orders, op.m, op.omega_grid)
    return ridgelet_fourier(f, star, op.param_grid)


def hd_inner(phi: ParamDistribution, gamma: ParamDistribution, orders: SobolevOrders,
             input_grid: Grid, omega_grid: Grid | None = None) -> complex:
    """Inner product of the sheared-bracket weighted space (m = 1):

        ⟨φ, γ⟩ = ∫ ⟨∂_ω⟩^t[φ̌♯(ωx,ω)] conj(⟨∂_ω⟩^t[γ̌♯(ωx,ω)]) ⟨ω⟩^{−2s} dx dω

    γ̌♯ is the inverse transform along a composed with the forward transform
    along b, evaluated on the native (y, ω) grid (y reuses the a axis) and
    sheared to (ωx, ω) by per-row cubic interpolation.
    """
    from scipy.interpolate import CubicSpline

    from .fourier import _axis_transform

    if phi.grid != gamma.grid:
        raise DomainError("fields live on different grids")
    m = phi.grid.dim - 1
    if m != 1:
        raise DomainError("hd_inner implemented for m = 1")
    omega_grid = omega_grid or _default_op_omega_grid(phi.grid)
    omega = omega_grid.axis(0)
    x = input_grid.axis(0)
    y_nodes = phi.grid.axis(0)

    def sheared(field: ParamDistribution) -> np.ndarray:
        vals = _axis_transform(field.values, 0, field.grid.axis(0),
                               field.grid.axis_weights(0), y_nodes, +1.0) / (2.0 * np.pi)
        vals = _axis_transform(vals, 1, field.grid.axis(1),
                               field.grid.axis_weights(1), omega, -1.0)
        out = np.zeros((len(x), len(omega)), dtype=complex)
        for i, om in enumerate(omega):
            spline_r = CubicSpline(y_nodes, vals[:, i].real)
            spline_i = CubicSpline(y_nodes, vals[:, i].imag)
            pos = om * x
            inside = (pos >= y_nodes[0]) & (pos <= y_nodes[-1])
            row = np.zeros(len(x), dtype=complex)
            row[inside] = spline_r(pos[inside]) + 1j * spline_i(pos[inside])
            out[:, i] = row
        if orders.t != 0.0:
            for j in range(len(x)):
                out[j, :] = fractional_bracket(SpectralFunction(omega_grid, out[j, :]),
                                               orders.t).values
        return out

    pv = sheared(phi)
    gv = sheared(gamma)
    wx = input_grid.axis_weights(0)
    ww = omega_grid.axis_weights(0)
    weight = np.outer(wx, ww) * bracket(omega)[None, :] ** (-2 * orders.s)
    return complex(np.sum(pv * np.conj(gv) * weight))


def operator_norm_constant(op: NetworkOperator, samples) -> float:
    """Empirical grid constant C with ‖S[γ]‖ ≤ (2π)^{m−1}·‖σ‖_wH·C·‖γ‖."""
    wh = wh_norm(op.sigma, SobolevOrders(0.0, 0.0))
    worst = 0.0
    for gamma in samples:
        num = l2_norm(forward_s(op, gamma))
        den = (2.0 * np.pi) ** (op.m - 1) * wh * l2_norm(gamma)
        if den > 0:
            worst = max(worst, num / den)
    return worst
