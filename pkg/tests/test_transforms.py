import numpy as np
import pytest
from numpy.testing import assert_allclose

from ghostlet import (
    AdjointMode,
    DomainError,
    Grid,
    ParamDistribution,
    SampledFunction,
    SobolevOrders,
    adjoint,
    build_sigma_star,
    forward_s,
    forward_s_fourier,
    forward_s_via_fourier,
    fourier_forward,
    gaussian_derivative_profile,
    gaussian_profile,
    l2_inner,
    l2_norm,
    make_operator,
    make_rho_family,
    pairing,
    reconstruct,
    relu_profile,
    ridgelet,
    ridgelet_fourier,
    sample,
    tanh_profile,
    wh_norm,
)
from ghostlet.grids import UnsupportedProfileError, weighted_omega_norm
from ghostlet.profiles import DEFAULT_OMEGA_GRID
from ghostlet.transforms import hd_inner

from conftest import bump_mix, rel_l2


def test_operator_normalization(op3):
    assert op3.is_normalized
    assert op3.original_scale == pytest.approx(np.sqrt(4 * np.pi), rel=1e-6)
    vals = op3.sigma.spectral_values(DEFAULT_OMEGA_GRID)
    assert weighted_omega_norm(vals, 1, DEFAULT_OMEGA_GRID) == pytest.approx(1.0, rel=1e-9)


def test_tanh_operator_has_no_weighted_norm(param_grid, input_grid):
    op = make_operator(tanh_profile(), param_grid, input_grid)
    assert op.norm_constant is None


def test_forward_s_zero(op3):
    z = ParamDistribution(op3.param_grid, np.zeros(op3.param_grid.counts))
    assert l2_norm(forward_s(op3, z)) == 0.0


def test_forward_s_linearity(op3, hermite12, ghost_profile):
    from ghostlet.nullspace import ridgelet_atom

    g1 = ridgelet_fourier(bump_mix(11), op3.sigma, op3.param_grid)
    g2 = ridgelet_atom(hermite12, 2, ghost_profile, op3.param_grid)
    lhs = forward_s(op3, 1.5 * g1 + (0.5 - 1j) * g2)
    rhs = 1.5 * forward_s(op3, g1) + (0.5 - 1j) * forward_s(op3, g2)
    assert l2_norm(lhs - rhs) < 1e-12 * max(l2_norm(lhs), 1.0)


def test_forward_s_bump_approaches_single_neuron(op3):
    """γ → normalized bump at (a₀, b₀) makes S[γ] → σ(a₀·x − b₀)."""
    a0, b0 = 1.5, 2.0
    x = op3.input_grid.axis(0)
    oracle = np.asarray(op3.sigma.real_eval(a0 * x - b0))
    errs = []
    for w in (0.4, 0.2, 0.1):
        g = sample(op3.param_grid,
                   lambda a, b: np.exp(-((a - a0) ** 2 + (b - b0) ** 2) / (2 * w ** 2))
                   / (2 * np.pi * w ** 2),
                   cls=ParamDistribution)
        out = forward_s(op3, g)
        errs.append(float(np.max(np.abs(out.values - oracle))))
    assert errs[2] < errs[0]
    assert errs[2] < 0.02 * np.max(np.abs(oracle))


def test_forward_s_requires_matching_grid(op3):
    other = Grid((-2.0, -2.0), (2.0, 2.0), (9, 9))
    with pytest.raises(DomainError):
        forward_s(op3, ParamDistribution(other, np.zeros((9, 9))))


def test_ridgelet_zero(op3):
    z = SampledFunction(op3.input_grid, np.zeros(op3.input_grid.counts))
    assert l2_norm(ridgelet(z, op3.sigma, op3.param_grid)) == 0.0


def test_ridgelet_spectrum_is_signed_and_spread():
    """For compactly supported f the spectrum changes sign and is not
    compactly supported in the box."""
    xg = Grid.line(-1.0, 1.0, 201)
    pg = Grid((-6.0, -6.0), (6.0, 6.0), (73, 73))
    f = sample(xg, lambda x: np.sin(2 * np.pi * x))
    rho2 = make_rho_family(2)[2]
    spec = ridgelet(f, rho2, pg).values.real
    assert spec.min() < -0.05 * spec.max()
    edge = np.abs(np.concatenate([spec[0, :], spec[-1, :], spec[:, 0], spec[:, -1]]))
    assert edge.max() > 1e-4  # not compactly supported inside the box


def test_ridgelet_paths_agree(op3):
    f = bump_mix(21)
    direct = ridgelet(f, op3.sigma, op3.param_grid)
    fast = ridgelet_fourier(f, op3.sigma, op3.param_grid)
    assert rel_l2(fast, direct) < 5e-3


def test_forward_paths_agree(op3):
    gam = ridgelet_fourier(bump_mix(22), op3.sigma, op3.param_grid)
    direct = forward_s(op3, gam)
    fast = forward_s_via_fourier(op3, gam)
    assert rel_l2(fast, direct) < 5e-3


def test_ridgelet_norm_identity(op3):
    # ‖R[f;ρ]‖² = (2π)^m ‖f‖² ‖ρ‖²_{L²ₘ} / (2π) (exact at m = 1)
    f = bump_mix(23)
    r = ridgelet_fourier(f, op3.sigma, op3.param_grid)
    expect = l2_norm(f) ** 2 * 1.0  # ‖σ‖_{L²ₘ} = 1
    assert l2_norm(r) ** 2 == pytest.approx(expect, rel=1e-3)


def test_ridgelet_boundedness(op3, ghost_profile):
    f = bump_mix(24)
    r = ridgelet_fourier(f, ghost_profile, op3.param_grid)
    bound = (2 * np.pi) ** 0 * l2_norm(f) ** 2 * 1.0  # unit-norm profile
    assert l2_norm(r) ** 2 <= bound * (1 + 1e-6)


def test_reconstruct_admissible(op3):
    f = bump_mix(25)
    out, pair = reconstruct(op3, f, op3.sigma)
    assert pair == pytest.approx(1.0, abs=1e-9)
    assert rel_l2(out, f) < 1e-2


def test_reconstruct_nonadmissible_degenerates(op3, ghost_profile):
    f = bump_mix(26)
    out, pair = reconstruct(op3, f, ghost_profile, use_fourier=True)
    assert abs(pair) < 1e-8
    assert l2_norm(out) < 0.05 * l2_norm(f)


def test_reconstruct_zero_input(op3, ghost_profile):
    z = SampledFunction(op3.input_grid, np.zeros(op3.input_grid.counts))
    out, _ = reconstruct(op3, z, ghost_profile, use_fourier=True)
    assert l2_norm(out) == 0.0


def test_reconstruct_scaling_sesquilinear(op3):
    f = bump_mix(27)
    alpha = 0.7 - 1.1j
    out1, pair1 = reconstruct(op3, f, op3.sigma, use_fourier=True)
    out2, pair2 = reconstruct(op3, f, op3.sigma.scaled(alpha), use_fourier=True)
    assert pair2 == pytest.approx(np.conj(alpha) * pair1, rel=1e-9)
    assert rel_l2(out2, np.conj(alpha) * out1) < 1e-9


def test_reconstruct_rejects_relu_pairing(op3):
    f = bump_mix(28)
    with pytest.raises(UnsupportedProfileError):
        reconstruct(op3, f, relu_profile())


def test_adjoint_zero(op3):
    z = SampledFunction(op3.input_grid, np.zeros(op3.input_grid.counts))
    assert l2_norm(adjoint(op3, z, AdjointMode.plain())) == 0.0


def test_adjoint_plancherel_and_reconstruction(op3):
    f = bump_mix(29)
    sf = adjoint(op3, f, AdjointMode.plain())
    assert l2_norm(sf) / l2_norm(f) == pytest.approx(1.0, abs=1e-2)
    assert rel_l2(forward_s(op3, sf), f) < 1e-2


def test_adjoint_duality_exact_on_grid(op3):
    f = bump_mix(30)
    gam = ridgelet_fourier(bump_mix(31), op3.sigma, op3.param_grid)
    lhs = l2_inner(f, forward_s(op3, gam))
    rhs = l2_inner(adjoint(op3, f, AdjointMode.plain()), gam)
    assert abs(lhs - rhs) / abs(lhs) < 1e-3


def test_separation_of_variables(op3):
    """Plugging the separable spectrum γ♯(a/ω,ω) = f̂(a)conj(ρ♯(ω)) into the
    spectral S returns ⟨⟨σ,ρ⟩⟩·f̂ (the one-line reconstruction)."""
    f = bump_mix(32)
    rho = op3.sigma
    gam = ridgelet_fourier(f, rho, op3.param_grid)
    shat = forward_s_fourier(op3, gam)
    fhat = fourier_forward(f, shat.grid)
    pair = pairing(op3.sigma, rho, 1)
    assert l2_norm(shat - pair * fhat) / l2_norm(fhat) < 1e-3


def test_forward_s_fourier_needs_spectrum(param_grid, input_grid):
    op = make_operator(relu_profile(), param_grid, input_grid, normalize=False)
    gam = ParamDistribution(param_grid, np.zeros(param_grid.counts))
    with pytest.raises(UnsupportedProfileError):
        forward_s_fourier(op, gam)


def test_build_sigma_star_trivial_orders():
    sig = gaussian_derivative_profile(1)
    star = build_sigma_star(sig, SobolevOrders(0, 0), m=1)
    grid = DEFAULT_OMEGA_GRID
    expect = np.abs(grid.axis(0)) * sig.spectral_values(grid)
    assert np.max(np.abs(star.spectral_values(grid) - expect)) < 1e-8


def test_sigma_star_pairing_identity():
    # ⟨⟨σ, σ*⟩⟩ = 2π · wh_norm(σ)² at m = 1 (the 𝒜-norm convention carries
    # no 1/2π; see the decisions record)
    sig = gaussian_profile()
    for orders in (SobolevOrders(0, 0), SobolevOrders(0, -1), SobolevOrders(1, -1)):
        star = build_sigma_star(sig, orders, m=1)
        lhs = pairing(sig, star, 1)
        rhs = 2 * np.pi * wh_norm(sig, orders) ** 2
        assert lhs.real == pytest.approx(rhs, rel=1e-2)
        assert abs(lhs.imag) < 1e-9 * rhs


def test_weighted_adjoint_duality():
    xg = Grid.line(-8.0, 8.0, 161)
    pg = Grid((-8.0, -24.0), (8.0, 24.0), (161, 193))
    op = make_operator(gaussian_profile(), pg, xg, normalize=False)
    orders = SobolevOrders(0.0, -1.0)
    f = bump_mix(33, grid=xg)
    gam = ridgelet_fourier(bump_mix(34, grid=xg), gaussian_derivative_profile(2), pg)
    sf = adjoint(op, f, AdjointMode.weighted(orders))
    lhs = l2_inner(f, forward_s(op, gam))
    rhs = hd_inner(sf, gam, orders, xg)
    assert abs(lhs - rhs) / abs(lhs) < 1e-2


def test_adjoint_mode_validation():
    with pytest.raises(DomainError):
        AdjointMode("weighted_sobolev")
    with pytest.raises(DomainError):
        AdjointMode("nope")


def test_sigma_star_rejects_nondecaying_spectrum():
    with pytest.raises(DomainError):
        build_sigma_star(tanh_profile(), SobolevOrders(0, 0), m=1)
