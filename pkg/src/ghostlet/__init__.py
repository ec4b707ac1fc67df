"""ghostlet: ridgelet operator calculus on sampled grids.

Integral representations of shallow networks, ridgelet transforms and their
Fourier-slice fast paths, admissibility and null-space (ghost) analysis,
function-series encoding into ghosts, ε-mollified finite models, and the
projected-norm generalization-bound calculator.
"""

__version__ = "0.1.0"

from .grids import (
    AccuracyError,
    DataError,
    DomainError,
    Grid,
    ParamDistribution,
    QuadratureScheme,
    SampledFunction,
    SpectralFunction,
    UnsupportedProfileError,
    integrate,
    l2_inner,
    l2_norm,
    sample,
    weighted_omega_inner,
    weighted_omega_norm,
)
from .fourier import (
    SobolevOrders,
    fourier_forward,
    fourier_inverse,
    flat,
    fractional_bracket,
    partial_flat_b,
    partial_sharp_b,
    sharp,
    wh_norm,
)
from .profiles import (
    BasisFamily,
    Profile1D,
    dawson,
    gaussian_derivative_profile,
    gaussian_profile,
    gram_schmidt_l2m,
    hermite_basis,
    make_rho_family,
    pairing,
    relu_profile,
    rho0_profile,
    tanh_profile,
)
from .transforms import (
    AdjointMode,
    NetworkOperator,
    adjoint,
    build_sigma_star,
    forward_s,
    forward_s_fourier,
    forward_s_via_fourier,
    hd_inner,
    make_operator,
    reconstruct,
    ridgelet,
    ridgelet_fourier,
)
from .nullspace import (
    AdmissibilityReport,
    DisjointSupport,
    ExpansionCoefficients,
    LinearCombination,
    NormalizedDifference,
    StructureDecomposition,
    admissibility,
    density_expand,
    density_synthesize,
    lazy_solution,
    make_nonadmissible,
    project,
    ridgelet_atom,
    structure_decompose,
)
from .encoding import (
    GhostCodebook,
    ModulationMap,
    encode_series,
    make_ghost_codebook,
    modulate,
    readout_mutate,
)
from .finite_models import (
    FiniteModel,
    LayerSpec,
    NascentDelta,
    finite_ridgelet_coeffs,
    generalization_bound,
    layer_norms,
    mollify,
    point_mass_network,
    sample_parameters,
    smooth_convolve,
)
