"""Exact and asymptotic simulation of the 3-state Grover-coin walk on the line.

The package cross-validates three independent computation paths: exact
site-space evolution, an exact spectral (momentum-space) oracle, and
closed-form long-time asymptotics (localization, ballistic front, weak
limit, moments).
"""

__version__ = "0.1.0"

from .algebra import (
    format_spinor,
    grover_coin,
    hop_matrices,
    normalize_spinor,
    parse_spinor,
)
from .analysis import (
    ASYMMETRY_DEMO_SPINORS,
    EnvelopeFit,
    SeriesRecord,
    fit_envelope,
    run_convergence,
    run_localization_scan,
    run_moment_sweep,
    run_pdf_comparison,
    run_smoothed_comparison,
)
from .asymptotics import (
    StationaryPoint,
    asymptotic_pdf,
    branch_cross,
    front_operators,
    relative_difference,
    stationary_front_cross,
    stationary_point,
)
from .errors import (
    DegeneracyError,
    DomainError,
    EnvelopeFitError,
    ResourceLimitError,
    SpinorFormatError,
    WalkError,
)
from .evolution import (
    AmplitudeLine,
    PDFSlice,
    evolve,
    init_line,
    pdf,
    record_sites,
    spatial_average,
    step,
    time_average,
    total_probability_series,
)
from .localization import (
    KAPPA_MINUS,
    KAPPA_PLUS,
    one_sided_family,
    residue_at_zero,
    stationary_matrix,
    stationary_pdf,
    total_localization,
)
from .spectral import (
    Eigensystem,
    MomentumCoin,
    coin_power,
    dispersion_omega,
    eigensystem,
    inverse_transform,
    line_state,
    momentum_coin,
    momentum_grid,
)
from .weaklimit import (
    MomentSet,
    WeakLimitDensity,
    delta_weight_matrix,
    front_matrix,
    front_moment,
    limit_density,
    mixed_state_density,
    moments,
    smooth_pdf,
)
