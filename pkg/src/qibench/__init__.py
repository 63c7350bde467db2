"""Classical-benchmark error bounds and ROC curves for microwave quantum illumination."""

__version__ = "0.1.0"

from .chernoff import BoundResult, OverlapResult, qbb, qcb, s_overlap
from .closed_forms import (
    AmpParams,
    MaserParams,
    qcb_amp,
    qcb_high_background,
    qcb_maser,
    qcb_optical,
    qre_amp,
    qre_maser,
    qre_optical,
    tmsv_asymptote,
)
from .gaussian import (
    DEFAULT_TOL,
    GaussianState,
    NumericError,
    Tolerances,
    WilliamsonDecomposition,
    added_photons_from_gain,
    amplified_source,
    apply_amplifier,
    apply_beamsplitter,
    is_physical,
    make_coherent,
    make_thermal,
    symplectic_eigenvalues,
    symplectic_form,
    williamson,
)
from .homodyne import (
    HomodyneChannel,
    channel_from_scenario,
    monte_carlo_roc,
    pfa_hom,
    pmd_hom,
    roc_homodyne,
    threshold_for_pfa,
)
from .protocols import (
    AMPLIFIED,
    FIGURE_IDS,
    MASER,
    OPTICAL,
    HypothesisPair,
    Scenario,
    build_scenario,
    figure_grid,
    hypothesis_pair,
    hypothesis_pair_via_channels,
    planck_occupation,
)
from .relent import (
    RelEntResult,
    RocCurve,
    gibbs_matrix,
    pmd_second_order,
    relative_entropy,
    relative_entropy_variance,
    roc_asymmetric,
    roc_from_rates,
)
from .special import erfc, erfc_inv, normal_quantile

__all__ = [
    "__version__",
    "AMPLIFIED",
    "AmpParams",
    "BoundResult",
    "DEFAULT_TOL",
    "FIGURE_IDS",
    "GaussianState",
    "HomodyneChannel",
    "HypothesisPair",
    "MASER",
    "MaserParams",
    "NumericError",
    "OPTICAL",
    "OverlapResult",
    "RelEntResult",
    "RocCurve",
    "Scenario",
    "Tolerances",
    "WilliamsonDecomposition",
    "added_photons_from_gain",
    "amplified_source",
    "apply_amplifier",
    "apply_beamsplitter",
    "build_scenario",
    "channel_from_scenario",
    "erfc",
    "erfc_inv",
    "figure_grid",
    "gibbs_matrix",
    "hypothesis_pair",
    "hypothesis_pair_via_channels",
    "is_physical",
    "make_coherent",
    "make_thermal",
    "monte_carlo_roc",
    "normal_quantile",
    "pfa_hom",
    "pmd_hom",
    "planck_occupation",
    "pmd_second_order",
    "qbb",
    "qcb",
    "qcb_amp",
    "qcb_high_background",
    "qcb_maser",
    "qcb_optical",
    "qre_amp",
    "qre_maser",
    "qre_optical",
    "relative_entropy",
    "relative_entropy_variance",
    "roc_asymmetric",
    "roc_from_rates",
    "roc_homodyne",
    "s_overlap",
    "symplectic_eigenvalues",
    "symplectic_form",
    "threshold_for_pfa",
    "tmsv_asymptote",
    "williamson",
]
