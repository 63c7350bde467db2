"""Cross-validation suites: closed forms against the general Gaussian machinery.

The central check evaluates every benchmark combination two ways. The
closed forms split the bound into a prefactor and a displacement exponent;
the identical split falls out of the general s-overlap at s = 1/2, so the
exponents are compared strictly and the prefactors diagnostically. The
relative-entropy comparison runs the general machinery in arbitrary
precision because at small eta * N_A the quantity is a cancellation beyond
float64 covariance resolution.

Two documented gaps are reported with ``expected_gap=True``: the stated
2e-5 agreement between the exact optical exponent and eta N_S / (4 N_B)
(the true gap at N_B = 6250 is 1/(2 N_B + 1) = 8.0e-5) and the stated 1%
maser-10K-to-optical exponent match (the energy-matching loss n_T/(N_S+N_A)
is 3.3%). See the project notes for the derivations.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import closed_forms as cf
from .chernoff import BoundResult, qbb
from .gaussian import symplectic_form, williamson
from .homodyne import (
    channel_from_scenario,
    monte_carlo_roc,
    pfa_hom,
    pmd_hom,
    roc_homodyne,
    threshold_for_pfa,
)
from .protocols import (
    AMPLIFIED,
    MASER,
    Scenario,
    build_scenario,
    figure_grid,
    hypothesis_pair,
    hypothesis_pair_via_channels,
)
from .relent import relative_entropy, roc_asymmetric
from .special import erfc, erfc_inv, normal_quantile

QRE_ORACLE_DPS = 50

GRID_ETAS = (1e-8, 1e-6, 1e-4, 1e-2, 1e-1)
GRID_N_S = (1e-3, 1e-1, 1.0)
GRID_N_B = (1.0, 100.0, 6250.0)
GRID_N_A = (0.0, 6250.0, 5e8)
GRID_N_T = (0.0, 207.9, 6250.0)
GRID_MASER_PHI = 0.5


@dataclass
class CheckResult:
    """Outcome of one validation check."""

    name: str
    passed: bool
    metric: float
    threshold: float
    detail: str = ""
    expected_gap: bool = False

    def line(self) -> str:
        status = "PASS" if self.passed else ("KNOWN-GAP" if self.expected_gap else "FAIL")
        text = f"{status:9s} {self.name}: metric={self.metric:.6e} threshold={self.threshold:.6e}"
        if self.detail:
            text += f" ({self.detail})"
        return text


def benchmark_combos(quick: bool = False) -> list[Scenario]:
    """Deterministic scenario grid spanning the acceptance parameter ranges."""
    etas = GRID_ETAS[::2] if quick else GRID_ETAS
    n_ss = GRID_N_S[::2] if quick else GRID_N_S
    combos: list[Scenario] = []
    for eta in etas:
        for n_s in n_ss:
            for n_b in GRID_N_B:
                for n_a in GRID_N_A:
                    combos.append(
                        build_scenario(
                            AMPLIFIED,
                            energy_matched=False,
                            label=f"amp_eta{eta:g}_ns{n_s:g}_na{n_a:g}_nb{n_b:g}",
                            n_s=n_s,
                            n_a=n_a,
                            eta=eta,
                            copies=1,
                            n_b=n_b,
                        )
                    )
                for n_t in GRID_N_T:
                    combos.append(
                        build_scenario(
                            MASER,
                            energy_matched=False,
                            label=f"mas_eta{eta:g}_ns{n_s:g}_nt{n_t:g}_nb{n_b:g}",
                            n_s=n_s,
                            phi=GRID_MASER_PHI,
                            n_t=n_t,
                            eta=eta,
                            copies=1,
                            n_b=n_b,
                        )
                    )
    return combos


def closed_bound(scenario: Scenario) -> BoundResult:
    """Closed-form symmetric bound for a scenario."""
    n_b = scenario.background
    if scenario.kind == AMPLIFIED:
        return cf.qcb_amp(cf.AmpParams(scenario.n_s, scenario.n_a, n_b, scenario.eta, scenario.copies))
    if scenario.kind == MASER:
        return cf.qcb_maser(
            cf.MaserParams(
                n_s=scenario.transmitted_signal,
                phi=1.0,
                n_t=scenario.fridge_occupation,
                n_b=n_b,
                eta=scenario.eta,
                copies=scenario.copies,
            )
        )
    return cf.qcb_optical(scenario.transmitted_signal, n_b, scenario.eta, scenario.copies)


def closed_qre(scenario: Scenario) -> tuple[float, float]:
    """Closed-form (D, V) for a scenario."""
    n_b = scenario.background
    if scenario.kind == AMPLIFIED:
        return cf.qre_amp(cf.AmpParams(scenario.n_s, scenario.n_a, n_b, scenario.eta, scenario.copies))
    if scenario.kind == MASER:
        return cf.qre_maser(
            cf.MaserParams(
                n_s=scenario.transmitted_signal,
                phi=1.0,
                n_t=scenario.fridge_occupation,
                n_b=n_b,
                eta=scenario.eta,
                copies=scenario.copies,
            )
        )
    return cf.qre_optical(scenario.transmitted_signal, n_b, scenario.eta)


def _rel_dev(a: float, b: float) -> float:
    if a == b:
        return 0.0
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def check_qcb_equivalence(combos: list[Scenario] | None = None) -> CheckResult:
    """Closed-form exponent (eta N_S xi2 form) vs the s = 1/2 overlap split."""
    combos = benchmark_combos() if combos is None else combos
    if not combos:
        raise ValueError("equivalence check requires a non-empty scenario grid")
    worst = 0.0
    worst_pre = 0.0
    worst_label = ""
    for scenario in combos:
        pair = hypothesis_pair(scenario)
        oracle = qbb(pair.rho0, pair.rho1, scenario.copies)
        closed = closed_bound(scenario)
        dev = _rel_dev(closed.mean_exponent, oracle.mean_exponent)
        if dev > worst:
            worst, worst_label = dev, scenario.label
        worst_pre = max(worst_pre, _rel_dev(closed.prefactor, oracle.prefactor))
    return CheckResult(
        name="qcb_exponent_closed_vs_oracle",
        passed=worst <= 1e-6,
        metric=worst,
        threshold=1e-6,
        detail=f"{len(combos)} combos, worst at {worst_label}; prefactor diag dev {worst_pre:.3e}",
    )


def check_qre_equivalence(combos: list[Scenario] | None = None, dps: int = QRE_ORACLE_DPS) -> CheckResult:
    """Closed-form (D, V) vs the general relative entropy at high precision."""
    combos = benchmark_combos() if combos is None else combos
    if not combos:
        raise ValueError("equivalence check requires a non-empty scenario grid")
    worst = 0.0
    worst_label = ""
    for scenario in combos:
        pair = hypothesis_pair(scenario)
        oracle = relative_entropy(pair.rho0, pair.rho1, dps=dps)
        d_closed, v_closed = closed_qre(scenario)
        dev = max(_rel_dev(d_closed, oracle.d), _rel_dev(v_closed, oracle.v))
        if dev > worst:
            worst, worst_label = dev, scenario.label
    return CheckResult(
        name="qre_closed_vs_oracle",
        passed=worst <= 1e-8,
        metric=worst,
        threshold=1e-8,
        detail=f"{len(combos)} combos at dps={dps}, worst at {worst_label}",
    )


def check_amplifier_free_limit() -> CheckResult:
    """qcb_amp at N_A = 0 must reproduce the optical bound exponent."""
    worst = 0.0
    for eta in GRID_ETAS:
        for n_s in GRID_N_S:
            for n_b in (0.3, 1.0, 7.5, 100.0, 6250.0, 1e6, 5e8):
                amp = cf.qcb_amp(cf.AmpParams(n_s, 0.0, n_b, eta))
                opt = cf.qcb_optical(n_s, n_b, eta)
                worst = max(worst, _rel_dev(amp.mean_exponent, opt.mean_exponent))
    return CheckResult(
        name="limit_amp_na0_equals_optical",
        passed=worst <= 1e-12,
        metric=worst,
        threshold=1e-12,
        detail="105-point grid",
    )


def check_high_background_limit() -> CheckResult:
    """Exact optical exponent vs eta N_S / (4 N_B) at N_B = 6250.

    The true relative gap is 1/(2 N_B + 1) = 8.0e-5; the stated 2e-5 cannot
    be met by any implementation, so this is a documented expected gap.
    """
    opt = cf.qcb_optical(1.0, 6250.0, 1.0)
    hb = cf.qcb_high_background(1.0, 6250.0, 1.0)
    dev = _rel_dev(opt.mean_exponent, hb.mean_exponent)
    return CheckResult(
        name="limit_high_background_2e-5",
        passed=dev <= 2e-5,
        metric=dev,
        threshold=2e-5,
        detail="true gap 1/(2 N_B + 1) = 8.0e-5",
        expected_gap=True,
    )


def check_factor_four() -> CheckResult:
    """TMSV asymptote vs classical exponents: exact factor 4 over the high-
    background form, within 0.01% of the exact optical one at N_B = 6250."""
    tmsv = cf.tmsv_asymptote(0.37, 6250.0, 0.11).mean_exponent
    hb = cf.qcb_high_background(0.37, 6250.0, 0.11).mean_exponent
    opt = cf.qcb_optical(0.37, 6250.0, 0.11).mean_exponent
    exact_four = tmsv / hb == 4.0
    dev_opt = abs(tmsv / opt / 4.0 - 1.0)
    return CheckResult(
        name="tmsv_factor_four",
        passed=exact_four and dev_opt <= 1e-4,
        metric=dev_opt,
        threshold=1e-4,
        detail=f"ratio to high-background exactly 4: {exact_four}",
    )


def figure_claim_metrics() -> dict[str, float]:
    """Exponent-coincidence metrics behind the published-figure claims."""
    upper = {s.label: closed_bound(s).mean_exponent for s in figure_grid("fig2_upper")}
    lower = {s.label: closed_bound(s).mean_exponent for s in figure_grid("fig2_lower")}
    maser_labels = [k for k in lower if k.startswith("mas_")]
    return {
        "upper_mas10K_vs_optical": _rel_dev(upper["mas_10K"], upper["optical"]),
        "upper_amp_vs_mas10K_ratio": upper["amp"] / upper["mas_10K"],
        "upper_mas300K_vs_amp": _rel_dev(upper["mas_300K"], upper["amp"]),
        "lower_masers_vs_optical": max(_rel_dev(lower[k], lower["optical"]) for k in maser_labels),
    }


def check_figure_claims() -> list[CheckResult]:
    m = figure_claim_metrics()
    return [
        CheckResult(
            name="fig2_upper_mas10K_within_1pct_of_optical",
            passed=m["upper_mas10K_vs_optical"] <= 1e-2,
            metric=m["upper_mas10K_vs_optical"],
            threshold=1e-2,
            detail="true gap n_T/(N_S + N_A) = 3.3%",
            expected_gap=True,
        ),
        CheckResult(
            name="fig2_upper_amp_strictly_below_maser",
            passed=m["upper_amp_vs_mas10K_ratio"] < 1.0,
            metric=m["upper_amp_vs_mas10K_ratio"],
            threshold=1.0,
            detail="amp/mas-10K exponent ratio",
        ),
        CheckResult(
            name="fig2_upper_mas300K_overlaps_amp",
            passed=m["upper_mas300K_vs_amp"] <= 1e-2,
            metric=m["upper_mas300K_vs_amp"],
            threshold=1e-2,
        ),
        CheckResult(
            name="fig2_lower_masers_overlap_optical",
            passed=m["lower_masers_vs_optical"] <= 1e-3,
            metric=m["lower_masers_vs_optical"],
            threshold=1e-3,
        ),
    ]


def check_homodyne_monte_carlo(seed: int = 20250808, trials: int = 1_000_000) -> CheckResult:
    """Closed-form homodyne ROC vs seeded sampling at the fig4-mid parameters."""
    scenario = next(s for s in figure_grid("fig4_mid") if s.label == "amp")
    ch = channel_from_scenario(scenario)
    targets = np.geomspace(0.02, 0.9, 10)
    thresholds = [threshold_for_pfa(float(p), ch) for p in targets]
    empirical = monte_carlo_roc(ch, thresholds, trials=trials, seed=seed)
    worst = 0.0
    for x, p_fa_hat, p_md_hat in zip(sorted(thresholds, reverse=True), empirical.p_fa, empirical.p_md):
        for p_hat, p in ((p_fa_hat, pfa_hom(x, ch)), (p_md_hat, pmd_hom(x, ch))):
            sigma = math.sqrt(p * (1.0 - p) / trials)
            worst = max(worst, abs(p_hat - p) / sigma)
    return CheckResult(
        name="homodyne_monte_carlo_4sigma",
        passed=worst <= 4.0,
        metric=worst,
        threshold=4.0,
        detail=f"{trials} trials per hypothesis, 10 thresholds, seed {seed}",
    )


def check_special_functions() -> CheckResult:
    """erfc_inv round trip over (0, 2) and the exact median quantile."""
    ys = np.concatenate(
        [
            np.geomspace(1e-12, 1.0, 200),
            2.0 - np.geomspace(1e-12, 1.0, 200),
        ]
    )
    worst = 0.0
    for y in ys:
        x = erfc_inv(float(y))
        worst = max(worst, abs(erfc(x) - y) / y)
    median_exact = normal_quantile(0.5) == 0.0
    return CheckResult(
        name="erfc_inv_round_trip",
        passed=worst <= 1e-12 and median_exact,
        metric=worst,
        threshold=1e-12,
        detail=f"Phi^-1(0.5) == 0: {median_exact}",
    )


def random_physical_cov(rng: np.random.Generator, modes: int) -> np.ndarray:
    """Random physical covariance matrix S diag(nu) S^T with symplectic S."""
    h = rng.normal(size=(2 * modes, 2 * modes))
    h = 0.4 * (h + h.T) / 2.0
    s = sla.expm(symplectic_form(modes) @ h)
    nus = 0.5 + rng.uniform(0.0, 8.0, size=modes)
    return s @ np.diag(np.repeat(nus, 2)) @ s.T


def check_structural(seed: int = 20250808, samples: int = 1000) -> CheckResult:
    """Williamson residuals, hypothesis-pair path independence, ROC monotonicity."""
    rng = np.random.default_rng(seed)
    worst_recon = 0.0
    worst_sympl = 0.0
    for _ in range(samples):
        modes = int(rng.integers(1, 4))
        cov = random_physical_cov(rng, modes)
        dec = williamson(cov)
        omega = symplectic_form(modes)
        recon = np.linalg.norm(dec.S @ dec.diagonal_form() @ dec.S.T - cov) / np.linalg.norm(cov)
        sympl = np.abs(dec.S @ omega @ dec.S.T - omega).max()
        worst_recon = max(worst_recon, recon)
        worst_sympl = max(worst_sympl, sympl)

    worst_path = 0.0
    for fig in ("fig2_upper", "fig2_lower"):
        for scenario in figure_grid(fig):
            direct = hypothesis_pair(scenario)
            composed = hypothesis_pair_via_channels(scenario)
            dev = max(
                np.abs(direct.rho1.mean - composed.rho1.mean).max(),
                np.abs(direct.rho1.cov - composed.rho1.cov).max() / np.abs(direct.rho1.cov).max(),
            )
            worst_path = max(worst_path, dev)

    monotone = True
    for scenario in figure_grid("fig3_upper"):
        pair = hypothesis_pair(scenario)
        monotone &= roc_asymmetric(pair.rho0, pair.rho1, scenario.copies).is_monotone()
    for scenario in figure_grid("fig4_mid"):
        monotone &= roc_homodyne(channel_from_scenario(scenario)).is_monotone()

    metric = max(worst_recon, worst_sympl)
    return CheckResult(
        name="structural_invariants",
        passed=metric <= 1e-10 and worst_path <= 1e-12 and monotone,
        metric=metric,
        threshold=1e-10,
        detail=f"{samples} covariances; path dev {worst_path:.3e}; ROC monotone {monotone}",
    )


def run_all(seed: int = 20250808, quick: bool = False) -> tuple[list[CheckResult], float]:
    """Run every validation suite; returns the check list and the wall time."""
    start = time.perf_counter()
    combos = benchmark_combos(quick=quick)
    results = [
        check_qcb_equivalence(combos),
        check_qre_equivalence(combos),
        check_amplifier_free_limit(),
        check_high_background_limit(),
        check_factor_four(),
        *check_figure_claims(),
        check_homodyne_monte_carlo(seed=seed, trials=100_000 if quick else 1_000_000),
        check_special_functions(),
        check_structural(seed=seed, samples=200 if quick else 1000),
    ]
    return results, time.perf_counter() - start
