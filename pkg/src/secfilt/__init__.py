"""Transmit filter design for the MIMO Gaussian wiretap channel.

Library plus batch CLI: closed-form and dual-bisection transmit filter
designs under eavesdropper-MSE secrecy constraints, channel-uncertainty
variants, and Monte Carlo validation of MSE, bit error rate and
achievable secrecy rate.
"""

from .channel import ChannelStats, WiretapScenario, gram_pair, is_degraded, validate, whiten
from .design_wiener import (
    design_zf_wiener,
    max_gamma_power_limited,
    min_power_secrecy_limited,
    both_active_solve,
    power_limited_filter,
    secrecy_limited_filter,
)
from .design_zf import (
    DesignSolution,
    Regime,
    design_zf_zf,
    dual_objective,
    secrecy_inactive_filter,
    solve_zspace,
)
from .filters import (
    ReceiverKind,
    TransmitFilter,
    achievable_secrecy_rate,
    mse_wiener,
    mse_zf,
    power_used,
    wiener_receive,
    zf_receive,
)
from .linalg import (
    SimDiag,
    herm_power,
    min_generalized_eigenvalue,
    pseudo_inverse,
    simultaneous_diagonalize,
)
from .capacity import secrecy_capacity_degraded
from .montecarlo import (
    CME_BACKEND,
    Constellation,
    McEstimate,
    cme_estimate,
    perturbed_design_experiment,
    simulate_ber_bpsk,
    simulate_cme_mse,
    simulate_mse,
)
from .uncertainty import (
    design_scenario1_zf,
    design_scenario2_zf,
    expected_inverse_gram,
)

__version__ = "0.1.0"
