from liquidity_premium.oracle.shepp import (
    shepp_cell_probability,
    shepp_density,
    shepp_max_cdf,
    shepp_total_mass,
)
from liquidity_premium.oracle.simulation import (
    DriftedMaximum,
    OracleEstimate,
    SimConfig,
    mc_pi_lower,
    oracle_survival,
    simulate_drifted_maximum,
    simulate_max_forward,
)
from liquidity_premium.oracle.verification import (
    SandwichCheck,
    VerificationReport,
    sandwich_check,
    verify_bonds,
)

__all__ = [
    "DriftedMaximum",
    "OracleEstimate",
    "SandwichCheck",
    "SimConfig",
    "VerificationReport",
    "mc_pi_lower",
    "oracle_survival",
    "sandwich_check",
    "shepp_cell_probability",
    "shepp_density",
    "shepp_max_cdf",
    "shepp_total_mass",
    "simulate_drifted_maximum",
    "simulate_max_forward",
    "verify_bonds",
]
