"""Exceptions raised by the package.

The CLI maps each family to an exit code, see `liquidity_premium.cli`.
"""


class LiquidityPremiumError(Exception):
    """Base class for every error raised on purpose by this package."""


class InputError(LiquidityPremiumError, ValueError):
    """Market data, bond data or configuration that cannot be used as given."""


class CalibrationError(LiquidityPremiumError, RuntimeError):
    """A curve bootstrap could not reprice one of its instruments."""


class ModelDomainError(LiquidityPremiumError, ValueError):
    """The model cannot be evaluated at the requested point (e.g. extreme parameters)."""


class VerificationError(LiquidityPremiumError):
    """At least one Monte-Carlo sandwich check failed."""
