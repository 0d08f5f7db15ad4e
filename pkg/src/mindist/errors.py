"""Exception types raised by the estimators and the benchmark harness."""


class EstimationError(Exception):
    """Base class for all estimation failures."""


class InvalidMeasureError(EstimationError):
    """An integrating measure is used where its variant is not allowed, or
    it violates the symmetry/monotonicity requirements."""


class ShapeError(EstimationError):
    """Inputs have inconsistent or invalid dimensions, or non-finite entries."""


class RankDeficiencyError(EstimationError):
    """A design or moment matrix is numerically rank deficient."""


class OrderError(EstimationError):
    """An autoregression order is incompatible with the series length."""


class DegenerateSeriesError(EstimationError):
    """A series carries no usable information for autoregression (e.g. all
    zeros), making the lag cross-product singular."""


class CampaignError(EstimationError):
    """A Monte Carlo campaign could not produce usable summary statistics."""
