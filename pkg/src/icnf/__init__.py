"""Rate regions of the two-user interference channel with noisy channel-output feedback."""

from .gap import GapReport, classify_case, delta, symmetric_gap_surface
from .gaussian import GaussParams, inner_region, outer_region
from .gdof import GdofQuery, gdof_estimate, symmetric_rate
from .geometry import ConvexRateRegion, LinearBound, RatePair, RegionUnion, region
from .ld_channel import LdParams
from .ld_region import ThetaVector, ld_capacity_region, theta_ld
from .fm import closed_form_region, project_rate_region

__version__ = "0.1.0"
