"""
Renewal point processes of decision epochs
"""

from .distributions import Distribution, DistributionKind
from .point_process import EpochPath, RenewalSpec, crossing_count, mean_cycle, sample_path

__all__ = [
    "Distribution",
    "DistributionKind",
    "EpochPath",
    "RenewalSpec",
    "crossing_count",
    "mean_cycle",
    "sample_path"
]
