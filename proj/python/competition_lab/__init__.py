"""Growth, exclusion, and competition-interface laboratory."""

from ._core import (
    burgers_u,
    coupling_totals,
    growth_interface,
    inclination_cdf,
    inclination_law,
    ks_distance,
    ks_two_sample,
    limit_shape,
    marker_trajectory,
    passage_times,
    pooled_density,
    regime,
    sample_inclination,
    sample_marker,
    speed_law,
    theta_degrees,
    version,
)

__all__ = [
    "burgers_u",
    "coupling_totals",
    "growth_interface",
    "inclination_cdf",
    "inclination_law",
    "ks_distance",
    "ks_two_sample",
    "limit_shape",
    "marker_trajectory",
    "passage_times",
    "pooled_density",
    "regime",
    "sample_inclination",
    "sample_marker",
    "speed_law",
    "theta_degrees",
    "version",
]

__version__ = version()
