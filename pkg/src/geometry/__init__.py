"""
Geometry of rank-one symmetric spaces: radial measure, hyperboloid model, nets
"""
from .measure import annulus_measure, ball_measure, density, radial_integral
from .hyperboloid import ball_sample, boost, geodesic_length, model_distance, sample_region
from .nets import build_net, covering_multiplicity, write_net

__all__ = [
    "annulus_measure",
    "ball_measure",
    "density",
    "radial_integral",
    "ball_sample",
    "boost",
    "geodesic_length",
    "model_distance",
    "sample_region",
    "build_net",
    "covering_multiplicity",
    "write_net",
]
