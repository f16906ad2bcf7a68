"""Fridman functions, squeezing functions and injectivity radii of hyperbolic Riemann surfaces."""
from .domains import (
    Annulus,
    InvariantSample,
    MetricKind,
    PuncturedDisk,
    cara_distance_annulus,
    fridman_c_annulus_prime,
    fridman_c_annulus_product,
    fridman_c_punctured,
    fridman_k_annulus,
    fridman_k_punctured,
    injectivity_radius_annulus,
    quotient_invariant,
    simha_F,
    sk_prime,
    slit_disk_map,
    squeezing_annulus,
    squeezing_punctured,
)
from .errors import *  # noqa: F401,F403
from .fuchsian import FuchsianGroup, boundary_probe, fridman_k, injectivity_radius_fn, orbit_min_displacement
from .hyperbolic import Kind, MobiusMap, Model, classify, rho_disk, rho_halfplane
from .numerics import ProductResult, Tolerance, eval_product

__version__ = "0.1.0"
