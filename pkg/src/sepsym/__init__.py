"""Separating sets of elementary symmetric polynomials over finite fields."""

from .errors import *  # noqa: F401,F403
from .gf import GF, field_new, field_of_order, prime_power
from .multisym import (
    Amitsur,
    Cheap,
    Main,
    MultiOrbit,
    enumerate_multi_orbits,
    evaluate_member,
    family,
    is_separating_multi,
    multi_bounds,
    parse_multi_orbit,
)
from .orbits import (
    OrbitMultiplicity,
    digit_slice,
    enumerate_orbits,
    orbit_count,
    orbit_from_vector,
    parse_orbit,
    scale_by_p,
)
from .separating import (
    WitnessPair,
    base_digit_recover,
    bounds_report,
    index_set,
    irreplaceable_witness,
    is_separating,
    lacunary_check,
    minimal_subsets,
    reconstruct,
    roots_of_unity_witness,
)
from .series import TruncatedSeries, gen_poly, orbit_table, s_value, signature

__version__ = "0.1.0"
