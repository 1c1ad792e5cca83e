"""Finite 2-dimensional simplicial complexes, their homology and presentations,
and bounds on simplicial complexity and systolic area of groups."""
from ._accel import backend
from .bounds import certificate, counting_bounds, kappa_sigma_conversions, lens_bounds, phi, stable_bounds
from .census import ColoredGraph, census, check_properties, count_bounds, decode, encode
from .complex import (MarkedComplex, Simplex2Complex, barycentric_subdivide, glue_triangle, identify,
                      is_minimal_candidate, stats, validate, wedge)
from .constructions import (build, complex_for_abelian, complex_for_cyclic, free_product_complex,
                            minimal_rp2, minimal_torus, moebius_strip, moebius_telescope,
                            surface_bounds)
from .errors import SimpcxError
from .groups import GroupSpec, parse_group
from .homology import boundary_matrix, homology_summary, kappa_lower_torsion, smith_normal_form
from .metric import EdgeMetric, equilateral_sigma_upper, homological_systole, telescope_sigma_upper
from .presentations import (Presentation, abelianization, complex_to_presentation,
                            presentation_to_complex, tietze_simplify, triangularize)

__version__ = "0.1.0"
