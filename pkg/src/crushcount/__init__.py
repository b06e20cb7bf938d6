"""Counting stable colourings of Candy Crush grids.

Multilevel splitting driven by a Moser-Tardos sampler, with a plain Monte
Carlo baseline, an exact enumeration oracle and local-lemma feasibility
analysis.
"""
from ._backend import BACKEND
from .coloring import (Coloring, first_monochromatic_edge, is_monochromatic, is_stable,
                       prefix_stable_level)
from .errors import (CrushCountError, InvalidInputError, OracleBudgetExceeded,
                     SamplerBudgetExceeded)
from .estimator import (EstimateReport, LevelEstimate, McReport, estimate_level,
                        exact_level_probabilities, monte_carlo_estimate, splitting_estimate,
                        t_sample_schedule)
from .grid import (GridSpec, Hyperedge, Hypergraph, build_candy_grid, candy_grid,
                   parse_hypergraph, prefix_subhypergraph, serialize_hypergraph)
from .lll import (FeasibilityVerdict, RegionReport, check_fpras_condition,
                  expected_resample_bound, min_colors, scan_region)
from .oracle import (ExactCount, enumerate_stable, exact_chromatic_polynomial_points,
                     exact_count)
from .rng import RngStream
from .sampler import SampleStats, mt_sample, mt_sample_prefix, sample_many

__version__ = "0.1.0"
