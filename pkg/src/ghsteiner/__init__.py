"""Gromov-Hausdorff distances, l-infinity Steiner trees and minimal fillings
of small finite metric spaces."""

from .embed import (
    EmbeddingRecord,
    GenericAnchor,
    embed_into_gh,
    make_anchor,
    nu_inverse,
    realize_filling,
    theorem1_radius,
)
from .filling import FillingSolution, mf, mf_topology, verify_filling_characterization
from .gh import Correspondence, distortion, gh_distance, gh_lower_bound, hausdorff_linf
from .metric import (
    FiniteMetricSpace,
    GenericityReport,
    PointCloudLinf,
    delta,
    kuratowski,
    make_space,
    nu,
    random_generic,
    scale_space,
    simplex_space,
)
from .ratios import RatioReport, ratios_linf, simplex_experiment, verify_theorem1
from .steiner import SteinerSolution, smt_linf, solve_topology
from .trees import TreeTopology, WeightedTree, enumerate_topologies, mst, tree_length

__version__ = "0.1.0"
