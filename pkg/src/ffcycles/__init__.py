"""Exact counting of cycles, paths and tree maps in distance and
dot-product graphs over F_q^d, plus the Fourier data and bound checks
that go with them."""
from .bounds import SweepConfig, SweepResult, TheoremConstants, constants, verify, verify_sweep
from .counting import (CycleProfile, PathProfile, bilinear_form, cycle_count, degenerate_bound,
                       full_space_spectral_cycles, nondegenerate_count, oracle_count, path_counts,
                       total_paths, tree_embeddings)
from .ensembles import SetRecipe, generate_set, parse_recipe
from .errors import *  # noqa: F401,F403
from .field import FieldCtx, PointSet, dot, make_context, norm
from .graphs import Graph, GraphSpec, Relation, build_graph, edge_report, truncate
from .reports import BoundReport
from .spectra import (GridFunction, SmoothingReport, SpectralReport, fourier, inverse_fourier,
                      smoothing_order, spectral_report, sphere)
from .trees import TreeShape, enumerate_trees, tree_classes

__version__ = "0.1.0"
