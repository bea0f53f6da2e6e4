"""Random regular graphs, exact random-walk evolution and cutoff diagnostics."""

from .config_model import (classify, collapse_to_multigraph, estimate_simple_probability,
                           sample_pairing, sample_simple_regular, simple_probability_limit)
from .errors import RRGError
from .geometry import (ball_layers, boundary_star, count_simple_paths, is_k_root,
                       trajectory_count_vector, tree_excess)
from .graph import (DirectedEdgeSpace, RegularGraph, bfs_distances, build_edge_space,
                    complete_bipartite, complete_graph, load_graph, petersen_graph,
                    save_graph, validate)
from .mixing import (StartPolicy, distance_profile, duality_residual, mixing_time,
                     poissonization_stat, second_eigenvalue_estimate, tv_distance,
                     worst_case_profile)
from .montecarlo import burn_in_root_rate, distance_speed_profile, sample_walk
from .theory import (ceil_log, large_d_predictions, nbrw_bounds, srw_prediction,
                     tree_height_distribution, window_constant)
from .walks import LAZY, NBRW, SRW, Kernel, ProbVector, evolve, initial_distribution

__version__ = "0.1.0"
