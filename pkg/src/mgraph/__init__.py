"""Metric-property workbench for power-law graphs.

Generators for three weight-driven random-graph models, BFS-based
diameter/radius/centrality algorithms with certified exact variants, the
four neighborhood-growth property checks, closed-form growth predictions,
and an exact 2-hop distance oracle. `mgraph --help` drives it all from
the command line.
"""

__version__ = "0.1.0"

from .graph import (Graph, DistanceArray, UNREACHED, bfs, build_from_edges,
                    giant_component, is_connected, load_edge_list,
                    save_edge_list)
from .genmodel import (ModelSpec, WeightSequence, gen_chung_lu,
                       gen_configuration_model, gen_norros_reittu,
                       generate_graph, power_law_weights)
from .theory import (DiscreteDistribution, Prediction, eta_distribution,
                     extinction_probability, power_law_degree_distribution,
                     predict, residual_distribution)
from .metrics import (NeighborhoodProfile, TauTable, average_distance,
                      closeness, estimate_c_tail, estimate_constant_C,
                      exact_diameter, exact_radius, eccentricity, farness,
                      neighborhood_profile, tau, tau_table)
from .algos import (AlgoResult, BoundState, RWFailure, bcm_topk,
                    exact_sumsweep, ifub, rw_approx, sample_lower_bound,
                    sumsweep_heuristic, two_sweep)
from .oracle import (HubLabeling, build_labels, label_stats, load_labels,
                     query, save_labels)
from .properties import (PropertyReport, verify_degree, verify_dev,
                         verify_touch, verify_untouch)
