"""Workbench for graph complexes and two-coloured deformation complexes.

The layers, bottom to top: ``graphs`` (terms, orientation signs, canonical
classes), ``operad`` (insertion and reattachment sums), ``complexes``
(brackets, differentials, the mapping cone, splittings, gauge
transformations, quotient ideals), ``linalg`` (exact rational rank,
preimage and capped-cohomology computations), ``polyvect`` (evaluation on
polyvector fields and the twisted products), ``weights`` (Monte Carlo
configuration-space integrals), ``suites`` and ``cli`` (verification
batteries and the command-line front end).
"""

from .complexes import (COMPLEXES, IDEALS, DefElement, GcElement, MacElement,
                        act, bracket_def, bracket_gc, complex_basis,
                        complex_differential, delta_bb, delta_def, delta_oo,
                        delta_ow, delta_prime, gauge_transform, mac_bracket,
                        mac_differential, mc_gamma0, mc_residual,
                        quotient_project, splitting_s, splitting_s_hat,
                        whitening_chain, willwacher_map)
from .graphs import (BI_ORD, BI_SYM, ONE, GraphVector, canonicalize, edge,
                     enumerate_classes, graph, k4, key_str, parse_key,
                     three_star, vector_json)
from .linalg import (BasisIndex, SparseRationalMatrix, cohomology_dim,
                     differential_matrix, is_coboundary, is_cocycle, rank,
                     solve_preimage)
from .operad import insert
from .polyvect import (Polyvector, parse_polyvector, phi, phi_vector,
                       poisson_defect, twist_by_poisson)
from .suites import SUITES, SuiteReport, run_suite
from .weights import GaugeSpec, McSpec, WeightEstimate, sample_configuration, weight

__version__ = "0.1.0"

__all__ = [
    "BI_ORD", "BI_SYM", "ONE", "BasisIndex", "COMPLEXES", "DefElement",
    "GaugeSpec", "GcElement", "GraphVector", "IDEALS", "MacElement", "McSpec",
    "Polyvector", "SUITES", "SparseRationalMatrix", "SuiteReport",
    "WeightEstimate", "act", "bracket_def", "bracket_gc", "canonicalize",
    "cohomology_dim", "complex_basis", "complex_differential", "delta_bb",
    "delta_def", "delta_oo", "delta_ow", "delta_prime",
    "differential_matrix", "edge", "enumerate_classes", "gauge_transform",
    "graph", "insert", "is_coboundary", "is_cocycle", "k4", "key_str",
    "mac_bracket", "mac_differential", "mc_gamma0", "mc_residual",
    "parse_key", "parse_polyvector", "phi", "phi_vector", "poisson_defect",
    "quotient_project", "rank", "run_suite", "sample_configuration",
    "solve_preimage", "splitting_s", "splitting_s_hat", "three_star",
    "twist_by_poisson", "vector_json", "weight", "whitening_chain",
    "willwacher_map",
]
