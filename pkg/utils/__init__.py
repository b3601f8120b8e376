"""Utilities module."""
from .graph_core import (
    Graph,
    Potential,
    Hamiltonian,
    build_hamiltonian,
    find_twins,
    is_twin_pair,
    cartesian_product,
    combine_potentials,
    shift_potential,
    path_graph,
    cycle_graph,
    complete_graph,
    star_graph,
    remove_edge,
    attach_twins,
)
from .spectral import (
    SpectralDecomposition,
    PathHalfSpectra,
    decompose,
    jacobi_eigh,
    eigenvalue_clusters,
    eigenvalue_derivative,
    eigenvalue_derivatives,
    eigenvalue_derivative_charpoly,
    char_poly_path,
    half_space_matrices,
    path_half_spectra,
    path_factorization_residual,
)
from .evolution import (
    FidelityRecord,
    propagator,
    fidelity,
    fidelity_trace,
    evolve_state,
    max_fidelity,
    trace_frame,
)
from .certifier import (
    CertificateStatus,
    RefusalReason,
    PSTCertificate,
    cospectral_classify,
    rational_reconstruct,
    certify,
)
from .paths import P3Instance, ScanReport, p3_instance, p3_family, p3_graph, qt_product_check, path_scan
from .twin_synthesis import (
    RatioTarget,
    SynthesisResult,
    initial_potential,
    ratio_map,
    ratio_jacobian,
    select_targets,
    newton_solve,
    synthesize,
)
from .products import ProductInstance, product_pst, kron_check, product_spectrum_residual
from .graph_io import load_graph_json, graph_to_dict, dump_json, write_trace_csv

__all__ = [
    "Graph",
    "Potential",
    "Hamiltonian",
    "build_hamiltonian",
    "find_twins",
    "is_twin_pair",
    "cartesian_product",
    "combine_potentials",
    "shift_potential",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "remove_edge",
    "attach_twins",
    "SpectralDecomposition",
    "PathHalfSpectra",
    "decompose",
    "jacobi_eigh",
    "eigenvalue_clusters",
    "eigenvalue_derivative",
    "eigenvalue_derivatives",
    "eigenvalue_derivative_charpoly",
    "char_poly_path",
    "half_space_matrices",
    "path_half_spectra",
    "path_factorization_residual",
    "FidelityRecord",
    "propagator",
    "fidelity",
    "fidelity_trace",
    "evolve_state",
    "max_fidelity",
    "trace_frame",
    "CertificateStatus",
    "RefusalReason",
    "PSTCertificate",
    "cospectral_classify",
    "rational_reconstruct",
    "certify",
    "P3Instance",
    "ScanReport",
    "p3_instance",
    "p3_family",
    "p3_graph",
    "qt_product_check",
    "path_scan",
    "RatioTarget",
    "SynthesisResult",
    "initial_potential",
    "ratio_map",
    "ratio_jacobian",
    "select_targets",
    "newton_solve",
    "synthesize",
    "ProductInstance",
    "product_pst",
    "kron_check",
    "product_spectrum_residual",
    "load_graph_json",
    "graph_to_dict",
    "dump_json",
    "write_trace_csv",
]
