"""Exact combinatorics of partially ordered partitions and fixed-locus graphs.

The package has three layers:

* ``partitions`` / ``exactalg``: the index families and the exact arithmetic
  (rationals, Laurent polynomials in the equivariant weight, truncated
  nilpotent classes, indexed matrices);
* ``kernels`` / ``relmatrix``: scalar kernels and the relation matrices built
  from them, with machine verification of their triangularity, invertibility,
  transpose, and product-factorization properties;
* ``locgraph``: bipartite fixed-locus graphs with their multiplicities,
  symmetry orders, reciprocal Euler factors, and dimension bookkeeping.

Everything is exact: no floats anywhere.
"""

from .errors import (
    DivisionByZero,
    EnumerationBoundExceeded,
    IncomparableShapes,
    IncompatibleIndices,
    InvalidPartition,
    InvalidRange,
    InvalidShape,
    InvalidSubpartition,
    InvalidVertex,
    PreconditionViolated,
    TautcombError,
)
from .exactalg import (
    FormalClass,
    IndexedMatrix,
    Laurent,
    Rational,
    formal_geom_expand,
    rat,
    rat_from_str,
    rat_pow,
    rat_to_str,
)
from .kernels import (
    alternating_power_sum,
    alternating_reciprocal_sum,
    binom_identities,
    closed_sum_alpha,
    closed_sum_beta,
    closed_sum_beta_prime,
    closed_sum_gamma,
    closed_sum_value,
    eta_sign_scale,
    eta_weight,
    principal_prefactor,
    principal_prefactor_rows,
    s_kernel,
    t_kernel,
)
from .locgraph import (
    Edge,
    GraphContribution,
    LocalizationGraph,
    Refinement,
    RelativeShape,
    Vertex,
    aut_group_order,
    canonical_form,
    classify_case,
    classify_principal,
    contribution,
    degenerate_over,
    enumerate_graphs,
    euler_inverse,
    expected_dimension,
    graph_automorphism_count,
    hurwitz_condition,
    multiplicity,
    omega_dimension_check,
    relabel_graph,
    validate_graph,
    vdim_parameterized,
    vdim_unparameterized,
    vertex_term,
)
from .partitions import (
    INF,
    MultiPOP,
    POP,
    aut_order,
    canonical_marking_sets,
    canonicalize,
    compare_pop,
    compare_pop_multi,
    double_prime,
    enumerate_pop,
    enumerate_pop_multi,
    is_inf,
    lower_one_step,
    pop_sort_key,
    stabilization_cutoff,
    subpartition_ge,
    triple_prime,
)
from .relmatrix import (
    build_A,
    build_A_multi,
    build_B,
    build_B_multi,
    build_M,
    build_M_multi,
    in_lower_set,
    lower_set,
    verify_C,
    verify_kronecker,
    verify_M_invertible,
    verify_M_transpose_scaling,
    verify_xi_closure,
)
from .verify import (
    VerificationReport,
    check_doubly_degenerate,
    check_worked_instance,
    oracle_enumerate_graphs,
    reports_to_json,
    sweep_closed_sums,
    sweep_graph_oracle,
    sweep_hurwitz,
    sweep_invertible,
    sweep_kronecker,
    sweep_multiply_back,
    sweep_omega_dimension,
    sweep_pop_properties,
    sweep_relabel_invariance,
    sweep_sums_suite,
    sweep_transpose_scaling,
    sweep_triangular,
    verify_all,
)

__version__ = "0.1.0"
