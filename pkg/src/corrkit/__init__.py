# ruff: noqa: F401
from corrkit._internal.constraints import BudgetExceededError, EnumerationBudget
from corrkit._internal.correlation import (
    CorrelationError,
    LinkInvariant,
    TensorSignature,
    gf_distinguish,
    gf_graph,
    link_invariant,
    link_matching,
    stable_isomorphism_verdict,
    tensor_correlated,
    tensor_match,
)
from corrkit._internal.coxeter import (
    CoxeterElement,
    CoxeterError,
    CoxeterWord,
    descent_sets,
    enumerate_elements,
    equal,
    growth_counts,
    in_J,
    in_L,
    is_reduced,
    normal_form,
)
from corrkit._internal.default import named_graph
from corrkit._internal.graph_product import (
    GammaPrimeConstruction,
    GPElement,
    GraphProduct,
    GraphProductError,
    Syllable,
    construct_gamma_prime,
    coset_action,
    counterexample_construction,
    fg_subgroup_membership,
    gp_multiply,
    gp_normal_form,
    phi_apply,
    verify_phi_homomorphism,
    verify_phi_injective_on_ball,
    verify_projection,
)
from corrkit._internal.graphs import (
    GraphError,
    SimpleGraph,
    VertexSet,
    cone_vertices,
    graphs_isomorphic,
    is_factor,
    is_rigid,
    link,
    link_of_set,
    normalizer_support,
    star,
)
from corrkit._internal.models import (
    CorrelationReport,
    CosetActionReport,
    FactorReport,
    PhiInjectivityReport,
    RigidityReport,
    Verdict,
    VertexGroupKind,
    VertexGroupSpec,
)
from corrkit._internal.qfock import (
    DeformationParams,
    FockError,
    FockOperator,
    FockSpace,
    FockVector,
    Splitting,
    annihilation,
    build_Tn,
    conditional_projection,
    creation,
    decay_profile,
    deformation_profile,
    field_operator,
    phi_map,
    q_inner,
    rotation_deformation,
    second_quantize,
    vacuum_moment,
    wick,
)
from corrkit.groups.subgroup import FiniteIndexSubgroupSpec
