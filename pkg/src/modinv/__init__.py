"""Exact modular invariant theory of finite matrix groups over finite fields."""

from .catalog import (
    Example47Params,
    build_example47,
    build_monomial,
    build_scalar_rep,
    build_slnq_natural,
    build_trivial,
    build_unitriangular,
)
from .criteria import (
    case_report,
    check_fixed_point_free,
    check_isolated,
    check_prop_b4,
    check_theorem_a,
    gorenstein_example47,
    verify_section2_identities,
)
from .errors import (
    BudgetExceeded,
    InvalidArgument,
    ModinvError,
    NotInSL,
    PreconditionFailed,
    TheoremContradicted,
)
from .gf import GF, Scalar, find_primitive_root_of_unity
from .group import (
    MatGroup,
    dual_group,
    kernel_subgroup_of_W,
    line_stabilizers,
    p_generated_subgroup,
    transvection_subgroup,
)
from .invariants import certify_polynomiality, fixed_space, minimal_generators, module_generators_WSVH
from .linalg import Subspace
from .ring import HPoly, act

__version__ = "0.1.0"
