import numpy as np
import pytest

from modinv.catalog import (
    Example47Params,
    build_example47,
    build_scalar_rep,
    build_slnq_natural,
    build_trivial,
    build_unitriangular,
    example47_matrices,
    sl_order,
)
from modinv.criteria import (
    NOT_POLYNOMIAL_BY_THM_A,
    POLYNOMIAL_BY_THM_A,
    case_report,
    check_fixed_point_free,
    check_isolated,
    check_prop_b4,
    check_theorem_a,
    consistent_cases,
    example47_gorenstein_data,
    gorenstein_example47,
    induced_quotient_group,
    so4_minus_order,
    verify_section2_identities,
)
from modinv.errors import InvalidParameters, NotInSL, PreconditionFailed
from modinv.gf import GF
from modinv.group import MatGroup, kernel_subgroup_of_W, pseudo_reflections, transvection_subgroup
from modinv.invariants import INCONCLUSIVE, NOT_POLYNOMIAL, POLYNOMIAL, wsv_invariants
from modinv.linalg import Subspace, identity
from modinv.ring import HPoly, act


def isolated_no_fixture():
    """<diag(1,2,2), 1 + E_12> over F_3: the stabilizer of e_1^* is <diag(1,2,2)>."""
    return MatGroup(GF(3), [np.diag([1, 2, 2]), np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])])


def ex47(p=3, l=2, n=3, k=1):
    params = Example47Params.make(p, l, n, k=k)
    return params, build_example47(params)


# -- Theorem A -------------------------------------------------------------------------


def test_theorem_a_sl22():
    r = check_theorem_a(build_slnq_natural(2, 2))
    assert r.in_SL and r.cond1_transvection_generated
    assert r.verdict == POLYNOMIAL_BY_THM_A
    assert r.direct_check.status == POLYNOMIAL and r.direct_check.generator_degrees == [2, 3]


def test_theorem_a_example47():
    _, G = ex47()
    r = check_theorem_a(G)
    assert r.in_SL and not r.cond1_transvection_generated
    assert r.verdict == NOT_POLYNOMIAL_BY_THM_A
    assert all(line.report.status == POLYNOMIAL for line in r.cond2_lines)
    assert r.direct_check.status == NOT_POLYNOMIAL


def test_theorem_a_trivial_group():
    r = check_theorem_a(build_trivial(GF(3), 2))
    assert r.verdict == POLYNOMIAL_BY_THM_A
    assert r.direct_check.generator_degrees == [1, 1]


def test_theorem_a_non_sl_is_inconclusive_or_raises():
    G = build_scalar_rep(GF(5), [2, 1])
    r = check_theorem_a(G)
    assert not r.in_SL and r.verdict == INCONCLUSIVE
    with pytest.raises(NotInSL) as err:
        check_theorem_a(G, strict=True)
    assert err.value.report.verdict == INCONCLUSIVE


@pytest.mark.parametrize("G", [build_slnq_natural(2, 3), build_unitriangular(3, GF(3)),
                               build_scalar_rep(GF(3), [2, 2]),
                               build_example47(Example47Params.make(7, 3, 2))],
                         ids=["sl23", "u3_3", "minus_i", "ex47_732"])
def test_theorem_a_agrees_with_direct_check(G):
    r = check_theorem_a(G)
    if r.direct_check.status == POLYNOMIAL:
        assert r.verdict == POLYNOMIAL_BY_THM_A
    if r.direct_check.status == NOT_POLYNOMIAL:
        assert r.verdict == NOT_POLYNOMIAL_BY_THM_A
    if r.verdict == POLYNOMIAL_BY_THM_A:
        assert r.cond1_transvection_generated
        assert all(line.report.status == POLYNOMIAL for line in r.cond2_lines)


def test_stabilizer_reports_are_shared():
    r = check_theorem_a(build_slnq_natural(2, 3))
    by_id = {}
    for line in r.cond2_lines:
        by_id.setdefault(line.stabilizer_id, line.report)
        assert by_id[line.stabilizer_id] is line.report


# -- isolated singularities and fixed points ---------------------------------------------


def test_isolated_examples():
    assert check_isolated(ex47()[1]).isolated == "Yes"
    assert check_isolated(build_scalar_rep(GF(3), [2, 2])).isolated == "Yes"
    G = isolated_no_fixture()
    assert transvection_subgroup(G).order == 3
    r = check_isolated(G)
    assert r.isolated == "No"
    bad = [line for line in r.lines if line.report.status == NOT_POLYNOMIAL]
    assert any(line.stabilizer_order == 2 for line in bad)


def test_isolated_inconclusive_with_tiny_dmax():
    r = check_isolated(build_slnq_natural(2, 3), dmax=1)
    # lines with trivial stabilizer certify at degree 1; the others cannot
    assert r.isolated == "Inconclusive"


def test_fixed_point_free_examples():
    assert check_fixed_point_free(build_scalar_rep(GF(3), [2, 2]))
    assert not check_fixed_point_free(ex47()[1])
    assert not check_fixed_point_free(build_slnq_natural(2, 2))


@pytest.mark.parametrize("G", [build_scalar_rep(GF(3), [2, 2]), build_scalar_rep(GF(7), [2, 4]),
                               build_scalar_rep(GF(5), [2, 2, 2, 2])],
                         ids=["minus_i", "diag7", "i4"])
def test_fixed_point_free_without_reflections_is_isolated(G):
    assert check_fixed_point_free(G) and not pseudo_reflections(G)
    assert check_isolated(G).isolated == "Yes"


# -- Prop B4 ---------------------------------------------------------------------------


@pytest.mark.parametrize("G", [ex47()[1], build_slnq_natural(2, 2),
                               build_scalar_rep(GF(3), [2, 2])],
                         ids=["ex47", "sl22", "minus_i"])
def test_prop_b4_examples(G):
    assert check_prop_b4(G)


def test_prop_b4_precondition():
    with pytest.raises(PreconditionFailed):
        check_prop_b4(isolated_no_fixture())


# -- rewriting of H-invariants in W S(V) -----------------------------------------------


def _fixture_47():
    params, G = ex47()
    F = params.field
    W = Subspace.span(F, identity(4)[1:], 4)
    H = kernel_subgroup_of_W(G, W)
    return F, W, H


def test_section2_example47_instance():
    F, W, H = _fixture_47()
    v, w1 = HPoly.variable(F, 4, 0), HPoly.variable(F, 4, 3)
    y = w1 * (v ** 3 - w1 ** 2 * v)
    wit = verify_section2_identities(y, W, [1, 0, 0, 0], H, W)
    assert len(wit.b) == 3
    rebuilt = wit.a[0]
    for i, b in enumerate(wit.b, start=1):
        assert b.degree < y.degree
        rebuilt = rebuilt + b * v ** i
    assert rebuilt == y
    for b, cert in zip(wit.b, wit.certificates):
        space = wsv_invariants(H, W, b.degree)
        vec = np.zeros(space.ambient_dim, dtype=np.int64)
        for c, row in zip(cert, space.basis):
            vec = F.add(vec, F.mul(c, row))
        assert np.array_equal(vec, b.to_vector())
    # default W is the span of (phi - 1)V, here F w_1
    wit2 = verify_section2_identities(y, W, [1, 0, 0, 0], H)
    assert [b.serialize() for b in wit2.b] == [b.serialize() for b in wit.b]


def test_section2_no_v_dependence():
    F, W, H = _fixture_47()
    w1, w2 = HPoly.variable(F, 4, 3), HPoly.variable(F, 4, 2)
    y = w1 * w2 ** 2
    wit = verify_section2_identities(y, W, [1, 0, 0, 0], H, W)
    assert all(b.is_zero() for b in wit.b) and wit.a[0] == y


def test_section2_trivial_group_partial_sums():
    F = GF(3)
    H = build_trivial(F, 3)
    W = Subspace.span(F, [[1, 0, 0], [0, 1, 0]], 3)
    x, y_, v = (HPoly.variable(F, 3, i) for i in range(3))
    y = x * v ** 3 + y_ ** 2 * v ** 2 + x * y_ * x * v + x ** 4
    wit = verify_section2_identities(y, W, [0, 0, 1], H, W)
    # b_1 is the top partial sum L_{top-1}
    top = 3
    a = wit.a
    L = HPoly(F, 3, y.degree - 1)
    from math import comb
    for i in range(top):
        L = L + (a[top - i] * v ** (top - 1 - i)).scale(comb(top - i, top - 1 - i) % 3)
    assert wit.b[0] == L


def test_section2_preconditions():
    F, W, H = _fixture_47()
    v, w1 = HPoly.variable(F, 4, 0), HPoly.variable(F, 4, 3)
    with pytest.raises(PreconditionFailed):  # v lies in V'
        verify_section2_identities(w1 * w1, W, [0, 1, 0, 0], H, W)
    with pytest.raises(PreconditionFailed):  # v^2 is not in W S(V)
        verify_section2_identities(v * v, W, [1, 0, 0, 0], H, W)
    with pytest.raises(PreconditionFailed):  # w_1 v is not H-invariant
        verify_section2_identities(w1 * v, W, [1, 0, 0, 0], H, W)
    with pytest.raises(PreconditionFailed):  # V' has the wrong dimension
        verify_section2_identities(w1, Subspace.span(F, [[0, 0, 0, 1]], 4), [1, 0, 0, 0], H, W)


def test_section2_random_unitriangular():
    F = GF(3)
    U = build_unitriangular(3, F)
    W = Subspace.span(F, [[1, 0, 0]], 3)
    H = kernel_subgroup_of_W(U, W)
    rng = np.random.default_rng(11)
    for d in range(2, 6):
        M = wsv_invariants(H, W, d)
        for _ in range(3):
            coeffs = rng.integers(0, 3, size=M.dim)
            vec = np.zeros(M.ambient_dim, dtype=np.int64)
            for c, row in zip(coeffs, M.basis):
                vec = F.add(vec, F.mul(int(c), row))
            y = HPoly.from_vector(F, 3, d, vec)
            if y.is_zero():
                continue
            for vprime, v in [([[1, 0, 0], [0, 1, 0]], [0, 0, 1]),
                              ([[1, 0, 0], [0, 1, 1]], [0, 1, 2])]:
                verify_section2_identities(y, Subspace.span(F, vprime, 3), v, H, W)


# -- Gorenstein ------------------------------------------------------------------------


@pytest.mark.parametrize("p,l,n,k,expected", [(3, 2, 3, 1, True), (7, 3, 2, 1, True),
                                              (3, 4, 3, 2, False), (5, 4, 3, 1, True),
                                              (5, 3, 2, 2, False), (2, 3, 2, 2, False)])
def test_gorenstein(p, l, n, k, expected):
    assert gorenstein_example47(p, l, n, k=k) is expected
    assert expected == ((p - 1) % l == 0)


def test_gorenstein_scalars_match_action():
    params = Example47Params.make(3, 4, 3, k=2)
    F, a = params.field, params.a
    g, _ = example47_matrices(params)
    data = example47_gorenstein_data(params)
    assert data["scalars"][0] == (a ** 3).code
    assert data["scalars"][2] == (a ** -3).code
    det = 1
    for c in data["scalars"]:
        det = F.s_mul(det, c)
    assert det == data["det"] == (a ** 2).code


def test_gorenstein_invalid():
    with pytest.raises(InvalidParameters):
        gorenstein_example47(3, 4, 3)  # no primitive 4th root in F_3
    with pytest.raises(InvalidParameters):
        gorenstein_example47(7, 3, 3)  # (n, l) != 1


# -- case report -----------------------------------------------------------------------


def test_case_report_example47():
    params, G = ex47()
    rep = case_report(G)
    assert rep["group_order"] == 6 and rep["case6"] == "not assessed"
    W = [[[0], [1], [0], [0]], [[0], [0], [1], [0]], [[0], [0], [0], [1]]]
    entry = [e for e in rep["maximal_submodules"] if e["W"] == W][0]
    assert entry["dim_V_mod_W"] == 1 and entry["consistent_cases"] == [1]
    assert entry["H_order"] == 3 and entry["quotient_order"] == 2


def test_case_report_sl22():
    rep = case_report(build_slnq_natural(2, 2))
    (entry,) = rep["maximal_submodules"]
    assert entry["W"] == [] and entry["dim_V_mod_W"] == 2
    assert entry["quotient_order"] == 6 and 2 in entry["consistent_cases"]
    assert entry["quotient_transvection_generated"]


def test_case_report_trivial_group():
    rep = case_report(build_trivial(GF(3), 2))
    assert len(rep["maximal_submodules"]) == 4
    for e in rep["maximal_submodules"]:
        assert e["quotient_order"] == 1 and e["consistent_cases"] == [1]


def test_induced_quotient_order():
    U = build_unitriangular(3, GF(3))
    W = Subspace.span(GF(3), [[1, 0, 0]], 3)
    Q = induced_quotient_group(U, W)
    assert Q.order * kernel_subgroup_of_W(U, W).order == U.order


def test_consistent_cases_orders():
    assert consistent_cases(2, sl_order(2, 9), 3) == [2]
    assert consistent_cases(2, 120, 3) == [2]
    assert consistent_cases(3, 1080, 2) == [4]
    assert consistent_cases(3, sl_order(3, 4), 2) == [3]
    assert so4_minus_order(2) == 120
    assert 5 in consistent_cases(4, so4_minus_order(4), 2)
    assert consistent_cases(2, 7, 3) == []
