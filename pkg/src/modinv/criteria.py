"""Decision procedures built on the group and invariant machinery.

Covers the transvection / line-stabilizer criterion for polynomial invariant
rings of subgroups of SL(V), the line-stabilizer test for isolated
singularities, fixed-point-freeness, the rewriting of H-invariants of the
ideal W S(V) as polynomials in a chosen vector, the Gorenstein test for the
two-generator family, and a per-submodule data report.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .catalog import Example47Params, example47_matrices, sl_order
from .errors import InvalidArgument, NotInSL, PreconditionFailed, TheoremContradicted
from .gf import GF
from .group import (
    MatGroup,
    is_fixed_point_free,
    kernel_subgroup_of_W,
    line_stabilizers,
    maximal_submodules,
    p_generated_subgroup,
    transvection_subgroup,
)
from .invariants import (
    INCONCLUSIVE,
    NOT_POLYNOMIAL,
    POLYNOMIAL,
    PolynomialityReport,
    certify_polynomiality,
    wsv_invariants,
)
from .linalg import Subspace, complement_basis, identity, inverse, matmul
from .ring import HPoly, act, binomial_mod, ideal_graded_piece

POLYNOMIAL_BY_THM_A = "PolynomialByThmA"
NOT_POLYNOMIAL_BY_THM_A = "NotPolynomialByThmA"


def vector_json(field: GF, v) -> list[list[int]]:
    return [field.coeffs(int(x)) for x in np.asarray(v).ravel()]


@dataclass
class LineReport:
    line: np.ndarray
    stabilizer_order: int
    stabilizer_id: int
    report: PolynomialityReport


def _line_reports(group: MatGroup, dmax: int | None, max_lines: int) -> list[LineReport]:
    stabs = line_stabilizers(group, max_lines)
    by_id: dict[int, PolynomialityReport] = {}
    out = []
    for s in stabs:
        if s.group_id not in by_id:
            by_id[s.group_id] = certify_polynomiality(s.group, dmax)
        out.append(LineReport(s.line, s.group.order, s.group_id, by_id[s.group_id]))
    return out


def _lines_json(field: GF, lines: list[LineReport]) -> list[dict]:
    return [
        {
            "line": vector_json(field, r.line),
            "stabilizer_order": r.stabilizer_order,
            "stabilizer_id": r.stabilizer_id,
            "status": r.report.status,
            "generator_degrees": r.report.generator_degrees,
        }
        for r in lines
    ]


@dataclass
class TheoremAReport:
    in_SL: bool
    cond1_transvection_generated: bool
    cond2_lines: list[LineReport]
    verdict: str
    direct_check: PolynomialityReport | None = None
    field: GF | None = dc_field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "in_SL": self.in_SL,
            "cond1_transvection_generated": self.cond1_transvection_generated,
            "cond2_lines": _lines_json(self.field, self.cond2_lines),
            "verdict": self.verdict,
            "direct_check": self.direct_check.to_dict() if self.direct_check else None,
        }


def check_theorem_a(group: MatGroup, dmax: int | None = None, direct: bool = True,
                    strict: bool = False, max_lines: int = 100_000) -> TheoremAReport:
    """Evaluate both conditions of the SL criterion and derive a verdict.

    The verdict is ``Inconclusive`` for groups outside SL(V); with
    ``strict=True`` such groups raise :class:`NotInSL` carrying the report.
    """
    in_sl = group.in_sl()
    cond1 = transvection_subgroup(group).order == group.order
    lines = _line_reports(group, dmax, max_lines)
    statuses = {r.report.status for r in lines}
    if not in_sl:
        verdict = INCONCLUSIVE
    elif not cond1 or NOT_POLYNOMIAL in statuses:
        verdict = NOT_POLYNOMIAL_BY_THM_A
    elif statuses <= {POLYNOMIAL}:
        verdict = POLYNOMIAL_BY_THM_A
    else:
        verdict = INCONCLUSIVE
    direct_report = certify_polynomiality(group, dmax) if direct else None
    report = TheoremAReport(in_sl, cond1, lines, verdict, direct_report, group.field)
    if direct_report is not None:
        if verdict == POLYNOMIAL_BY_THM_A and direct_report.status == NOT_POLYNOMIAL:
            raise TheoremContradicted("criterion says polynomial, direct check says not")
        if verdict == NOT_POLYNOMIAL_BY_THM_A and direct_report.status == POLYNOMIAL:
            raise TheoremContradicted("criterion says not polynomial, direct check certified")
    if strict and not in_sl:
        raise NotInSL("group is not contained in SL(V)", report=report)
    return report


@dataclass
class IsolatedReport:
    lines: list[LineReport]
    isolated: str
    field: GF | None = dc_field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {"isolated": self.isolated, "lines": _lines_json(self.field, self.lines)}


def check_isolated(group: MatGroup, dmax: int | None = None,
                   max_lines: int = 100_000) -> IsolatedReport:
    """Isolated singularity iff every line stabilizer has polynomial invariants."""
    lines = _line_reports(group, dmax, max_lines)
    statuses = {r.report.status for r in lines}
    if NOT_POLYNOMIAL in statuses:
        verdict = "No"
    elif statuses <= {POLYNOMIAL}:
        verdict = "Yes"
    else:
        verdict = "Inconclusive"
    return IsolatedReport(lines, verdict, group.field)


def check_fixed_point_free(group: MatGroup) -> bool:
    return is_fixed_point_free(group)


# -- rewriting H-invariants of W S(V) --------------------------------------------


@dataclass
class RewriteWitness:
    y: HPoly
    vprime_basis: np.ndarray
    v: np.ndarray
    a: list[HPoly]
    b: list[HPoly]
    certificates: list[list[int]]
    identities_checked: int = 0
    partial_sums_checked: int = 0

    def to_dict(self) -> dict:
        F = self.y.field
        return {
            "y": self.y.serialize(),
            "vprime_basis": [vector_json(F, r) for r in self.vprime_basis],
            "v": vector_json(F, self.v),
            "a": [p.serialize() for p in self.a],
            "b": [p.serialize() for p in self.b],
            "b_degrees": [p.degree for p in self.b],
            "certificates": self.certificates,
            "identities_checked": self.identities_checked,
            "partial_sums_checked": self.partial_sums_checked,
        }


def _zero(field: GF, n: int, degree: int) -> HPoly:
    return HPoly(field, n, degree)


def verify_section2_identities(y: HPoly, vprime: Subspace, v, h: MatGroup,
                               w: Subspace | None = None) -> RewriteWitness:
    """Rewrite ``y = sum_i a_i v^i`` as ``sum_i b_i v^i + a_0`` with H-invariant b_i.

    Every identity along the way is checked exactly: for each generator phi of
    H, with delta = phi - 1, the coefficient of v^{top-i} in delta(y),

        sum_{s<i} phi(a_{top-s}) delta(v)^{i-s} C(top-s, i-s) + delta(a_{top-i}),

    must vanish; every partial sum

        L_k = sum_{i<=k} C(top-i, k-i) a_{top-i} v^{k-i}     (k < top)

    must be H-invariant and lie in W S(V).  Failures raise
    :class:`TheoremContradicted`; unmet hypotheses raise
    :class:`PreconditionFailed`.  ``w`` defaults to the span of all (phi - 1)V.
    """
    F, n = y.field, y.n
    v = np.asarray(v, dtype=np.int64).ravel()
    one = identity(n)
    if w is None:
        moved = [F.sub(phi, one).T for phi in h.gens]
        w = Subspace.span(F, np.concatenate(moved) if moved else np.zeros((0, n), dtype=np.int64), n)
    lin_w = [HPoly.linear(F, r) for r in w.basis]

    # -- hypotheses
    if vprime.ambient_dim != n or w.ambient_dim != n or len(v) != n:
        raise PreconditionFailed("V', W and v must live in V")
    if vprime.dim != n - 1:
        raise PreconditionFailed("V' must have codimension 1")
    if not vprime.contains(w):
        raise PreconditionFailed("W must be contained in V'")
    if vprime.contains(v.reshape(1, -1)):
        raise PreconditionFailed("v must lie outside V' (Fv + V' = V)")
    for phi in h.gens:
        if not w.contains(F.sub(phi, one).T):
            raise PreconditionFailed("H must move V into W")
    if not ideal_graded_piece(lin_w, y.degree, field=F, n=n).contains(y.to_vector().reshape(1, -1)):
        raise PreconditionFailed("y must lie in the ideal W S(V)")
    for phi in h.gens:
        if act(F, phi, y) != y:
            raise PreconditionFailed("y must be H-invariant")

    # -- coordinates (basis of V', then v); variable n-1 is v
    basis = np.vstack([vprime.basis, v]).T
    binv = inverse(F, basis)
    y_new = act(F, binv, y)
    phis = [matmul(F, matmul(F, binv, phi), basis) for phi in h.gens]
    w_new = [HPoly.linear(F, matmul(F, binv, r.reshape(-1, 1)).ravel()) for r in w.basis]
    parts = y_new.split_by_variable(n - 1)
    top = max(parts) if parts else 0
    D = y.degree
    a = [parts.get(i, _zero(F, n, D - i)) for i in range(top + 1)]
    for ai in a:
        if not ideal_graded_piece(w_new, ai.degree, field=F, n=n).contains(
                ai.to_vector().reshape(1, -1)):
            raise PreconditionFailed("coefficients a_i must lie in W S(V')")
    vpoly = HPoly.variable(F, n, n - 1)

    # -- vanishing coefficients of delta(y)
    checked = 0
    for phi in phis:
        dv = act(F, phi, vpoly) - vpoly
        phi_a = [act(F, phi, ai) for ai in a]
        delta_a = [pa - ai for pa, ai in zip(phi_a, a)]
        for i in range(top + 1):
            total = delta_a[top - i]
            for s in range(i):
                c = binomial_mod(F, top - s, i - s)
                if c:
                    total = total + (phi_a[top - s] * dv ** (i - s)).scale(c)
            if not total.is_zero():
                raise TheoremContradicted(f"coefficient of v^{top - i} in delta(y) is {total!r}")
            checked += 1

    # -- partial sums L_k, k < top
    def partial_sum(k: int) -> HPoly:
        out = _zero(F, n, D - top + k)
        for i in range(k + 1):
            c = binomial_mod(F, top - i, k - i)
            if c:
                out = out + (a[top - i] * vpoly ** (k - i)).scale(c)
        return out

    psums = {}
    for k in range(top):
        lk = partial_sum(k)
        for phi in phis:
            if act(F, phi, lk) != lk:
                raise TheoremContradicted(f"partial sum L_{k} is not H-invariant")
        if not ideal_graded_piece(w_new, lk.degree, field=F, n=n).contains(
                lk.to_vector().reshape(1, -1)):
            raise TheoremContradicted(f"partial sum L_{k} is not in W S(V)")
        psums[k] = lk

    # -- iterative elimination: b_t = c_t L_{top-t}
    coef = {j: 1 for j in range(1, top + 1)}
    b_new: list[HPoly] = []
    for t in range(1, top + 1):
        ct = coef[t]
        b_new.append(psums[top - t].scale(ct))
        for j in range(t + 1, top + 1):
            coef[j] = F.s_add(coef[j], F.s_neg(F.s_mul(ct, binomial_mod(F, j, j - t))))
        coef[t] = 0
    rebuilt = a[0]
    for t, bt in enumerate(b_new, start=1):
        rebuilt = rebuilt + bt * vpoly ** t
    if rebuilt != y_new:
        raise TheoremContradicted("rewritten form does not reassemble y")

    # -- back to the original coordinates, with membership certificates
    a_old = [act(F, basis, ai) for ai in a]
    b_old = [act(F, basis, bt) for bt in b_new]
    v_lin = HPoly.linear(F, v)
    rebuilt = a_old[0]
    for t, bt in enumerate(b_old, start=1):
        rebuilt = rebuilt + bt * v_lin ** t
    if rebuilt != y:
        raise TheoremContradicted("rewritten form does not reassemble y in original coordinates")
    certs = []
    for t, bt in enumerate(b_old, start=1):
        if bt.degree >= D and not bt.is_zero():
            raise TheoremContradicted("deg b_i must be below deg y")
        space = wsv_invariants(h, w, bt.degree)
        if bt.is_zero():
            certs.append([0] * space.dim)
            continue
        try:
            coords = space.coordinates(bt.to_vector().reshape(1, -1))[0]
        except InvalidArgument as exc:
            raise TheoremContradicted(f"b_{t} is not in (W S(V))^H") from exc
        certs.append([int(c) for c in coords])
    return RewriteWitness(y, vprime.basis, v, a_old, b_old, certs, checked, len(psums) * len(phis))


# -- the two-generator family -------------------------------------------------------


def example47_gorenstein_data(params: Example47Params) -> dict:
    """Scalars by which g acts on v^p - w_1^{p-1} v and on each w_r."""
    params.validate()
    F, p, n, a = params.field, params.p, params.n, params.a
    g, h = example47_matrices(params)
    dim = n + 1
    v = HPoly.variable(F, dim, 0)
    w1 = HPoly.variable(F, dim, dim - 1)
    top = v ** p - w1 ** (p - 1) * v
    gens = [top] + [HPoly.variable(F, dim, i) for i in range(1, dim)]
    expected = [a ** p] + [a ** (-n) if i == dim - 2 else a for i in range(1, dim)]
    scalars = []
    for f, e in zip(gens, expected):
        if act(F, h, f) != f:
            raise TheoremContradicted(f"{f!r} is not fixed by h")
        image = act(F, g, f)
        m, c0 = next(iter(f.sorted_terms()))
        c = F.s_mul(image.coefficient(m), F.s_inv(c0))
        if image != f.scale(c) or c != e.code:
            raise TheoremContradicted(f"g does not scale {f!r} by {e!r}")
        scalars.append(c)
    det = 1
    for c in scalars:
        det = F.s_mul(det, c)
    return {"scalars": scalars, "det": det, "a_pow_p_minus_1": (a ** (p - 1)).code}


def gorenstein_example47(p: int, l: int, n: int, k: int = 1, a=None) -> bool:
    """Whether the determinant of g on the generators of S(V)^H is 1."""
    params = Example47Params.make(p, l, n, k=k, a=a)
    data = example47_gorenstein_data(params)
    result = data["det"] == 1
    if result != (data["a_pow_p_minus_1"] == 1):
        raise TheoremContradicted("det_M g = 1 disagrees with a^(p-1) = 1")
    if result != ((p - 1) % l == 0):
        raise TheoremContradicted("det_M g = 1 disagrees with l | p - 1")
    return result


# -- per-submodule data -------------------------------------------------------------


def so4_minus_order(q: int) -> int:
    """|O_4^-(q)| = 2 q^2 (q^4 - 1); for even q this is the group generated by transvections."""
    return 2 * q**2 * (q**4 - 1)


def _prime_powers(p: int, bound: int):
    q = p
    while q <= bound:
        yield q
        q *= p


def consistent_cases(m: int, order: int, p: int) -> list[int]:
    cases = []
    if m == 1:
        cases.append(1)
    bound = max(order, p)
    if m == 2 and (any(sl_order(2, q) == order for q in _prime_powers(p, bound))
                   or (order == 120 and p == 3)):
        cases.append(2)
    if m >= 3 and any(sl_order(m, q) == order for q in _prime_powers(p, bound)):
        cases.append(3)
    if m == 3 and order == 1080:
        cases.append(4)
    if m == 4 and p == 2 and any(so4_minus_order(q) == order for q in _prime_powers(2, bound)):
        cases.append(5)
    return cases


def induced_quotient_group(group: MatGroup, w: Subspace) -> MatGroup:
    """Action on V/W in the basis of standard vectors off W's pivot columns."""
    F = group.field
    comp = complement_basis(w)
    free = [int(np.flatnonzero(r)[0]) for r in comp]
    gens = []
    for g in group.gens:
        images = matmul(F, g, comp.T).T
        gens.append(w.reduce(images)[:, free].T.copy())
    return MatGroup(F, gens, n=len(free), budget=group.budget, name="G/H on V/W")


def case_report(group: MatGroup, dmax: int | None = None, certify: bool = True) -> dict:
    """Per maximal submodule W: dim V/W, |H|, |G/H| and the order-consistent cases."""
    F = group.field
    entries = []
    for w in maximal_submodules(group):
        h = kernel_subgroup_of_W(group, w)
        quotient = induced_quotient_group(group, w)
        if quotient.order * h.order != group.order:
            raise TheoremContradicted("|G/H| differs from the order of the induced action on V/W")
        m = group.n - w.dim
        entries.append({
            "W": [vector_json(F, r) for r in w.basis],
            "dim_V_mod_W": m,
            "H_order": h.order,
            "quotient_order": quotient.order,
            "quotient_transvection_generated":
                transvection_subgroup(quotient).order == quotient.order,
            "consistent_cases": consistent_cases(m, quotient.order, F.p),
        })
    out = {
        "group_order": group.order,
        "in_SL": group.in_sl(),
        "maximal_submodules": entries,
        "case6": "not assessed",
    }
    if certify:
        out["polynomiality"] = certify_polynomiality(group, dmax).status
    return out


def check_prop_b4(group: MatGroup, dmax: int | None = None) -> bool:
    """T(G) equals the subgroup generated by p-elements, and p does not divide |G/T(G)|."""
    if check_isolated(group, dmax).isolated != "Yes":
        raise PreconditionFailed("S(V)^G must be an isolated singularity")
    t = transvection_subgroup(group)
    gen_p = p_generated_subgroup(group)
    return t.same_elements(gen_p) and (group.order // t.order) % group.field.p != 0
