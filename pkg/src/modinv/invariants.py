"""Invariant rings degree by degree, and polynomiality certificates.

A certificate of polynomiality is a set of ``n = dim V`` homogeneous
invariants forming a homogeneous system of parameters whose degrees multiply
to ``|G|``.  Non-polynomiality is certified either by the pseudo-reflection
necessary condition or by exhibiting more than ``n`` minimal generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import prod

import numpy as np

from .errors import InvalidArgument, TheoremContradicted
from .group import MatGroup, kernel_subgroup_of_W, pseudo_reflection_subgroup
from .linalg import Subspace, identity, kernel, matmul, rref
from .ring import (
    HPoly,
    group_sym_power,
    ideal_graded_piece,
    multiply_rows,
    polys_of,
    sym_dim,
)

DMAX_CAP = 30

POLYNOMIAL = "PolynomialCertified"
NOT_POLYNOMIAL = "NotPolynomialCertified"
INCONCLUSIVE = "Inconclusive"


def default_dmax(group: MatGroup) -> int:
    order = group.order
    return max(1, min(DMAX_CAP, max(order, group.n * (order - 1))))


def fixed_subspace(group: MatGroup, d: int) -> Subspace:
    """Coordinates (monomial basis of S^d) of the degree-d invariants."""
    cache = group._cache.setdefault("fixed", {})
    if d in cache:
        return cache[d]
    F = group.field
    N = sym_dim(group.n, d)
    basis = identity(N)
    for rho in group_sym_power(group, d):
        if basis.shape[0] == 0:
            break
        moved = F.sub(rho, identity(N))
        restricted = matmul(F, moved, basis.T)
        y = kernel(F, restricted).basis
        basis = matmul(F, y, basis) if y.shape[0] else np.zeros((0, N), dtype=np.int64)
    space = Subspace.span(F, basis, N)
    cache[d] = space
    return space


def fixed_space(group: MatGroup, d: int) -> list[HPoly]:
    """Echelonised basis of S^d(V)^G."""
    return polys_of(fixed_subspace(group, d), group.n, d)


@dataclass
class GradedBasis:
    pieces: dict[int, list[HPoly]]
    dmax: int

    def dims(self) -> list[int]:
        return [len(self.pieces.get(d, [])) for d in range(self.dmax + 1)]


def invariant_basis(group: MatGroup, dmax: int) -> GradedBasis:
    pieces = {0: [HPoly.constant(group.field, group.n)]}
    for d in range(1, dmax + 1):
        pieces[d] = fixed_space(group, d)
    return GradedBasis(pieces, dmax)


def _new_generators(decomposable: Subspace, space: Subspace) -> np.ndarray:
    """Echelon complement of ``decomposable`` inside ``space``."""
    reduced = decomposable.reduce(space.basis)
    red, _ = rref(space.field, reduced)
    return red


def minimal_generators(group: MatGroup, dmax: int, stop_after: int | None = None):
    """Minimal homogeneous algebra generators of S(V)^G up to degree ``dmax``.

    Returns a list of ``(degree, HPoly)``.  Decomposables at degree d are the
    products of earlier generators with invariants of complementary degree.
    If ``stop_after`` is given, stops as soon as that many are found.
    """
    if dmax < 1:
        raise InvalidArgument("dmax must be >= 1")
    F, n = group.field, group.n
    state = group._cache.setdefault("mingens", {"upto": 0, "gens": []})
    gens: list[tuple[int, HPoly]] = state["gens"]
    for d in range(state["upto"] + 1, dmax + 1):
        if stop_after is not None and len(gens) >= stop_after:
            return [g for g in gens if g[0] <= dmax]
        space = fixed_subspace(group, d)
        if space.dim:
            blocks = []
            for deg, g in gens:
                comp = fixed_subspace(group, d - deg)
                if comp.dim:
                    blocks.append(multiply_rows(F, n, g, comp.basis, d - deg))
            N = sym_dim(n, d)
            dec = Subspace.span(F, np.concatenate(blocks), N) if blocks else Subspace.zero(F, N)
            for row in _new_generators(dec, space):
                gens.append((d, HPoly.from_vector(F, n, d, row)))
        state["upto"] = d
    return [g for g in gens if g[0] <= dmax]


def quotient_dims(polys, upto: int) -> list[int]:
    """dim_F of the degree-e piece of S(V)/(polys) for e = 0..upto."""
    F, n = polys[0].field, polys[0].n
    return [sym_dim(n, e) - ideal_graded_piece(polys, e).dim for e in range(upto + 1)]


def hsop_check(polys) -> bool:
    """Whether n homogeneous polynomials in n variables form an hsop.

    The quotient is finite-dimensional iff some graded piece vanishes, and for
    an hsop it vanishes by degree ``sum(deg f_i - 1) + 1``.
    """
    polys = list(polys)
    if not polys:
        raise InvalidArgument("hsop_check needs n = dim V polynomials")
    n = polys[0].n
    if len(polys) != n:
        raise InvalidArgument(f"hsop_check needs exactly {n} polynomials, got {len(polys)}")
    if any(f.is_zero() or f.degree < 1 for f in polys):
        raise InvalidArgument("hsop members must be nonzero of positive degree")
    cutoff = sum(f.degree - 1 for f in polys) + 1
    for e in range(cutoff + 1):
        if sym_dim(n, e) == ideal_graded_piece(polys, e).dim:
            return True
    return False


def hilbert_coefficients(degrees, dmax: int) -> list[int]:
    """Coefficients of prod 1/(1 - t^d_i) up to t^dmax."""
    coeffs = [1] + [0] * dmax
    for d in degrees:
        for e in range(d, dmax + 1):
            coeffs[e] += coeffs[e - d]
    return coeffs


@dataclass
class PolynomialityReport:
    status: str
    generator_degrees: list[int]
    evidence: str
    dmax: int
    group_order: int = 0
    generators: list[HPoly] = dc_field(default_factory=list, repr=False)

    def to_dict(self, with_generators: bool = False) -> dict:
        out = {
            "status": self.status,
            "generator_degrees": list(self.generator_degrees),
            "evidence": self.evidence,
            "dmax": self.dmax,
            "group_order": self.group_order,
        }
        if with_generators:
            out["generators"] = [g.serialize() for g in self.generators]
        return out


def check_hilbert_consistency(group: MatGroup, degrees, dmax: int) -> None:
    expected = hilbert_coefficients(degrees, dmax)
    for d in range(1, dmax + 1):
        got = fixed_subspace(group, d).dim
        if got != expected[d]:
            raise TheoremContradicted(
                f"Hilbert mismatch at degree {d}: dim S^d(V)^G = {got}, series predicts {expected[d]}"
            )


def certify_polynomiality(group: MatGroup, dmax: int | None = None) -> PolynomialityReport:
    """Decide whether S(V)^G is a polynomial ring, with evidence.

    The pseudo-reflection test runs first; then minimal generators are
    computed to ``dmax``.  ``Inconclusive`` means ``dmax`` was too small.
    """
    if dmax is None:
        dmax = default_dmax(group)
    n, order = group.n, group.order
    if pseudo_reflection_subgroup(group).order != order:
        return PolynomialityReport(NOT_POLYNOMIAL, [], "SerreNecessityViolated", dmax, order)
    gens = minimal_generators(group, dmax, stop_after=n + 1)
    degrees = sorted(d for d, _ in gens)
    polys = [g for _, g in gens]
    if len(gens) > n:
        return PolynomialityReport(NOT_POLYNOMIAL, degrees, "TooManyMinimalGenerators", dmax,
                                   order, polys)
    if len(gens) == n and prod(degrees) == order and hsop_check(polys):
        check_hilbert_consistency(group, degrees, dmax)
        return PolynomialityReport(POLYNOMIAL, degrees, "HsopDegreeProduct", dmax, order, polys)
    return PolynomialityReport(INCONCLUSIVE, degrees, "BudgetExhausted", dmax, order, polys)


@dataclass
class ModuleGenerator:
    degree: int
    poly: HPoly
    liftable_to_G: bool


def wsv_invariants(group: MatGroup, w: Subspace, d: int) -> Subspace:
    """Degree-d piece of (W S(V))^G inside the monomial basis of S^d."""
    lin = [HPoly.linear(group.field, row) for row in w.basis]
    ideal = ideal_graded_piece(lin, d, field=group.field, n=group.n)
    return ideal.intersection(fixed_subspace(group, d))


def module_generators_WSVH(group: MatGroup, w: Subspace, dmax: int) -> list[ModuleGenerator]:
    """Minimal generators of (W S(V))^H over S(V)^H, flagged by liftability.

    A generator slot is liftable when some G-invariant element of the same
    degree has a nonzero coordinate on it modulo decomposables.
    """
    h = kernel_subgroup_of_W(group, w)
    if w.dim == 0:
        return []
    F, n = group.field, group.n
    h_gens = minimal_generators(h, dmax)
    pieces: dict[int, Subspace] = {}
    out: list[ModuleGenerator] = []
    for d in range(1, dmax + 1):
        N = sym_dim(n, d)
        m_d = wsv_invariants(h, w, d)
        pieces[d] = m_d
        if m_d.dim == 0:
            continue
        blocks = []
        for deg, g in h_gens:
            if deg < d and pieces[d - deg].dim:
                blocks.append(multiply_rows(F, n, g, pieces[d - deg].basis, d - deg))
        dec = Subspace.span(F, np.concatenate(blocks), N) if blocks else Subspace.zero(F, N)
        new = _new_generators(dec, m_d)
        if not new.shape[0]:
            continue
        piv = [int(np.flatnonzero(r)[0]) for r in new]
        lifted = m_d.intersection(fixed_subspace(group, d))
        coords = dec.reduce(lifted.basis)[:, piv] if lifted.dim else np.zeros((0, len(piv)))
        for j, row in enumerate(new):
            out.append(ModuleGenerator(d, HPoly.from_vector(F, n, d, row),
                                       bool(np.any(coords[:, j]))))
    return out
