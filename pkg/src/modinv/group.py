"""Finite matrix groups over F_q given by generators.

Elements are enumerated by breadth-first closure and deduplicated by the
little-endian byte encoding of their entries (row-major).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BudgetExceeded, DimMismatch, InvalidArgument, NotAModule, TheoremContradicted
from .gf import GF
from .linalg import Subspace, determinant, identity, inverse, matmul, rank

DEFAULT_MAX_ORDER = 200_000
DEFAULT_MAX_LINES = 100_000
DEFAULT_SPIN_BUDGET = 3**16
PRE_CLOSURE_ORDER_CAP = 10**6


def element_key(m: np.ndarray) -> bytes:
    return np.ascontiguousarray(m, dtype="<u2").tobytes()


def batch_matmul(field: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcasting matrix product over leading axes."""
    if field.k == 1:
        return np.matmul(a, b) % field.p
    n = a.shape[-1]
    out = None
    for j in range(n):
        term = field.mul(a[..., :, j, None], b[..., None, j, :])
        out = term if out is None else field.add(out, term)
    return out


class MatGroup:
    """A finite subgroup of GL_n(F_q) given by generators.

    The element list is computed on first access and cached; enumeration
    order is deterministic for a given generator list.
    """

    def __init__(self, field: GF, gens, n: int | None = None, budget: int = DEFAULT_MAX_ORDER,
                 name: str | None = None):
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        if n is None:
            if not gens:
                raise InvalidArgument("dimension required for a group without generators")
            n = gens[0].shape[0]
        for g in gens:
            if g.shape != (n, n):
                raise DimMismatch(f"generator of shape {g.shape}, expected {(n, n)}")
            if np.any((g < 0) | (g >= field.q)):
                raise InvalidArgument("generator entries must be field codes")
            if determinant(field, g) == 0:
                raise InvalidArgument("generator is not invertible")
        self.field = field
        self.n = n
        self.gens = gens
        self.budget = budget
        self.name = name
        self._elements: list[np.ndarray] | None = None
        self._index: dict[bytes, int] | None = None
        self._cache: dict = {}

    def __repr__(self):
        label = self.name or "MatGroup"
        order = len(self._elements) if self._elements is not None else "?"
        return f"<{label} n={self.n} over {self.field!r}, order {order}>"

    # -- enumeration -------------------------------------------------------
    def closure(self) -> "MatGroup":
        if self._elements is not None:
            return self
        F = self.field
        one = identity(self.n)
        elements = [one]
        index = {element_key(one): 0}
        frontier = [one]
        gens = np.array(self.gens, dtype=np.int64).reshape(-1, self.n, self.n)
        while frontier and len(gens):
            stack = np.array(frontier)
            prods = batch_matmul(F, gens[None, :, :, :], stack[:, None, :, :])
            frontier = []
            for block in prods:
                for y in block:
                    key = element_key(y)
                    if key not in index:
                        index[key] = len(elements)
                        elements.append(y)
                        frontier.append(y)
                        if len(elements) > self.budget:
                            raise BudgetExceeded(
                                f"closure exceeded {self.budget} elements", reached=len(elements)
                            )
        self._elements = elements
        self._index = index
        return self

    @property
    def elements(self) -> list[np.ndarray]:
        return self.closure()._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_array(self) -> np.ndarray:
        if "array" not in self._cache:
            self._cache["array"] = np.array(self.elements, dtype=np.int64).reshape(-1, self.n, self.n)
        return self._cache["array"]

    def __contains__(self, m) -> bool:
        self.closure()
        return element_key(np.asarray(m)) in self._index

    def element_keys(self) -> frozenset:
        self.closure()
        return frozenset(self._index)

    def same_elements(self, other: "MatGroup") -> bool:
        return self.order == other.order and self.element_keys() == other.element_keys()

    def is_subgroup_of(self, other: "MatGroup") -> bool:
        return all(g in other for g in self.gens)

    def in_sl(self) -> bool:
        return all(determinant(self.field, g) == 1 for g in self.gens)

    def is_trivial(self) -> bool:
        return all(np.array_equal(g, identity(self.n)) for g in self.gens)

    def element_order(self, m: np.ndarray) -> int:
        cap = self.order if self._elements is not None else PRE_CLOSURE_ORDER_CAP
        return element_order(self.field, m, cap)

    def subgroup(self, elems, name: str | None = None) -> "MatGroup":
        return generated_subgroup(self.field, self.n, elems, budget=self.budget, name=name)

    def describe(self) -> dict:
        return {
            "field": self.field.describe(),
            "dim": self.n,
            "generators": [[[self.field.coeffs(x) for x in row] for row in g.tolist()]
                           for g in self.gens],
        }


def closure(group: MatGroup) -> MatGroup:
    return group.closure()


def generated_subgroup(field: GF, n: int, elems, budget: int = DEFAULT_MAX_ORDER,
                       name: str | None = None) -> MatGroup:
    """Subgroup generated by ``elems``, with a greedily pruned generator list."""
    gens: list[np.ndarray] = []
    current = MatGroup(field, [], n=n, budget=budget).closure()
    for e in elems:
        if e not in current:
            gens.append(np.asarray(e, dtype=np.int64))
            current = MatGroup(field, gens, n=n, budget=budget).closure()
    current.name = name
    return current


def element_order(field: GF, m: np.ndarray, cap: int = PRE_CLOSURE_ORDER_CAP) -> int:
    one = identity(m.shape[0])
    x = np.asarray(m, dtype=np.int64)
    k = 1
    while not np.array_equal(x, one):
        x = matmul(field, x, m)
        k += 1
        if k > cap:
            raise BudgetExceeded(f"element order exceeds {cap}", reached=k)
    return k


@dataclass(frozen=True)
class ElementClass:
    is_identity: bool
    is_transvection: bool
    is_pseudo_reflection: bool
    is_p_element: bool
    det: int


def is_p_element(field: GF, m: np.ndarray) -> bool:
    """p-elements of GL_n are unipotent, hence killed by the first p^e >= n."""
    n = m.shape[0]
    e = field.p
    while e < n:
        e *= field.p
    return np.array_equal(_power(field, np.asarray(m, dtype=np.int64), e), identity(n))


def _power(field: GF, m: np.ndarray, e: int) -> np.ndarray:
    result = identity(m.shape[0])
    base = m
    while e:
        if e & 1:
            result = matmul(field, result, base)
        base = matmul(field, base, base)
        e >>= 1
    return result


def classify_element(field: GF, m) -> ElementClass:
    m = np.asarray(m, dtype=np.int64)
    one = identity(m.shape[0])
    delta = field.sub(m, one)
    r = rank(field, delta)
    pseudo = r == 1
    transvection = pseudo and not np.any(matmul(field, delta, delta))
    return ElementClass(
        is_identity=r == 0,
        is_transvection=transvection,
        is_pseudo_reflection=pseudo,
        is_p_element=is_p_element(field, m),
        det=determinant(field, m),
    )


def _classified(group: MatGroup) -> list[ElementClass]:
    if "classes" not in group._cache:
        group._cache["classes"] = [classify_element(group.field, e) for e in group.elements]
    return group._cache["classes"]


def transvections(group: MatGroup) -> list[np.ndarray]:
    return [e for e, c in zip(group.elements, _classified(group)) if c.is_transvection]


def pseudo_reflections(group: MatGroup) -> list[np.ndarray]:
    return [e for e, c in zip(group.elements, _classified(group)) if c.is_pseudo_reflection]


def transvection_subgroup(group: MatGroup) -> MatGroup:
    """T(G): the subgroup generated by every transvection in G."""
    if "T" not in group._cache:
        group._cache["T"] = group.subgroup(transvections(group), name="T(G)")
    return group._cache["T"]


def pseudo_reflection_subgroup(group: MatGroup) -> MatGroup:
    if "P" not in group._cache:
        group._cache["P"] = group.subgroup(pseudo_reflections(group), name="P(G)")
    return group._cache["P"]


def p_generated_subgroup(group: MatGroup) -> MatGroup:
    """The subgroup generated by all elements of p-power order."""
    if "Op" not in group._cache:
        pel = [e for e, c in zip(group.elements, _classified(group))
               if c.is_p_element and not c.is_identity]
        group._cache["Op"] = group.subgroup(pel, name="p-generated")
    return group._cache["Op"]


def projective_points(field: GF, n: int):
    """Nonzero vectors of F_q^n with first nonzero coordinate 1, in fixed order."""
    q = field.q
    for lead in range(n):
        for tail in product(range(q), repeat=n - lead - 1):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def count_lines(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


def _moving_part(group: MatGroup) -> np.ndarray:
    E = group.element_array()
    return group.field.sub(E, identity(group.n)[None])


def _covector_times(field: GF, f: np.ndarray, D: np.ndarray) -> np.ndarray:
    """``f_l . D_g`` for every line l and element g: shape (L, N, n)."""
    if field.k == 1:
        return np.einsum("li,gij->lgj", f, D) % field.p
    out = None
    for i in range(f.shape[1]):
        term = field.mul(f[:, i, None, None], D[None, :, i, :])
        out = term if out is None else field.add(out, term)
    return out


@dataclass
class LineStabilizer:
    line: np.ndarray
    group: MatGroup
    group_id: int


def line_stabilizers(group: MatGroup, max_lines: int = DEFAULT_MAX_LINES) -> list[LineStabilizer]:
    """Pointwise stabilizers G_U of every line U = F f in V*.

    ``x`` lies in G_U iff every column of ``x - 1`` is killed by ``f``.  Lines
    sharing an element set share one :class:`MatGroup` (and ``group_id``).
    """
    key = ("lines", max_lines)
    if key in group._cache:
        return group._cache[key]
    F, n = group.field, group.n
    total = count_lines(F.q, n)
    if total > max_lines:
        raise BudgetExceeded(f"{total} lines exceed the line budget {max_lines}", reached=total)
    D = _moving_part(group)
    N = D.shape[0]
    lines = np.array(list(projective_points(F, n)), dtype=np.int64)
    chunk = max(1, 4_000_000 // max(1, N * n))
    masks = []
    for s in range(0, len(lines), chunk):
        prod_ = _covector_times(F, lines[s:s + chunk], D)
        masks.append(~np.any(prod_, axis=2))
    mask = np.concatenate(masks) if masks else np.zeros((0, N), dtype=bool)
    groups: dict[bytes, tuple[int, MatGroup]] = {}
    out = []
    elems = group.elements
    for f, row in zip(lines, mask):
        k = np.packbits(row).tobytes()
        if k not in groups:
            members = [elems[i] for i in np.flatnonzero(row)]
            sub = group.subgroup(members, name="G_U")
            groups[k] = (len(groups), sub)
        gid, sub = groups[k]
        out.append(LineStabilizer(f, sub, gid))
    group._cache[key] = out
    return out


def dual_stabilizer(group: MatGroup, f) -> MatGroup:
    """G_U computed directly: elements whose contragredient fixes ``f``."""
    F = group.field
    f = np.asarray(f, dtype=np.int64).reshape(-1, 1)
    members = []
    for x in group.elements:
        xd = inverse(F, x).T
        if np.array_equal(matmul(F, xd, f), f):
            members.append(x)
    return group.subgroup(members, name="G_U")


def is_stable(group: MatGroup, w: Subspace) -> bool:
    return all(w.image(g) == w for g in group.gens)


def kernel_subgroup_of_W(group: MatGroup, w: Subspace) -> MatGroup:
    """H = {g in G : (g - 1)V is contained in W}; normality is checked."""
    if w.ambient_dim != group.n:
        raise DimMismatch("W must live in V")
    if not is_stable(group, w):
        raise NotAModule("W is not stable under the group")
    F = group.field
    one = identity(group.n)
    members = [x for x in group.elements if w.contains(F.sub(x, one).T)]
    h = group.subgroup(members, name="H")
    for s in group.gens:
        s_inv = inverse(F, s)
        for t in h.gens:
            if matmul(F, matmul(F, s, t), s_inv) not in h:
                raise TheoremContradicted("H is not normal in G")
    return h


def _spin(group: MatGroup, v: np.ndarray) -> Subspace:
    F = group.field
    space = Subspace.span(F, v.reshape(1, -1), group.n)
    queue = [v]
    while queue:
        x = queue.pop()
        for g in group.gens:
            y = matmul(F, g, x.reshape(-1, 1)).ravel()
            if not space.contains(y.reshape(1, -1)):
                space = Subspace.span(F, np.vstack([space.basis, y]), group.n)
                queue.append(y)
    return space


def submodules(group: MatGroup, spin_budget: int = DEFAULT_SPIN_BUDGET) -> list[Subspace]:
    """Every G-stable subspace of V, sorted by (dimension, basis bytes)."""
    if "submodules" in group._cache:
        return group._cache["submodules"]
    F, n = group.field, group.n
    if F.q**n > spin_budget:
        raise BudgetExceeded(f"q^n = {F.q ** n} exceeds the spin budget {spin_budget}",
                             reached=F.q**n)
    found: dict[bytes, Subspace] = {}
    zero = Subspace.zero(F, n)
    found[zero.key()] = zero
    for v in projective_points(F, n):
        s = _spin(group, v)
        found.setdefault(s.key(), s)
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for i, a in enumerate(current):
            for b in current[i + 1:]:
                s = a + b
                if s.key() not in found:
                    found[s.key()] = s
                    changed = True
    out = sorted(found.values(), key=lambda s: (s.dim, s.key()))
    group._cache["submodules"] = out
    return out


def maximal_submodules(group: MatGroup, spin_budget: int = DEFAULT_SPIN_BUDGET) -> list[Subspace]:
    proper = [s for s in submodules(group, spin_budget) if s.dim < group.n]
    return [s for s in proper
            if not any(t.dim > s.dim and t.contains(s) for t in proper)]


def dual_group(group: MatGroup) -> MatGroup:
    """The contragredient representation g -> (g^{-1})^T on V*."""
    F = group.field
    gens = [inverse(F, g).T.copy() for g in group.gens]
    name = f"{group.name}*" if group.name else None
    return MatGroup(F, gens, n=group.n, budget=group.budget, name=name)


def is_fixed_point_free(group: MatGroup) -> bool:
    F = group.field
    one = identity(group.n)
    for x in group.elements:
        if np.array_equal(x, one):
            continue
        if rank(F, F.sub(x, one)) < group.n:
            return False
    return True
