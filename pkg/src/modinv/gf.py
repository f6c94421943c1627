"""Finite fields F_{p^k} with exact, vectorised arithmetic.

Elements are stored as integer codes ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` is the residue modulo the field's
defining polynomial.  For ``k = 1`` the code is just the residue mod ``p``.
Array methods on :class:`GF` accept anything ``numpy`` can broadcast and always
return ``int64`` arrays of codes.
"""

from __future__ import annotations

from functools import total_ordering
from itertools import product
from math import gcd

import numpy as np

from .errors import DivisionByZero, FieldMismatch, InvalidArgument

MAX_ORDER = 1 << 16

# Lexicographically least irreducible monic moduli (constant term first),
# least in the order of the code sum(c_i p^i) over the non-leading coefficients.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}

# Above this size the add/mul tables would be too large; use log/exp instead.
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_divisors(n: int) -> list[int]:
    out, r = [], 2
    while r * r <= n:
        if n % r == 0:
            out.append(r)
            while n % r == 0:
                n //= r
        r += 1
    if n > 1:
        out.append(n)
    return out


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``m`` over F_p (lists constant-first)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    r = [c % p for c in a[:dm]]
    return r + [0] * (dm - len(r))


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..k//2."""
    m = [c % p for c in modulus]
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_rem(m, list(low) + [1], p)):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise InvalidArgument(f"no irreducible polynomial of degree {k} over F_{p}")


class GF:
    """The finite field F_{p^k}.

    Parameters
    ----------
    p : int
        Prime characteristic.
    k : int
        Extension degree, ``p**k <= 2**16``.
    modulus : sequence of int, optional
        Monic irreducible polynomial of degree ``k`` (constant term first).
        Defaults to the built-in table, or the least irreducible polynomial.
    """

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise InvalidArgument(f"p={p} is not prime")
        if k < 1:
            raise InvalidArgument("extension degree must be >= 1")
        if p**k > MAX_ORDER:
            raise InvalidArgument(f"field of order {p}^{k} exceeds 2^16")
        if k == 1:
            # any monic linear modulus gives the same prime field
            if modulus is not None and (len(modulus) != 2 or modulus[1] % p != 1):
                raise InvalidArgument("modulus for k=1 must be monic linear")
            modulus = (0, 1)
        elif modulus is None:
            modulus = DEFAULT_MODULI.get((p, k)) or least_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise InvalidArgument("modulus must be monic of degree k")
            if not is_irreducible(modulus, p):
                raise InvalidArgument(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self._build_tables()

    # -- construction ---------------------------------------------------
    def _digits_of(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.k)]

    def _code_of(self, digits) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        da, db = self._digits_of(a), self._digits_of(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._code_of(_poly_rem(prod, list(self.modulus), self.p))

    def _build_tables(self):
        p, q = self.p, self.q
        pw = np.array([p**i for i in range(self.k)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._pw = pw
        self._digits = (codes[:, None] // pw[None, :]) % p
        self._neg = ((-self._digits) % p) @ pw

        # multiplicative generator, smallest code first
        factors = prime_divisors(q - 1)
        gen = None
        for cand in range(1, q):
            if all(self._slow_pow(cand, (q - 1) // r) != 1 for r in factors):
                gen = cand
                break
        if q == 2:
            gen = 1
        self.primitive_element = gen
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            x = self._slow_mul(x, gen)
        exp[q - 1 :] = exp[: q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        self._exp, self._log = exp, log
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self._inv = inv

        self._add_tab = self._mul_tab = None
        if self.k > 1 and q <= _TABLE_LIMIT:
            a, b = np.meshgrid(codes, codes, indexing="ij")
            self._add_tab = self._add_digits(a, b)
            m = exp[(log[a] + log[b]) % (q - 1)]
            m[(a == 0) | (b == 0)] = 0
            self._mul_tab = m
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _add_digits(self, a, b):
        d = (self._digits[a] + self._digits[b]) % self.p
        return d @ self._pw

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- elements ---------------------------------------------------------
    def __call__(self, value) -> "Scalar":
        """Build a :class:`Scalar` from an int residue or a coefficient list."""
        if isinstance(value, Scalar):
            self.check(value)
            return value
        return Scalar(self, self.code(value))

    def code(self, value) -> int:
        """Integer code for an int (prime-field residue) or coefficient list."""
        if isinstance(value, Scalar):
            self.check(value)
            return value.code
        if isinstance(value, (list, tuple, np.ndarray)):
            coeffs = [int(c) for c in value]
            if len(coeffs) > self.k:
                raise InvalidArgument(f"too many coefficients for {self!r}: {coeffs}")
            if any(c < 0 or c >= self.p for c in coeffs):
                raise InvalidArgument(f"coefficients must lie in [0, {self.p})")
            return self._code_of(coeffs)
        return int(value) % self.p

    def coeffs(self, code: int) -> list[int]:
        """Coefficient list (constant term first, length k) of a code."""
        return [int(d) for d in self._digits[int(code)]]

    def elements(self):
        return [Scalar(self, c) for c in range(self.q)]

    @property
    def gen(self) -> "Scalar":
        """The class of ``x`` in F_p[x]/(modulus) (equal to 0 when k = 1)."""
        return Scalar(self, self.p if self.k > 1 else 0)

    def check(self, s: "Scalar"):
        if s.field != self:
            raise FieldMismatch(f"{s!r} does not belong to {self!r}")

    # -- vectorised arithmetic on codes --------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return self._add_tab[a, b]
        return self._add_digits(a, b)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_tab is not None:
            return self._mul_tab[a, b]
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def power(self, a, e: int):
        """Elementwise ``a**e``; negative exponents need nonzero ``a``."""
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            return np.ones_like(a)
        r = self._exp[(self._log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def from_int(self, n: int) -> int:
        """Code of the image of the integer ``n`` (e.g. a binomial coefficient)."""
        return int(n) % self.p

    # -- scalar fast paths (python ints) ------------------------------------
    def s_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return int(self.add(a, b))

    def s_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def s_neg(self, a: int) -> int:
        return int(self._neg[a])

    def s_inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self._inv[a])

    def s_pow(self, a: int, e: int) -> int:
        return int(self.power(a, e))

    def order_of(self, a: int) -> int:
        """Multiplicative order of a nonzero code."""
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        lg = self._log_list[a]
        return (self.q - 1) // gcd(lg, self.q - 1)

    def in_prime_field(self, a: int) -> bool:
        return int(a) < self.p


@total_ordering
class Scalar:
    """An element of a :class:`GF`, compared and hashed by its code."""

    __slots__ = ("field", "code")

    def __init__(self, field: GF, code: int):
        self.field = field
        self.code = int(code)

    def _other(self, other) -> int:
        if isinstance(other, Scalar):
            self.field.check(other)
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.field.code(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.s_add(self.code, o))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field.s_neg(self.code))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.s_add(self.code, self.field.s_neg(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.s_mul(self.code, o))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.s_inv(self.code))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.s_mul(self.code, self.field.s_inv(o)))

    def __pow__(self, e: int):
        if e < 0 and self.code == 0:
            raise DivisionByZero("negative power of zero")
        return Scalar(self.field, self.field.s_pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self.field.code(int(other))
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Scalar):
            self.field.check(other)
            return self.code < other.code
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __int__(self):
        return self.code

    def __bool__(self):
        return self.code != 0

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.code)

    def order(self) -> int:
        return self.field.order_of(self.code)

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.code}"
        return f"{self.coeffs}"


def find_primitive_root_of_unity(field: GF, l: int):
    """Smallest-code element of multiplicative order exactly ``l``, or None."""
    if l < 1:
        raise InvalidArgument("l must be a positive integer")
    if (field.q - 1) % l:
        return None
    for code in range(1, field.q):
        if field.order_of(code) == l:
            return Scalar(field, code)
    return None


def field_from_order(q: int) -> GF:
    """The field of order ``q`` (a prime power) with the default modulus."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or not is_prime(p):
        raise InvalidArgument(f"{q} is not a prime power")
    return GF(p, k)
