"""Exact coefficient arithmetic: q-numbers, Laurent polynomials and their
quotients for generic q, and cyclotomic residues for q a root of unity.

Every value is immutable and every operation is exact; there is no floating
point anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class DenominatorVanishes(ArithmeticError):
    """Raised when a generic scalar cannot be specialized at a root of unity."""


class QNumberVanishes(ArithmeticError):
    """Raised when a construction divides by a q-number that is zero."""


# ---------------------------------------------------------------------------
# Laurent polynomials over the rationals
# ---------------------------------------------------------------------------


class LaurentPoly:
    """A Laurent polynomial in q with Fraction coefficients.

    Stored as a map exponent -> coefficient with no zero entries; the zero
    polynomial has empty support.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # -- constructors

    @classmethod
    def zero(cls) -> LaurentPoly:
        return _LP_ZERO

    @classmethod
    def one(cls) -> LaurentPoly:
        return _LP_ONE

    @classmethod
    def const(cls, v) -> LaurentPoly:
        return cls({0: Fraction(v)})

    @classmethod
    def q_power(cls, e: int) -> LaurentPoly:
        return cls({e: Fraction(1)})

    # -- structure

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def items(self):
        return self._c.items()

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    # -- arithmetic

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w = w + v
                if w:
                    c[e] = w
                else:
                    del c[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = c
        r._hash = None
        return r

    def __neg__(self) -> LaurentPoly:
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = {e: -v for e, v in self._c.items()}
        r._hash = None
        return r

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if not self._c or not other._c:
            return _LP_ZERO
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                w = c.get(e)
                c[e] = v1 * v2 if w is None else w + v1 * v2
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = {e: v for e, v in c.items() if v}
        r._hash = None
        return r

    def scale(self, v) -> LaurentPoly:
        v = Fraction(v)
        if not v:
            return _LP_ZERO
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = {e: c * v for e, c in self._c.items()}
        r._hash = None
        return r

    def shift(self, e: int) -> LaurentPoly:
        """Multiply by q**e."""
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = {k + e: v for k, v in self._c.items()}
        r._hash = None
        return r

    def bar(self) -> LaurentPoly:
        """The image under q -> 1/q."""
        r = LaurentPoly.__new__(LaurentPoly)
        r._c = {-k: v for k, v in self._c.items()}
        r._hash = None
        return r

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative power of a LaurentPoly")
        result = _LP_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- conversions

    def to_list(self) -> tuple[int, list[Fraction]]:
        """Return (shift, coefficients) with coefficients[0] the q**shift term."""
        if not self._c:
            return 0, []
        lo, hi = self.min_exp(), self.max_exp()
        out = [Fraction(0)] * (hi - lo + 1)
        for e, v in self._c.items():
            out[e - lo] = v
        return lo, out

    @classmethod
    def from_list(cls, shift: int, coeffs) -> LaurentPoly:
        return cls({shift + i: Fraction(v) for i, v in enumerate(coeffs)})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            av = -v if v < 0 else v
            if e == 0:
                term = str(av)
            else:
                qpow = "q" if e == 1 else f"q^{e}"
                term = qpow if av == 1 else f"{av}*{qpow}"
            parts.append(f"{sign} {term}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else ("-" + s[2:])

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


_LP_ZERO = LaurentPoly()
_LP_ONE = LaurentPoly({0: Fraction(1)})


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    """Long division of ordinary polynomials given as coefficient lists."""
    num = list(num)
    dn = len(den) - 1
    while den and not den[-1]:
        den = den[:-1]
        dn -= 1
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead = den[-1]
    q = [Fraction(0)] * max(0, len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / lead
        if c:
            q[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    while num and not num[-1]:
        num.pop()
    return q, num


def _int_content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _int_primitive(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    if not a:
        return a
    g = _int_content(a)
    if a[-1] < 0:
        g = -g
    if g != 1:
        a = [c // g for c in a]
    return a


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (lc(b)^(da-db+1) * a mod b)."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - db
        c = a[-1]
        a = [x * lead for x in a]
        for j in range(db + 1):
            a[shift + j] -= c * b[j]
        while a and not a[-1]:
            a.pop()
    return a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Gcd of ordinary polynomials over Q, primitive with positive lead.

    Runs the primitive pseudo-remainder sequence over the integers to avoid
    the coefficient blowup of rational Euclid.
    """

    def to_int(p):
        mult = 1
        for c in p:
            c = Fraction(c)
            mult = mult * (c.denominator // gcd(mult, c.denominator))
        return _int_primitive([int(Fraction(c) * mult) for c in p])

    x, y = to_int(list(a)), to_int(list(b))
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_prem(x, y)
        x, y = y, _int_primitive(r)
    return [Fraction(c) for c in x]


def laurent_divexact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division of Laurent polynomials; raises if not divisible."""
    if den.is_zero():
        raise ZeroDivisionError
    if num.is_zero():
        return _LP_ZERO
    ns, nl = num.to_list()
    ds, dl = den.to_list()
    q, r = _poly_divmod(nl, dl)
    if r:
        raise ValueError("inexact Laurent division")
    return LaurentPoly.from_list(ns - ds, q)


# ---------------------------------------------------------------------------
# Cyclotomic machinery
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial (ascending)."""
    if n == 1:
        return (-1, 1)
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(poly, [Fraction(c) for c in cyclotomic_coeffs(d)])
            assert not r
            poly = q
    return tuple(int(c) for c in poly)


class UnityOrder:
    """The multiplicative order N of q, with ell minimal such that q^(2*ell)=1."""

    __slots__ = ("N", "ell")

    def __init__(self, N: int):
        if N < 3:
            # q = +1 or -1 makes [m] = (+-1)^(m-1) * m, never zero; the
            # criticality calculus below requires q^2 != 1.
            raise ValueError("order must be at least 3")
        self.N = N
        self.ell = N if N % 2 else N // 2

    def __eq__(self, other):
        return isinstance(other, UnityOrder) and self.N == other.N

    def __hash__(self):
        return hash(("UnityOrder", self.N))

    def __repr__(self):
        return f"UnityOrder(N={self.N}, ell={self.ell})"


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


class Scalar:
    """Common interface of exact coefficients; see GenericScalar/RootScalar."""

    backend: "Backend"

    def is_zero(self) -> bool:
        raise NotImplementedError

    def __bool__(self):
        return not self.is_zero()


class GenericScalar(Scalar):
    """A reduced fraction num/den of Laurent polynomials in q.

    Normal form: den has min exponent 0, integer coprime coefficients and a
    positive lowest coefficient; num/den is in lowest terms.  Equality is
    structural.
    """

    __slots__ = ("num", "den", "backend", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _LP_ONE, *, _normalized=False):
        if not _normalized:
            num, den = _normalize_fraction(num, den)
        self.num = num
        self.den = den
        self.backend = GENERIC
        self._hash = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == _LP_ONE and self.den == _LP_ONE

    def __eq__(self, other):
        return (
            isinstance(other, GenericScalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other: GenericScalar) -> GenericScalar:
        if self.den == other.den:
            return GenericScalar(self.num + other.num, self.den)
        return GenericScalar(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return GenericScalar(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: GenericScalar) -> GenericScalar:
        return GenericScalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: GenericScalar) -> GenericScalar:
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return GenericScalar(self.num * other.den, self.den * other.num)

    def inverse(self) -> GenericScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return GenericScalar(self.den, self.num)

    def __str__(self):
        if self.den == _LP_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"GenericScalar({self})"


def _normalize_fraction(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _LP_ZERO, _LP_ONE
    # strip q-powers so both sides are ordinary polynomials with nonzero
    # constant term, remember the net shift
    ns, nl = num.to_list()
    ds, dl = den.to_list()
    shift = ns - ds
    g = _poly_gcd(nl, dl)
    if len(g) > 1:
        nl, r1 = _poly_divmod(nl, g)
        dl, r2 = _poly_divmod(dl, g)
        assert not r1 and not r2
    # scale so den has coprime integer coefficients, positive lowest one
    mult = 1
    for c in dl:
        mult = mult * (c.denominator // gcd(mult, c.denominator))
    ints = [c * mult for c in dl]
    content = 0
    for c in ints:
        content = gcd(content, c.numerator)
    lam = Fraction(mult, content)
    if next(c for c in dl if c) * lam < 0:
        lam = -lam
    nl = [c * lam for c in nl]
    dl = [c * lam for c in dl]
    return LaurentPoly.from_list(shift, nl), LaurentPoly.from_list(0, dl)


class RootScalar(Scalar):
    """An element of the cyclotomic field Q(zeta_N), as a residue mod Phi_N."""

    __slots__ = ("coeffs", "backend", "_hash")

    def __init__(self, coeffs, backend: "RootBackend"):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        assert len(self.coeffs) == backend.degree
        self.backend = backend
        self._hash = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def _check(self, other):
        if self.backend is not other.backend and self.backend != other.backend:
            raise ValueError("mixed root-of-unity backends")

    def __eq__(self, other):
        return (
            isinstance(other, RootScalar)
            and self.backend == other.backend
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.backend.order.N, self.coeffs))
        return self._hash

    def __add__(self, other: RootScalar) -> RootScalar:
        self._check(other)
        return RootScalar(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.backend
        )

    def __neg__(self):
        return RootScalar([-a for a in self.coeffs], self.backend)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: RootScalar) -> RootScalar:
        self._check(other)
        deg = self.backend.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return RootScalar(self.backend.reduce(prod), self.backend)

    def inverse(self) -> RootScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid against Phi_N, which is irreducible over Q
        phi = [Fraction(c) for c in self.backend.phi]
        a = list(self.coeffs)
        while a and not a[-1]:
            a.pop()
        r0, r1 = phi, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, s0, r1, s1 = r1, s1, r, s
        assert len(r0) == 1  # gcd is a nonzero constant
        inv = [c / r0[0] for c in s0]
        return RootScalar(self.backend.reduce(inv), self.backend)

    def __truediv__(self, other: RootScalar) -> RootScalar:
        return self * other.inverse()

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                zpow = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    parts.append(zpow)
                elif c == -1:
                    parts.append(f"-{zpow}")
                else:
                    parts.append(f"{c}*{zpow}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"RootScalar({self}, N={self.backend.order.N})"


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    while out and not out[-1]:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# Backends
# ---------------------------------------------------------------------------


class Backend:
    """Factory for scalars of one arithmetic flavour."""

    key: tuple
    order: UnityOrder | None

    def zero(self) -> Scalar:
        raise NotImplementedError

    def one(self) -> Scalar:
        raise NotImplementedError

    def from_int(self, v: int) -> Scalar:
        raise NotImplementedError

    def qnum(self, m: int) -> Scalar:
        raise NotImplementedError

    def beta(self) -> Scalar:
        return self.qnum(2)

    def qfact(self, m: int) -> Scalar:
        if m < 0:
            raise ValueError("q-factorial of a negative integer")
        out = self.one()
        for j in range(1, m + 1):
            out = out * self.qnum(j)
        return out


class GenericBackend(Backend):
    order = None

    def __init__(self):
        self.key = ("generic",)
        self._qnum_cache: dict[int, GenericScalar] = {}

    def zero(self):
        return GenericScalar(_LP_ZERO, _LP_ONE, _normalized=True)

    def one(self):
        return GenericScalar(_LP_ONE, _LP_ONE, _normalized=True)

    def from_int(self, v: int):
        return GenericScalar(LaurentPoly.const(v))

    def from_fraction(self, v):
        return GenericScalar(LaurentPoly.const(Fraction(v)))

    def from_laurent(self, p: LaurentPoly):
        return GenericScalar(p)

    def qnum(self, m: int):
        s = self._qnum_cache.get(m)
        if s is None:
            s = GenericScalar(qnum_poly(m))
            self._qnum_cache[m] = s
        return s

    def __repr__(self):
        return "GenericBackend()"


def qnum_poly(m: int) -> LaurentPoly:
    """[m] = q^(m-1) + q^(m-3) + ... + q^(1-m) as a Laurent polynomial."""
    if m < 0:
        return -qnum_poly(-m)
    return LaurentPoly({m - 1 - 2 * i: Fraction(1) for i in range(m)})


class RootBackend(Backend):
    def __init__(self, order: UnityOrder):
        self.order = order
        self.key = ("root", order.N)
        self.phi = cyclotomic_coeffs(order.N)
        self.degree = len(self.phi) - 1
        # reduction table for zeta^j, degree <= j < N
        self._pow: list[tuple[Fraction, ...]] = []
        for j in range(order.N):
            vec = [Fraction(0)] * max(self.degree, j + 1)
            vec[j] = Fraction(1)
            self._pow.append(tuple(self._reduce_list(vec)))
        self._qnum_cache: dict[int, RootScalar] = {}

    def _reduce_list(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        phi = [Fraction(c) for c in self.phi]
        if len(coeffs) >= len(phi):
            _, coeffs = _poly_divmod(coeffs, phi)
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return coeffs[: self.degree]

    def reduce(self, coeffs):
        return self._reduce_list(coeffs)

    def zero(self):
        return RootScalar([Fraction(0)] * self.degree, self)

    def one(self):
        out = [Fraction(0)] * self.degree
        out[0] = Fraction(1)
        return RootScalar(out, self)

    def from_int(self, v: int):
        out = [Fraction(0)] * self.degree
        out[0] = Fraction(v)
        return RootScalar(out, self)

    def zeta_power(self, e: int) -> RootScalar:
        return RootScalar(self._pow[e % self.order.N], self)

    def from_laurent(self, p: LaurentPoly) -> RootScalar:
        out = self.zero()
        for e, v in p.items():
            term = RootScalar([c * v for c in self._pow[e % self.order.N]], self)
            out = out + term
        return out

    def qnum(self, m: int) -> RootScalar:
        s = self._qnum_cache.get(m)
        if s is None:
            s = self.from_laurent(qnum_poly(m))
            self._qnum_cache[m] = s
        return s

    def __eq__(self, other):
        return isinstance(other, RootBackend) and other.order == self.order

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"RootBackend(N={self.order.N})"


class RationalScalar(Scalar):
    """An exact rational value of a scalar at a fixed rational q."""

    __slots__ = ("value", "backend")

    def __init__(self, value, backend: "QRationalBackend"):
        self.value = Fraction(value)
        self.backend = backend

    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other):
        return (
            isinstance(other, RationalScalar)
            and self.backend.q0 == other.backend.q0
            and self.value == other.value
        )

    def __hash__(self):
        return hash(("rat", self.backend.q0, self.value))

    def __add__(self, other):
        return RationalScalar(self.value + other.value, self.backend)

    def __sub__(self, other):
        return RationalScalar(self.value - other.value, self.backend)

    def __neg__(self):
        return RationalScalar(-self.value, self.backend)

    def __mul__(self, other):
        return RationalScalar(self.value * other.value, self.backend)

    def __truediv__(self, other):
        return RationalScalar(self.value / other.value, self.backend)

    def inverse(self):
        return RationalScalar(1 / self.value, self.backend)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"RationalScalar({self.value})"


class QRationalBackend(Backend):
    """Exact evaluation at a rational q0; q0^m != 1 keeps all [m] nonzero.

    Evaluation is a ring homomorphism from the generic coefficients, so it
    yields exact one-sided rank certificates for generic matrices.
    """

    order = None

    def __init__(self, q0):
        self.q0 = Fraction(q0)
        if self.q0 in (0, 1, -1):
            raise ValueError("q0 must avoid 0 and roots of unity")
        self.key = ("rational", self.q0)
        self._qnum_cache: dict[int, RationalScalar] = {}

    def zero(self):
        return RationalScalar(0, self)

    def one(self):
        return RationalScalar(1, self)

    def from_int(self, v: int):
        return RationalScalar(v, self)

    def from_laurent(self, p: LaurentPoly):
        total = Fraction(0)
        for e, c in p.items():
            total += c * self.q0**e
        return RationalScalar(total, self)

    def qnum(self, m: int):
        s = self._qnum_cache.get(m)
        if s is None:
            s = self.from_laurent(qnum_poly(m))
            self._qnum_cache[m] = s
        return s

    def __repr__(self):
        return f"QRationalBackend(q0={self.q0})"


GENERIC = GenericBackend()

_root_backends: dict[int, RootBackend] = {}


def root_backend(N: int) -> RootBackend:
    """The (cached) cyclotomic backend for q of multiplicative order N."""
    b = _root_backends.get(N)
    if b is None:
        b = RootBackend(UnityOrder(N))
        _root_backends[N] = b
    return b


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def qnum(m: int, backend: Backend = GENERIC) -> Scalar:
    """The q-number [m] = (q^m - q^-m)/(q - q^-1)."""
    return backend.qnum(m)


def qfact(m: int, backend: Backend = GENERIC) -> Scalar:
    """The q-factorial [m]! = [1][2]...[m]; the empty product is 1."""
    return backend.qfact(m)


def specialize(s: GenericScalar, order: UnityOrder | RootBackend | int) -> RootScalar:
    """Image of a generic scalar under q -> zeta_N.

    Raises DenominatorVanishes when the denominator specializes to zero; the
    caller is responsible for taking limits after dividing out the vanishing
    factor.
    """
    if isinstance(order, RootBackend):
        backend = order
    elif isinstance(order, UnityOrder):
        backend = root_backend(order.N)
    else:
        backend = root_backend(int(order))
    den = backend.from_laurent(s.den)
    if den.is_zero():
        raise DenominatorVanishes(f"denominator {s.den} vanishes at N={backend.order.N}")
    return backend.from_laurent(s.num) / den


# ---------------------------------------------------------------------------
# Serialization and pretty-printing
# ---------------------------------------------------------------------------


def _frac_str(v: Fraction) -> str:
    return str(v)  # "p" or "p/q", never decimal


def scalar_to_json(s: Scalar) -> dict:
    if isinstance(s, GenericScalar):
        return {
            "backend": "generic",
            "num": [[e, _frac_str(v)] for e, v in sorted(s.num.items())],
            "den": [[e, _frac_str(v)] for e, v in sorted(s.den.items())],
        }
    assert isinstance(s, RootScalar)
    return {
        "backend": "root",
        "num": [[i, _frac_str(c)] for i, c in enumerate(s.coeffs) if c],
        "den": [[0, "1"]],
        "N": s.backend.order.N,
    }


def scalar_from_json(data: dict) -> Scalar:
    if data["backend"] == "generic":
        num = LaurentPoly({int(e): Fraction(v) for e, v in data["num"]})
        den = LaurentPoly({int(e): Fraction(v) for e, v in data["den"]})
        return GenericScalar(num, den)
    backend = root_backend(int(data["N"]))
    coeffs = [Fraction(0)] * backend.degree
    for i, v in data["num"]:
        coeffs[int(i)] = Fraction(v)
    return RootScalar(coeffs, backend)


def _cyclo_factor(p: LaurentPoly):
    """Split p into c * q^shift * prod Phi_d^e_d, or None if a residue remains."""
    if p.is_zero():
        return None
    shift = p.min_exp()
    coeffs = [Fraction(0)] * (p.max_exp() - shift + 1)
    for e, v in p.items():
        coeffs[e - shift] = v
    exps: dict[int, int] = {}
    d = 1
    while len(coeffs) > 1:
        phi = [Fraction(c) for c in cyclotomic_coeffs(d)]
        if len(phi) > len(coeffs):
            d += 1
            if len(phi) - 1 > len(coeffs) - 1:
                # no further cyclotomic can divide
                if d > 2 * len(coeffs) + 4:
                    break
            continue
        q, r = _poly_divmod(list(coeffs), phi)
        if not r:
            exps[d] = exps.get(d, 0) + 1
            coeffs = q
        else:
            d += 1
        if d > 3 * (len(coeffs) + 2):
            break
    if len(coeffs) != 1:
        return None
    return coeffs[0], shift, exps


def _qnum_exponents(c: Fraction, shift: int, exps: dict[int, int]):
    """Solve c * q^shift * prod Phi_d^e_d = c * prod [m]^a_m, or None.

    Uses [m] = q^(1-m) * prod of Phi_d over d | 2m, d not in {1,2}.
    """
    v = {d: e for d, e in exps.items() if e}
    out: dict[int, int] = {}
    while True:
        big = [d for d in v if d >= 3 and v[d]]
        if not big:
            break
        d = max(big)
        a = v[d]
        m = d if d % 2 else d // 2
        out[m] = out.get(m, 0) + a
        for dd in range(3, 2 * m + 1):
            if 2 * m % dd == 0:
                v[dd] = v.get(dd, 0) - a
        shift += a * (m - 1)
    if any(v.get(d, 0) for d in v):
        return None  # leftover Phi_1/Phi_2 powers
    if shift != 0:
        return None
    return c, {m: a for m, a in out.items() if a}


def _qnum_product_str(c: Fraction, fac: dict[int, int]) -> str:
    parts = []
    neg = c < 0
    c = -c if neg else c
    if c != 1 or not fac:
        parts.append(str(c))
    for m in sorted(fac, reverse=True):
        a = fac[m]
        parts.append(f"[{m}]" + (f"^{a}" if a > 1 else ""))
    return ("-" if neg else "") + "".join(parts)


def qnum_pretty(s: Scalar) -> str:
    """Render a generic scalar as a product of q-numbers when possible."""
    if not isinstance(s, GenericScalar):
        return str(s)
    if s.is_zero():
        return "0"
    num_fac = _cyclo_factor(s.num)
    den_fac = _cyclo_factor(s.den)
    if num_fac is None or den_fac is None:
        return str(s)
    cn, sn, en = num_fac
    cd, sd, ed = den_fac
    for d, e in ed.items():
        en[d] = en.get(d, 0) - e
    solved = _qnum_exponents(cn / cd, sn - sd, en)
    if solved is None:
        return str(s)
    c, joint = solved
    top = {m: a for m, a in joint.items() if a > 0}
    bot = {m: -a for m, a in joint.items() if a < 0}
    head = _qnum_product_str(c, top)
    if not bot:
        return head
    return f"{head}/{_qnum_product_str(Fraction(1), bot)}"
