"""Linear combinations of diagrams, Temperley-Lieb multiplication with
loop weights, and the Wenzl-Jones projectors.
"""

from __future__ import annotations

from seamrep import diagrams as dg
from seamrep.diagrams import Diagram, ShapeMismatch
from seamrep.qscalar import GENERIC, Backend, QNumberVanishes, Scalar


class Element:
    """A finitely supported Scalar-linear combination of same-shape diagrams."""

    __slots__ = ("left", "right", "terms", "backend")

    def __init__(self, left: int, right: int, terms: dict[Diagram, Scalar], backend: Backend):
        self.left = left
        self.right = right
        self.backend = backend
        self.terms = {d: c for d, c in terms.items() if not c.is_zero()}

    @classmethod
    def zero(cls, left: int, right: int, backend: Backend) -> Element:
        return cls(left, right, {}, backend)

    @classmethod
    def from_diagram(cls, d: Diagram, backend: Backend, coeff: Scalar | None = None) -> Element:
        c = backend.one() if coeff is None else coeff
        return cls(d.left, d.right, {d: c}, backend)

    @classmethod
    def unit(cls, n: int, backend: Backend) -> Element:
        return cls.from_diagram(dg.identity(n), backend)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check_shape(self, other: Element):
        if (self.left, self.right) != (other.left, other.right):
            raise ShapeMismatch(
                f"({self.left},{self.right}) vs ({other.left},{other.right})"
            )

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.left == other.left
            and self.right == other.right
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.left, self.right, tuple(sorted(self.terms.items(), key=lambda t: t[0].pairs))))

    def __add__(self, other: Element) -> Element:
        self._check_shape(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            prev = terms.get(d)
            terms[d] = c if prev is None else prev + c
        return Element(self.left, self.right, terms, self.backend)

    def __neg__(self) -> Element:
        return Element(
            self.left, self.right, {d: -c for d, c in self.terms.items()}, self.backend
        )

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, c: Scalar) -> Element:
        if c.is_zero():
            return Element.zero(self.left, self.right, self.backend)
        return Element(
            self.left, self.right, {d: v * c for d, v in self.terms.items()}, self.backend
        )

    def __mul__(self, other: Element) -> Element:
        """Bilinear extension of concatenation, each loop contributing beta."""
        if self.right != other.left:
            raise ShapeMismatch(f"right {self.right} vs left {other.left}")
        beta = self.backend.beta()
        out: dict[Diagram, Scalar] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d, loops = dg.compose(d1, d2)
                c = c1 * c2
                for _ in range(loops):
                    c = c * beta
                prev = out.get(d)
                out[d] = c if prev is None else prev + c
        return Element(self.left, other.right, out, self.backend)

    def coefficient(self, d: Diagram) -> Scalar:
        return self.terms.get(d, self.backend.zero())

    def reflect(self) -> Element:
        return Element(
            self.right,
            self.left,
            {dg.reflect(d): c for d, c in self.terms.items()},
            self.backend,
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].pairs)

    def to_json(self):
        from seamrep.qscalar import scalar_to_json

        return [[d.to_text(), scalar_to_json(c)] for d, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{d.to_text()}" for d, c in self.sorted_terms())

    def __repr__(self):
        return f"Element({self})"


def generator_element(n: int, i: int, backend: Backend) -> Element:
    return Element.from_diagram(dg.generator(n, i), backend)


class ProjectorCache:
    """The Wenzl-Jones projector on the bottom k of N strands, expanded."""

    __slots__ = ("strands", "size", "expansion")

    def __init__(self, strands: int, size: int, expansion: Element):
        self.strands = strands
        self.size = size
        self.expansion = expansion

    def __repr__(self):
        return f"ProjectorCache(N={self.strands}, k={self.size}, {len(self.expansion.terms)} terms)"


_wj_cache: dict[tuple, ProjectorCache] = {}


def wenzl_jones(N: int, k: int, backend: Backend = GENERIC) -> ProjectorCache:
    """P_k acting on the bottom k strands of N, built by the usual recursion.

    P_1 is the identity and
        P_j = P_{j-1} - ([j-1]/[j]) P_{j-1} E_{N-j+1} P_{j-1}.
    At a root of unity this requires [j] != 0 for j <= k, i.e. ell > k.
    """
    if not 1 <= k <= N:
        raise ValueError(f"projector size {k} out of range for {N} strands")
    if backend.order is not None and backend.order.ell <= k:
        raise QNumberVanishes(
            f"[{backend.order.ell}] = 0 with ell = {backend.order.ell} <= k = {k}"
        )
    key = (N, k, backend.key)
    cached = _wj_cache.get(key)
    if cached is not None:
        return cached
    p = Element.unit(N, backend)
    _wj_cache[(N, 1, backend.key)] = ProjectorCache(N, 1, p)
    for j in range(2, k + 1):
        ratio = backend.qnum(j - 1) / backend.qnum(j)
        e = generator_element(N, N - j + 1, backend)
        p = p - (p * e * p).scale(ratio)
        _wj_cache[(N, j, backend.key)] = ProjectorCache(N, j, p)
    return _wj_cache[key]


def verify_projector(cache: ProjectorCache) -> list[tuple[str, bool]]:
    """Check idempotency, commutation, annihilation and absorption."""
    N, k = cache.strands, cache.size
    backend = cache.expansion.backend
    p = cache.expansion
    report: list[tuple[str, bool]] = []
    report.append(("P^2 = P", p * p == p))
    for i in range(1, N):
        e = generator_element(N, i, backend)
        if i <= N - k - 1:
            report.append((f"P E_{i} = E_{i} P", p * e == e * p))
        elif i >= N - k + 1:
            ok = (p * e).is_zero() and (e * p).is_zero()
            report.append((f"P E_{i} = E_{i} P = 0", ok))
    if k >= 2 and N - k >= 1:
        e = generator_element(N, N - k, backend)
        lhs = e * p * e
        prev = wenzl_jones(N, k - 1, backend).expansion
        rhs = (e * prev).scale(backend.qnum(k + 1) / backend.qnum(k))
        report.append((f"E_{N-k} P_{k} E_{N-k} absorption", lhs == rhs))
    return report


def wj_decomposition_check(N: int, k: int, backend: Backend = GENERIC) -> bool:
    """Check the expansion of P_k over P_{k-1} with alternating q-numbers.

    P_k = (1/[k]) * sum_{j=0}^{k-1} (-1)^j [k-j] P_{k-1} E_{N-k+1} ... E_{N-k+j}.
    """
    if k == 1:
        return wenzl_jones(N, 1, backend).expansion == Element.unit(N, backend)
    p_k = wenzl_jones(N, k, backend).expansion
    p_prev = wenzl_jones(N, k - 1, backend).expansion
    total = Element.zero(N, N, backend)
    chain = p_prev
    for j in range(0, k):
        coeff = backend.qnum(k - j) / backend.qnum(k)
        if j % 2:
            coeff = -coeff
        total = total + chain.scale(coeff)
        if j < k - 1:
            chain = chain * generator_element(N, N - k + 1 + j, backend)
    return total == p_k
