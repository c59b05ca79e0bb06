"""Exact arithmetic over Q, Q[x] and Q[x]/(f), and ring maps between them.

Coefficients are ``gmpy2.mpq`` rationals.  Polynomials are immutable
:class:`UniPoly` values stored lowest degree first with no trailing zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "Rational",
    "rat",
    "UniPoly",
    "RingDescriptor",
    "RingElement",
    "RingMap",
    "RATIONALS",
    "poly_ring",
    "quotient_ring",
    "poly_shift",
    "poly_gcd",
    "poly_gcd_bezout",
    "poly_lcm",
    "crt_idempotents",
    "is_unit",
    "apply_ring_map",
    "factor_irreducible",
    "integer_roots",
    "root_multiplicity",
    "RingPoly",
    "X",
]

Rational = type(mpq(0))

_ZERO = mpq(0)
_ONE = mpq(1)


def rat(value) -> Rational:
    """Coerce ints, strings ``"p/q"`` and rationals to an exact rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return mpq(text)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or a fraction")
    return mpq(value)


class UniPoly:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs: list) -> "UniPoly":
        # caller guarantees mpq entries; only trims
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "UniPoly":
        return cls([0] * degree + [c])

    @classmethod
    def linear_root(cls, a) -> "UniPoly":
        """The monic polynomial ``x - a``."""
        return cls((-rat(a), 1))

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> Rational:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def monic(self) -> "UniPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = 1 / self.coeffs[-1]
        return UniPoly._raw([c * inv for c in self.coeffs])

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.to_string()!r})"

    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other):
        other = UniPoly._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-UniPoly._lift(other))

    def __rsub__(self, other):
        return UniPoly._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = rat(other)
            if c == 0:
                return UniPoly()
            return UniPoly._raw([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        if len(b) == 1:
            c = b[0]
            return UniPoly._raw([x * c for x in a])
        if len(a) == 1:
            c = a[0]
            return UniPoly._raw([x * c for x in b])
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = UniPoly._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        db = len(other.coeffs) - 1
        if len(self.coeffs) - 1 < db:
            return UniPoly(), self
        inv = 1 / other.coeffs[-1]
        rem = list(self.coeffs)
        bc = other.coeffs
        quot = [_ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = c * inv
                quot[k - db] = q
                off = k - db
                for j in range(db):
                    if bc[j]:
                        rem[off + j] -= q * bc[j]
            rem[k] = _ZERO
        return UniPoly._raw(quot), UniPoly._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "UniPoly") -> bool:
        """True if ``self`` divides ``other``."""
        if not self.coeffs:
            return not other.coeffs
        return not (other % self).coeffs

    def __call__(self, value):
        """Horner evaluation at a rational or composition with a polynomial."""
        if isinstance(value, UniPoly):
            acc = UniPoly()
            for c in reversed(self.coeffs):
                acc = acc * value + c
            return acc
        v = rat(value)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly._raw([c * i for i, c in enumerate(self.coeffs)][1:])

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return UniPoly.const(1) if self.coeffs else UniPoly()
        return self.exact_div(poly_gcd(self, self.derivative())).monic()

    def sort_key(self):
        return (self.degree, tuple(self.coeffs))


X = UniPoly((0, 1))


def poly_shift(p: UniPoly, c) -> UniPoly:
    """Return ``q`` with ``q(T) = p(T + c)`` (Taylor shift)."""
    c = rat(c)
    if c == 0 or p.degree <= 0:
        return p
    out = [_ZERO] * len(p.coeffs)
    # Horner with (T + c): repeated synthetic multiplication
    for a in reversed(p.coeffs):
        for i in range(len(out) - 1, 0, -1):
            out[i] = out[i - 1] + c * out[i]
        out[0] = a + c * out[0]
    return UniPoly._raw(out)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_gcd_bezout(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Extended Euclid: monic ``g`` with ``g = u*a + v*b``.

    >>> g, u, v = poly_gcd_bezout(UniPoly([-1, 1]), UniPoly([1, 1]))
    >>> g, u, v
    (UniPoly('1'), UniPoly('-1/2'), UniPoly('1/2'))
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = a, b
    s0, s1 = UniPoly.const(1), UniPoly()
    t0, t1 = UniPoly(), UniPoly.const(1)
    while r1.coeffs:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


# -- factorization (delegated to sympy) -----------------------------------

def _to_sympy(p: UniPoly):
    import sympy

    t = sympy.Symbol("t")
    coeffs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(p.coeffs)]
    return sympy.Poly(coeffs, t, domain="QQ")


def _from_sympy(sp) -> UniPoly:
    return UniPoly(mpq(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs()))


@lru_cache(maxsize=4096)
def _factor_cached(coeffs: tuple) -> tuple:
    p = UniPoly._raw(list(coeffs))
    _, factors = _to_sympy(p).factor_list()
    out = [(_from_sympy(f).monic(), int(m)) for f, m in factors]
    out.sort(key=lambda fm: fm[0].sort_key())
    return tuple(out)


def factor_irreducible(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors over Q with multiplicities, canonically sorted."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    return list(_factor_cached(p.monic().coeffs))


def integer_roots(p: UniPoly) -> list[int]:
    """Sorted integer roots of a nonzero rational polynomial."""
    roots = []
    for f, _ in factor_irreducible(p):
        if f.degree == 1:
            r = -f.coeffs[0]
            if r.denominator == 1:
                roots.append(int(r))
    return sorted(roots)


def root_multiplicity(p: UniPoly, r) -> int:
    """Multiplicity of ``r`` as a root of the nonzero polynomial ``p``."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    lin = UniPoly.linear_root(r)
    m = 0
    while p.degree >= 1:
        q, rem = divmod(p, lin)
        if rem:
            break
        p, m = q, m + 1
    return m


# -- rings ------------------------------------------------------------------

@dataclass(frozen=True)
class RingDescriptor:
    """One of Q, Q[var] or Q[var]/(modulus) with a monic modulus."""

    kind: str  # "rationals" | "poly" | "quotient"
    var: str = "x"
    modulus: UniPoly | None = None

    def __post_init__(self):
        if self.kind not in ("rationals", "poly", "quotient"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "quotient":
            m = self.modulus
            if m is None or m.degree < 1 or m.lc != 1:
                raise ValueError("quotient modulus must be monic of degree >= 1")
        elif self.modulus is not None:
            raise ValueError(f"{self.kind} ring takes no modulus")

    def __str__(self):
        if self.kind == "rationals":
            return "QQ"
        if self.kind == "poly":
            return f"QQ[{self.var}]"
        return f"QQ[{self.var}]/({self.modulus.to_string(self.var)})"

    @property
    def is_rationals(self) -> bool:
        return self.kind == "rationals"

    @property
    def is_poly(self) -> bool:
        return self.kind == "poly"

    @property
    def is_quotient(self) -> bool:
        return self.kind == "quotient"

    @property
    def is_pid(self) -> bool:
        return self.kind in ("rationals", "poly")

    @property
    def is_field(self) -> bool:
        if self.kind == "rationals":
            return True
        if self.kind == "poly":
            return False
        f = factor_irreducible(self.modulus)
        return len(f) == 1 and f[0][1] == 1

    @property
    def is_integral(self) -> bool:
        return self.kind == "poly" or self.is_field

    @property
    def q_dim(self) -> int | None:
        """Dimension over Q, or None for Q[x]."""
        if self.kind == "rationals":
            return 1
        if self.kind == "quotient":
            return self.modulus.degree
        return None

    @property
    def is_local_artinian(self) -> bool:
        if self.kind == "rationals":
            return True
        if self.kind == "poly":
            return False
        return len(factor_irreducible(self.modulus)) == 1

    @property
    def breadth(self) -> int:
        """Least e with m^e = 0 for a local Artinian ring."""
        if self.kind == "rationals":
            return 1
        if not self.is_local_artinian:
            raise ValueError(f"{self} is not local Artinian")
        return factor_irreducible(self.modulus)[0][1]

    @property
    def residue_degree(self) -> int:
        """Degree of the residue field over Q; 1 for non-local quotients."""
        if self.kind == "quotient" and self.is_local_artinian:
            return factor_irreducible(self.modulus)[0][0].degree
        return 1

    def reduce(self, p: UniPoly) -> UniPoly:
        if self.kind == "quotient":
            if p.degree >= self.modulus.degree:
                return p % self.modulus
            return p
        if self.kind == "rationals" and p.degree > 0:
            raise ValueError(f"{p} is not a constant in QQ")
        return p

    def element(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring != self:
                raise ValueError(f"element of {value.ring} used in {self}")
            return value
        p = value if isinstance(value, UniPoly) else UniPoly.const(value)
        return RingElement(self, self.reduce(p))

    def zero(self) -> "RingElement":
        return RingElement(self, UniPoly())

    def one(self) -> "RingElement":
        return RingElement(self, UniPoly.const(1))

    def gen(self) -> "RingElement":
        if self.kind == "rationals":
            raise ValueError("QQ has no generator")
        return self.element(X)

    def q_basis_mul_matrix(self, p: UniPoly) -> list[list[Rational]]:
        """Matrix of multiplication by ``p`` on the Q-basis 1, x, ..., x^{d-1}."""
        d = self.q_dim
        if d is None:
            raise ValueError(f"{self} is not finite-dimensional over QQ")
        if self.kind == "rationals":
            return [[p.coeff(0)]]
        cols = []
        cur = self.reduce(p)
        for _ in range(d):
            cols.append([cur.coeff(i) for i in range(d)])
            cur = self.reduce(cur * X)
        return [[cols[j][i] for j in range(d)] for i in range(d)]


RATIONALS = RingDescriptor("rationals")


def poly_ring(var: str = "x") -> RingDescriptor:
    return RingDescriptor("poly", var)


def quotient_ring(modulus: UniPoly, var: str = "x") -> RingDescriptor:
    return RingDescriptor("quotient", var, modulus.monic())


@dataclass(frozen=True)
class RingElement:
    ring: RingDescriptor
    value: UniPoly

    def __post_init__(self):
        if self.ring.kind == "quotient" and self.value.degree >= self.ring.modulus.degree:
            raise ValueError("quotient element not reduced")
        if self.ring.kind == "rationals" and self.value.degree > 0:
            raise ValueError("non-constant element of QQ")

    def _other(self, other) -> UniPoly:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.value
        return UniPoly._lift(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.reduce(self.value + self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.reduce(self.value - self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.reduce(self._other(other) - self.value))

    def __neg__(self):
        return RingElement(self.ring, -self.value)

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.reduce(self.value * self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def inverse(self) -> "RingElement":
        if not is_unit(self):
            raise ZeroDivisionError(f"{self} is not a unit in {self.ring}")
        if self.ring.kind == "quotient":
            _, u, _ = poly_gcd_bezout(self.value, self.ring.modulus)
            return RingElement(self.ring, self.ring.reduce(u))
        return RingElement(self.ring, UniPoly.const(1 / self.value.coeffs[0]))

    def __str__(self):
        return self.value.to_string(self.ring.var)


def is_unit(a: RingElement) -> bool:
    """Unit test: nonzero in Q, nonzero constant in Q[x], coprime to the modulus."""
    kind = a.ring.kind
    if kind == "rationals":
        return not a.value.is_zero()
    if kind == "poly":
        return a.value.degree == 0
    if a.value.is_zero():
        return False
    return poly_gcd(a.value, a.ring.modulus).degree == 0


@dataclass(frozen=True)
class RingMap:
    """Specialization or base change between supported rings.

    ``kind`` is ``"evaluate"`` (``point`` set), ``"project"`` (to the
    target quotient) or ``"inclusion"``.
    """

    source: RingDescriptor
    target: RingDescriptor
    kind: str
    point: Rational | None = None

    def __post_init__(self):
        s, t = self.source, self.target
        if self.kind == "evaluate":
            if self.point is None or not t.is_rationals:
                raise ValueError("evaluate-at needs a point and target QQ")
            if s.is_quotient and s.modulus(self.point) != 0:
                raise ValueError(f"modulus of {s} does not vanish at {self.point}")
            if s.is_rationals:
                raise ValueError("cannot evaluate a constant ring")
        elif self.kind == "project":
            if not t.is_quotient:
                raise ValueError("project-to-quotient needs a quotient target")
            if s.is_quotient and not t.modulus.divides(s.modulus):
                raise ValueError("target modulus must divide source modulus")
            if s.is_rationals:
                raise ValueError("project-to-quotient needs a polynomial source")
        elif self.kind == "inclusion":
            if not (s.is_rationals or s == t):
                raise ValueError(f"no inclusion {s} -> {t}")
        else:
            raise ValueError(f"unknown ring map kind {self.kind!r}")

    @classmethod
    def evaluate_at(cls, source: RingDescriptor, a) -> "RingMap":
        return cls(source, RATIONALS, "evaluate", rat(a))

    @classmethod
    def project_to_quotient(cls, source: RingDescriptor, modulus: UniPoly) -> "RingMap":
        return cls(source, quotient_ring(modulus, source.var), "project")

    @classmethod
    def inclusion(cls, source: RingDescriptor, target: RingDescriptor) -> "RingMap":
        return cls(source, target, "inclusion")

    def apply_value(self, p: UniPoly) -> UniPoly:
        if self.kind == "evaluate":
            return UniPoly.const(p(self.point))
        return self.target.reduce(p)

    def __call__(self, a: RingElement) -> RingElement:
        return apply_ring_map(a, self)

    def __str__(self):
        if self.kind == "evaluate":
            return f"{self.source.var}={self.point}"
        if self.kind == "project":
            return f"{self.target}"
        return f"{self.source}->{self.target}"


def apply_ring_map(a: RingElement, m: RingMap) -> RingElement:
    if a.ring != m.source:
        raise ValueError(f"element of {a.ring} does not live in {m.source}")
    return RingElement(m.target, m.apply_value(a.value))


def crt_idempotents(factors: Sequence[UniPoly]) -> list[RingElement]:
    """Orthogonal idempotents of Q[T]/(prod factors), one per factor.

    ``e_i`` is 1 modulo ``factors[i]`` and 0 modulo every other factor.
    """
    if not factors:
        raise ValueError("need at least one factor")
    fs = [f.monic() for f in factors]
    if any(f.degree < 1 for f in fs):
        raise ValueError("factors must be non-constant")
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if poly_gcd(fs[i], fs[j]).degree > 0:
                raise ValueError(f"factors {fs[i]} and {fs[j]} are not coprime")
    modulus = UniPoly.const(1)
    for f in fs:
        modulus = modulus * f
    ring = quotient_ring(modulus, "T")
    out = []
    for f in fs:
        cofactor = modulus.exact_div(f)
        _, u, _ = poly_gcd_bezout(cofactor, f)
        out.append(ring.element(ring.reduce(u * cofactor)))
    return out


class RingPoly:
    """Polynomial in ``T`` whose coefficients lie in a supported ring.

    Coefficients are reduced ring values (``UniPoly`` in the ring variable),
    lowest degree first.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingDescriptor, coeffs: Iterable):
        cs = []
        for c in coeffs:
            if isinstance(c, RingElement):
                c = ring.element(c).value
            elif not isinstance(c, UniPoly):
                c = UniPoly.const(c)
            cs.append(ring.reduce(c))
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def from_rational(cls, ring: RingDescriptor, p: UniPoly) -> "RingPoly":
        """Lift a polynomial in T with rational coefficients."""
        return cls(ring, [UniPoly.const(c) for c in p.coeffs])

    @classmethod
    def linear(cls, ring: RingDescriptor, root) -> "RingPoly":
        """``T - root`` for a ring value ``root``."""
        r = ring.element(root).value
        return cls(ring, [-r, UniPoly.const(1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == UniPoly.const(1)

    def coeff(self, i: int) -> UniPoly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else UniPoly()

    def __eq__(self, other):
        if not isinstance(other, RingPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"RingPoly({self.to_string()!r} over {self.ring})"

    def to_string(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = c.to_string(self.ring.var)
            if not mono:
                parts.append(cs if c.degree == 0 else f"({cs})")
            elif c == UniPoly.const(1):
                parts.append(mono)
            elif c == UniPoly.const(-1):
                parts.append(f"-{mono}")
            elif c.degree == 0:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _check(self, other: "RingPoly"):
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "RingPoly"):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RingPoly(self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "RingPoly"):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RingPoly(self.ring, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return RingPoly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other: "RingPoly"):
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return RingPoly(self.ring, [])
        out = [UniPoly()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return RingPoly(self.ring, out)

    def __pow__(self, e: int):
        out = RingPoly(self.ring, [UniPoly.const(1)])
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> "RingPoly":
        c = self.ring.element(c).value
        return RingPoly(self.ring, [a * c for a in self.coeffs])

    def evaluate(self, value) -> RingElement:
        """Value at ``T = value`` for a ring value."""
        v = self.ring.element(value).value
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = self.ring.reduce(acc * v + c)
        return RingElement(self.ring, acc)

    def shift(self, value) -> "RingPoly":
        """``P(T + value)`` for a ring value."""
        v = self.ring.element(value).value
        out: list[UniPoly] = []
        for a in reversed(self.coeffs):
            # out <- out * (T + v) + a
            new = [UniPoly()] * (len(out) + 1)
            for i, c in enumerate(out):
                new[i + 1] = new[i + 1] + c
                new[i] = new[i] + self.ring.reduce(c * v)
            new[0] = new[0] + a
            out = new
        return RingPoly(self.ring, out)

    def slices(self) -> list[UniPoly]:
        """Rational polynomials ``s_m(T)`` with ``P = sum_m x^m s_m(T)``."""
        if not self.coeffs:
            return []
        width = max(c.degree for c in self.coeffs) + 1
        return [UniPoly([c.coeff(m) for c in self.coeffs]) for m in range(width)]

    @classmethod
    def from_slices(cls, ring: RingDescriptor, slices: Sequence[UniPoly]) -> "RingPoly":
        deg = max((s.degree for s in slices), default=-1)
        return cls(ring, [UniPoly([s.coeff(t) for s in slices]) for t in range(deg + 1)])

    def divmod_rational(self, d: UniPoly) -> tuple["RingPoly", "RingPoly"]:
        """Division by a monic polynomial with rational coefficients."""
        if d.is_zero() or d.lc != 1:
            raise ValueError("divisor must be monic")
        qs, rs = [], []
        for s in self.slices():
            q, r = divmod(s, d)
            qs.append(q)
            rs.append(r)
        return RingPoly.from_slices(self.ring, qs), RingPoly.from_slices(self.ring, rs)

    def map(self, m: RingMap) -> "RingPoly":
        if m.source != self.ring:
            raise ValueError(f"map source {m.source} differs from {self.ring}")
        return RingPoly(m.target, [m.apply_value(c) for c in self.coeffs])
