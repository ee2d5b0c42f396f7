"""Polynomials and rational maps over K, with valuation-theoretic tools.

Root counting never factorizes anything: the number of roots of a
polynomial in a ball is read off the lower Newton polygon of the
recentered polynomial, and sup norms over balls come from Gauss norms.
Both are exact integer/Fraction computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .field import KElement, ValExp

__all__ = [
    "POLE",
    "NewtonPolygon",
    "Poly",
    "PoleMarker",
    "RationalMap",
    "count_roots_with_min_valuation",
    "gauss_norm_exp",
    "newton_polygon",
    "poly_gcd",
]


class Poly:
    """Dense polynomial over K with exact coefficients.

    Coefficients are stored ascending; trailing zeros are stripped, so the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("p", "coeffs")

    p: int
    coeffs: tuple

    def __init__(self, p: int, coeffs=()):
        elems = []
        for c in coeffs:
            if isinstance(c, KElement):
                if c.p != p:
                    raise ValueError(f"mixed primes: {p} and {c.p}")
                elems.append(c)
            else:
                elems.append(KElement(p, c))
        while elems and elems[-1].is_zero:
            elems.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(elems))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "Poly":
        return cls(p, (1,))

    @classmethod
    def constant(cls, p: int, c) -> "Poly":
        return cls(p, (c,))

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls(p, (0, 1))

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> KElement:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> KElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return KElement(self.p)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError(f"mixed primes: {self.p} and {other.p}")
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Fraction, KElement)):
            return Poly(self.p, (other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.p, [self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.p, [self.coeff(k) - o.coeff(k) for k in range(n)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Poly(self.p, [-c for c in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Poly.zero(self.p)
        out = [KElement(self.p)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            return NotImplemented
        out = Poly.one(self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dn = o.degree
        lead_inv = o.lead.inverse()
        quot = [KElement(self.p)] * max(0, len(rem) - dn)
        while len(rem) - 1 >= dn:
            k = len(rem) - 1 - dn
            c = rem[-1] * lead_inv
            quot[k] = c
            for j, oc in enumerate(o.coeffs):
                rem[k + j] = rem[k + j] - c * oc
            while rem and rem[-1].is_zero:
                rem.pop()
        return Poly(self.p, quot), Poly(self.p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division is not exact")
        return q

    # -- evaluation and calculus ---------------------------------------------

    def __call__(self, x) -> KElement:
        if not isinstance(x, KElement):
            x = KElement(self.p, x)
        acc = KElement(self.p)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(self.p, [k * c for k, c in enumerate(self.coeffs)][1:])

    def recenter(self, a) -> "Poly":
        """Coefficients of the same polynomial in powers of (z - a).

        Computed by repeated synthetic division by (z - a); exact.
        """
        if not isinstance(a, KElement):
            a = KElement(self.p, a)
        work = list(self.coeffs)
        out = []
        while work:
            # divide `work` by (z - a): quotient q, remainder carry
            q = [None] * (len(work) - 1)
            carry = work[-1]
            for k in range(len(work) - 2, -1, -1):
                q[k] = carry
                carry = work[k] + a * carry
            out.append(carry)
            work = q
        return Poly(self.p, out)

    # -- normal forms ------------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integral parts."""
        nums, dens = [], []
        for c in self.coeffs:
            for fr in (c.a, c.b):
                if fr:
                    nums.append(abs(fr.numerator))
                    dens.append(fr.denominator)
        if not nums:
            return Fraction(1)
        return Fraction(gcd(*nums), lcm(*dens))

    def primitive_part(self) -> "Poly":
        if self.is_zero:
            return self
        return self * (1 / self.content())

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        if self.lead == 1:
            return self
        return self * self.lead.inverse()

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (Poly, int, Fraction, KElement)) else None
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            elif k == 1:
                terms.append("z" if cs == "1" else f"{cs}*z")
            else:
                terms.append(f"z^{k}" if cs == "1" else f"{cs}*z^{k}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly(p={self.p}, {self})"


# primes = 3 mod 4, so square roots mod q are a single pow() when they exist
_PRETEST_PRIMES = (1000003, 1000039, 1000099, 1000151)


def _coeffs_mod_q(P: Poly, q: int, s: int | None):
    out = []
    for c in P.coeffs:
        val = c.a.numerator * pow(c.a.denominator, -1, q)
        if c.b:
            if s is None:
                return None
            val += c.b.numerator * pow(c.b.denominator, -1, q) * s
        out.append(val % q)
    if out and out[-1] == 0:
        return None  # leading coefficient vanished; degree argument breaks
    return out


def _gcd_degree_mod_q(av, bv, q: int) -> int:
    while bv:
        inv_lead = pow(bv[-1], -1, q)
        av = list(av)
        while len(av) >= len(bv):
            factor = av[-1] * inv_lead % q
            shift = len(av) - len(bv)
            for i, bc in enumerate(bv):
                av[i + shift] = (av[i + shift] - factor * bc) % q
            while av and av[-1] == 0:
                av.pop()
        av, bv = bv, av
    return len(av) - 1


def _provably_coprime(A: Poly, B: Poly) -> bool:
    """Sound one-sided test: True certifies gcd(A, B) = 1 over K.

    Reduces both polynomials modulo a small prime q (sending sqrt(p) to a
    square root of p mod q) and runs Euclid there.  A trivial gcd mod q
    forces a nonzero resultant, hence coprimality over K.  Any failed
    reduction just tries the next q; False means only "not certified"."""
    needs_sqrt = any(c.b for c in A.coeffs) or any(c.b for c in B.coeffs)
    for q in _PRETEST_PRIMES:
        s = None
        if needs_sqrt:
            if pow(A.p % q, (q - 1) // 2, q) != 1:
                continue
            s = pow(A.p % q, (q + 1) // 4, q)
            if s * s % q != A.p % q:
                continue
        try:
            av = _coeffs_mod_q(A, q, s)
            bv = _coeffs_mod_q(B, q, s)
        except ValueError:
            continue  # q divides some coefficient denominator
        if av is None or bv is None:
            continue
        return _gcd_degree_mod_q(av, bv, q) == 0
    return False


def poly_gcd(A: Poly, B: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm.

    A modular pretest certifies the (typical) coprime case cheaply; the
    exact remainder sequence runs otherwise, reduced to primitive form at
    every step to keep the Fraction coefficients from blowing up.
    """
    if A.p != B.p:
        raise ValueError("mixed primes")
    if A.is_zero:
        return B.monic()
    if B.is_zero:
        return A.monic()
    if A.degree == 0 or B.degree == 0:
        return Poly.one(A.p)
    if _provably_coprime(A, B):
        return Poly.one(A.p)
    A = A.primitive_part()
    B = B.primitive_part()
    while not B.is_zero:
        r = A % B
        A, B = B, (r if r.is_zero else r.primitive_part())
    return A.monic()


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower Newton polygon of a nonzero polynomial.

    ord0 is the multiplicity of the root at 0; segments are (slope, length)
    pairs with strictly increasing slopes.  A segment of slope -e and
    horizontal length L certifies exactly L roots of valuation e, counted
    with multiplicity, in an algebraic closure.
    """

    ord0: int
    segments: tuple

    @property
    def total_roots(self) -> int:
        return self.ord0 + sum(length for _, length in self.segments)


def newton_polygon(P: Poly) -> NewtonPolygon:
    if P.is_zero:
        raise ValueError("the zero polynomial has no Newton polygon")
    pts = []
    for k, c in enumerate(P.coeffs):
        if not c.is_zero:
            pts.append((Fraction(k), c.valuation().exp))
    ord0 = int(pts[0][0])
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            # pop the middle point when it is on or above the chord
            if (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segments.append(((y1 - y0) / (x1 - x0), int(x1 - x0)))
    return NewtonPolygon(ord0=ord0, segments=tuple(segments))


def count_roots_with_min_valuation(P: Poly, min_exp, strict: bool) -> int:
    """Roots of P (with multiplicity, in an algebraic closure) of valuation
    >= min_exp, or > min_exp when strict.  Exact, via the Newton polygon."""
    np_ = newton_polygon(P)
    min_exp = Fraction(min_exp)
    count = np_.ord0
    for slope, length in np_.segments:
        root_exp = -slope
        if root_exp > min_exp or (not strict and root_exp == min_exp):
            count += length
    return count


def gauss_norm_exp(P: Poly, radius_exp, from_k: int = 0) -> ValExp:
    """Exponent of the Gauss norm of P at radius p^(-radius_exp).

    Returns min over k >= from_k of v(c_k) + k*radius_exp, which encodes the
    sup of |P| over the closed ball of that radius about 0 (restricted to the
    terms of index >= from_k).  Infinite when no such term exists.
    """
    radius_exp = Fraction(radius_exp)
    best = None
    for k, c in enumerate(P.coeffs):
        if k < from_k or c.is_zero:
            continue
        e = c.valuation().exp + k * radius_exp
        if best is None or e < best:
            best = e
    return ValExp(best)


class PoleMarker:
    """Sentinel returned when a rational map is evaluated at a pole."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"


POLE = PoleMarker()


class RationalMap:
    """Quotient of polynomials in canonical form: reduced, monic denominator."""

    __slots__ = ("num", "den")

    num: Poly
    den: Poly

    def __init__(self, num: Poly, den: Poly | None = None):
        if not isinstance(num, Poly):
            raise TypeError("num must be a Poly")
        if den is None:
            den = Poly.one(num.p)
        if not isinstance(den, Poly):
            raise TypeError("den must be a Poly")
        if num.p != den.p:
            raise ValueError("mixed primes")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            num, den = Poly.zero(num.p), Poly.one(num.p)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            if den.lead != 1:
                s = den.lead.inverse()
                num = num * s
                den = den * s
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMap is immutable")

    @property
    def p(self) -> int:
        return self.num.p

    @classmethod
    def constant(cls, p: int, c) -> "RationalMap":
        return cls(Poly.constant(p, c))

    @classmethod
    def identity(cls, p: int) -> "RationalMap":
        return cls(Poly.x(p))

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def degrees(self) -> tuple:
        return (self.num.degree, self.den.degree)

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalMap):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, Poly):
            return RationalMap(other)
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Fraction, KElement)):
            return RationalMap(Poly.constant(self.p, other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalMap(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalMap(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalMap(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalMap(-self.num, self.den)

    def derivative(self) -> "RationalMap":
        return RationalMap(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    # -- evaluation -----------------------------------------------------------

    def eval(self, x):
        """Value at x, or POLE when the (reduced) denominator vanishes."""
        if not isinstance(x, KElement):
            x = KElement(self.p, x)
        d = self.den(x)
        if d.is_zero:
            return POLE
        return self.num(x) * d.inverse()

    __call__ = eval

    def derivative_at(self, x):
        """Derivative value at x without building the reduced derivative map."""
        if not isinstance(x, KElement):
            x = KElement(self.p, x)
        d = self.den(x)
        if d.is_zero:
            return POLE
        n = self.num(x)
        dn = self.num.derivative()(x)
        dd = self.den.derivative()(x)
        return (dn * d - n * dd) * (d * d).inverse()

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalMap({self})"
