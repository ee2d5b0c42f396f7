"""Ultrametric balls in K and exact analytic geometry over them.

Balls are the ones the rest of the library reasons about: radii are powers
p^(-e) with e in (1/2)Z, and every containment or image computation is a
finite comparison of exact exponents.  The key facts used throughout:

* two balls are either nested or disjoint, and every point of a ball is a
  center of it;
* a rational map with no poles on a ball sends the ball exactly onto a
  ball, whose center is the image of the center and whose radius comes out
  of a Gauss norm;
* root counting in a ball reduces to the Newton polygon of the recentered
  numerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    POLE,
    Poly,
    RationalMap,
    count_roots_with_min_valuation,
    gauss_norm_exp,
)
from .errors import PoleInBallError
from .field import KElement, ValExp, uniformizer_power

__all__ = [
    "Ball",
    "Radius",
    "count_roots_in_ball",
    "distance_exp",
    "image_of_ball",
    "pairwise_deltas",
    "pole_free_on_ball",
    "sample_points",
    "sup_norm_exp_on_ball",
    "wdeg",
]


class Radius:
    """A radius p^(-exp) with exp in (1/2)Z, stored by its exponent.

    Order comparisons are by magnitude: r < s means r is the smaller
    radius, i.e. r.exp > s.exp.
    """

    __slots__ = ("exp",)

    exp: Fraction

    def __init__(self, exp):
        if isinstance(exp, ValExp):
            if exp.is_infinite:
                raise ValueError("a radius must be positive")
            exp = exp.exp
        e = Fraction(exp)
        if e.denominator not in (1, 2):
            raise ValueError(f"radius exponent must lie in (1/2)Z, got {e}")
        object.__setattr__(self, "exp", e)

    def __setattr__(self, name, value):
        raise AttributeError("Radius is immutable")

    @property
    def valexp(self) -> ValExp:
        return ValExp(self.exp)

    def divided_by_p(self, k: int = 1) -> "Radius":
        return Radius(self.exp + k)

    def __eq__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        return self.exp == other.exp

    def __hash__(self):
        return hash(("Radius", self.exp))

    def __lt__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        return self.exp > other.exp

    def __le__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        return self.exp >= other.exp

    def __gt__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        return self.exp < other.exp

    def __ge__(self, other):
        if not isinstance(other, Radius):
            return NotImplemented
        return self.exp <= other.exp

    def __str__(self):
        return f"p^(-{self.exp})" if self.exp >= 0 else f"p^{-self.exp}"

    def __repr__(self):
        return f"Radius({self.exp})"


def distance_exp(x: KElement, y: KElement) -> ValExp:
    """Valuation of x - y; encodes the ultrametric distance |x - y|."""
    return (x - y).valuation()


@dataclass(frozen=True)
class Ball:
    """A closed ball B(center, r) or an open ball D(center, r) in C_v.

    Set semantics: methods compare balls as subsets of C_v, so balls with
    different marked centers can be equal.
    """

    center: KElement
    radius: Radius
    closed: bool = True

    @property
    def p(self) -> int:
        return self.center.p

    @property
    def kind(self) -> str:
        return "closed" if self.closed else "open"

    def contains_point(self, x: KElement) -> bool:
        d = distance_exp(x, self.center)
        return d >= self.radius.exp if self.closed else d > self.radius.exp

    def contains_ball(self, other: "Ball") -> bool:
        d = distance_exp(other.center, self.center)
        if self.closed:
            return other.radius.exp >= self.radius.exp and d >= self.radius.exp
        # open outer ball: a closed inner ball must be strictly smaller
        if other.closed and not other.radius.exp > self.radius.exp:
            return False
        if not other.closed and not other.radius.exp >= self.radius.exp:
            return False
        return d > self.radius.exp

    def same_set(self, other: "Ball") -> bool:
        # over C_v a closed ball of radius in the value group never equals
        # an open one, so kinds must agree
        if self.closed != other.closed or self.radius != other.radius:
            return False
        d = distance_exp(other.center, self.center)
        return d >= self.radius.exp if self.closed else d > self.radius.exp

    def properly_contains(self, other: "Ball") -> bool:
        return self.contains_ball(other) and not self.same_set(other)

    def intersects(self, other: "Ball") -> bool:
        # in an ultrametric, intersecting balls are nested, so it suffices
        # to test whether either center lies in the other ball
        return self.contains_point(other.center) or other.contains_point(self.center)

    def disjoint_from(self, other: "Ball") -> bool:
        return not self.intersects(other)

    def __str__(self):
        tag = "B" if self.closed else "D"
        return f"{tag}({self.center}; {self.p}^(-{self.radius.exp}))"


def pairwise_deltas(centers) -> list:
    """delta_i = min over j != i of |a_i - a_j|, returned as Radius objects.

    Needs at least two centers; duplicate centers are rejected.
    """
    centers = list(centers)
    if len(centers) < 2:
        raise ValueError("need at least two centers to form pairwise distances")
    out = []
    for i, a in enumerate(centers):
        best = None
        for j, b in enumerate(centers):
            if i == j:
                continue
            d = distance_exp(a, b)
            if d.is_infinite:
                raise ValueError(f"duplicate centers at indices {i} and {j}")
            if best is None or d.exp > best:
                best = d.exp
        out.append(Radius(best))
    return out


def count_roots_in_ball(P: Poly, ball: Ball) -> int:
    """Number of roots of P in the ball, with multiplicity, over C_v.

    Recenters P at the ball's center and reads the count off the Newton
    polygon: valuation >= exp for a closed ball, > exp for an open one.
    """
    if P.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    shifted = P.recenter(ball.center)
    return count_roots_with_min_valuation(shifted, ball.radius.exp, strict=not ball.closed)


def pole_free_on_ball(f: RationalMap, ball: Ball) -> bool:
    """True when the reduced denominator of f has no zero in the ball."""
    if f.den.degree == 0:
        return True
    return count_roots_in_ball(f.den, ball) == 0


def sup_norm_exp_on_ball(f: RationalMap, ball: Ball) -> ValExp:
    """Exponent of sup |f| over the ball (maximum for closed balls).

    Requires f pole-free on the ball.  The denominator then has constant
    absolute value |den(center)| on the ball, so the sup is the Gauss norm
    of the recentered numerator divided by that constant.
    """
    if not pole_free_on_ball(f, ball):
        raise PoleInBallError(f"map has a pole on {ball}")
    num_exp = gauss_norm_exp(f.num.recenter(ball.center), ball.radius.exp, from_k=0)
    den_val = f.den(ball.center).valuation()
    return num_exp - den_val


def image_of_ball(f: RationalMap, ball: Ball) -> Ball:
    """The exact image f(ball), which is again a ball of the same kind.

    Center: f(center). Radius exponent: with f = P/Q and a the center, the
    numerator of f(z) - f(a) is g(z) = P(z)Q(a) - P(a)Q(z), which vanishes
    at a; the image radius is the Gauss norm of the recentered g over the
    terms of index >= 1, divided by |Q(a)|^2 (|Q| is constant on the ball).
    """
    if not pole_free_on_ball(f, ball):
        raise PoleInBallError(f"map has a pole on {ball}")
    a = ball.center
    pa = f.num(a)
    qa = f.den(a)
    g = f.num * qa - f.den * pa
    e = gauss_norm_exp(g.recenter(a), ball.radius.exp, from_k=1)
    if e.is_infinite:
        raise ValueError("constant map: the image of the ball is a point, not a ball")
    img_exp = e - qa.valuation() * 2
    return Ball(pa * qa.inverse(), Radius(img_exp), closed=ball.closed)


def wdeg(f: RationalMap, b: KElement, ball: Ball) -> int:
    """Number of solutions of f(z) = b in the ball, with multiplicity.

    b must lie in the image of the ball.  Counts roots of the numerator of
    f(z) - b; the denominator contributes none since f is pole-free there.
    """
    img = image_of_ball(f, ball)
    if not img.contains_point(b):
        raise ValueError(f"target {b} lies outside the image {img}")
    return count_roots_in_ball(f.num - f.den * b, ball)


def sample_points(ball: Ball, budget: int) -> list:
    """Deterministic K-rational points of the ball: the center first, then
    shells of decreasing radius, breadth-first.

    Shell j contributes center + u * pi^(2j) for u = 1..p-1, where pi is
    sqrt(p); shells start at the ball's radius exponent (one step inside
    for an open ball) and shrink by a factor of p each round.
    """
    if budget < 1:
        return []
    p = ball.p
    pts = [ball.center]
    j = ball.radius.exp if ball.closed else ball.radius.exp + 1
    while len(pts) < budget:
        scale = uniformizer_power(p, j)
        for u in range(1, p):
            pts.append(ball.center + scale * u)
            if len(pts) >= budget:
                break
        j += 1
    return pts
