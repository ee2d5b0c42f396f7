"""Fixed-point analysis of glued maps: classification, refinement, orbits.

A disk's behavior under F is decided purely from exact data: the image of
the disk and the weighted degree of F over it.  Strict contraction or a
degree >= 2 surjection certifies a unique attracting fixed point; a
bijective expansion certifies a unique repelling one; a bijection of the
disk onto itself means any fixed points are indifferent, and existence is
additionally certified when |F'(center) - 1| = 1.

All radii in this module are powers of p, so image radii automatically lie
in the value group |C_v^x|; the surjectivity criteria need that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import RationalMap
from .errors import HenselConditionError, PoleInBallError
from .field import KElement, ValExp, reduce_mod
from .geometry import Ball, Radius, image_of_ball, pole_free_on_ball, wdeg
from .gluing import check_c3_hypotheses

__all__ = [
    "ATTRACTING",
    "CensusReport",
    "CountResult",
    "DiskBehavior",
    "FixedPointCensus",
    "INCONCLUSIVE",
    "INDIFFERENT",
    "Multiplier",
    "OrbitStep",
    "REPELLING",
    "Witness",
    "WitnessResult",
    "classify_disk",
    "epsilon_for_census",
    "hensel_fixed_point",
    "multiplier",
    "orbit",
    "suggest_witness",
    "verify_census",
]

ATTRACTING = "attracting"
REPELLING = "repelling"
INDIFFERENT = "indifferent"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Multiplier:
    """Derivative at a fixed point, tagged by |value| versus 1."""

    value: KElement
    kind: str


def multiplier(f: RationalMap, x) -> Multiplier:
    """Exact multiplier f'(x) at a verified fixed point x."""
    if not isinstance(x, KElement):
        x = KElement(f.p, x)
    fx = f.eval(x)
    if not isinstance(fx, KElement) or fx != x:
        raise ValueError(f"{x} is not a fixed point")
    lam = f.derivative_at(x)
    v = lam.valuation()
    if v > 0:
        kind = ATTRACTING
    elif v < 0:
        kind = REPELLING
    else:
        kind = INDIFFERENT
    return Multiplier(value=lam, kind=kind)


@dataclass(frozen=True)
class DiskBehavior:
    """Classification of an open disk under F, with the evidence used."""

    kind: str
    image: Ball
    wdeg: int | None = None
    existence_certified: bool | None = None
    derivative_at_center: KElement | None = None


def classify_disk(F: RationalMap, U: Ball) -> DiskBehavior:
    """Trichotomy for an open disk U.

    Attracting: F(U) a proper subdisk of U, or F(U) = U with wdeg >= 2.
    Repelling: F(U) a proper superdisk of U with wdeg(F, center, U) = 1.
    Indifferent (bijective): F(U) = U with wdeg 1; any fixed points are
    indifferent, and existence is certified iff |F'(center) - 1| = 1.
    Anything else (including F(U) disjoint from U) is inconclusive.
    """
    if U.closed:
        raise ValueError("classification requires an open disk")
    if not pole_free_on_ball(F, U):
        raise PoleInBallError(f"map has a pole on {U}")
    img = image_of_ball(F, U)
    if img.disjoint_from(U):
        return DiskBehavior(kind=INCONCLUSIVE, image=img)
    if U.properly_contains(img):
        d = wdeg(F, img.center, U)
        return DiskBehavior(kind=ATTRACTING, image=img, wdeg=d)
    if img.same_set(U):
        d = wdeg(F, U.center, U)
        if d >= 2:
            return DiskBehavior(kind=ATTRACTING, image=img, wdeg=d)
        lam = F.derivative_at(U.center)
        certified = isinstance(lam, KElement) and (lam - 1).valuation() == 0
        return DiskBehavior(
            kind=INDIFFERENT,
            image=img,
            wdeg=d,
            existence_certified=certified,
            derivative_at_center=lam if isinstance(lam, KElement) else None,
        )
    if img.properly_contains(U):
        d = wdeg(F, U.center, U)
        if d == 1:
            return DiskBehavior(kind=REPELLING, image=img, wdeg=d)
        return DiskBehavior(kind=INCONCLUSIVE, image=img, wdeg=d)
    return DiskBehavior(kind=INCONCLUSIVE, image=img)


@dataclass(frozen=True)
class Witness:
    """One disk expected to isolate one fixed point of a given kind."""

    ball_index: int
    disk: Ball
    expected: str


@dataclass(frozen=True)
class FixedPointCensus:
    """Expected counts (attracting, repelling, indifferent) per ball, with
    the witness disks that exhibit them."""

    counts: tuple
    witnesses: tuple


@dataclass(frozen=True)
class WitnessResult:
    ball_index: int
    disk: Ball
    expected: str
    got: str
    existence_certified: bool | None
    c3_ok: bool | None
    ok: bool


@dataclass(frozen=True)
class CountResult:
    index: int
    expected: tuple
    got: tuple
    ok: bool


@dataclass(frozen=True)
class CensusReport:
    witnesses: tuple
    counts: tuple
    passes: bool


def verify_census(F: RationalMap, models, census: FixedPointCensus) -> CensusReport:
    """Classify every witness disk and compare aggregated counts per ball.

    Structural problems (witness outside its ball, overlapping witnesses,
    bad kind tags) are caller errors and raise; classification mismatches
    are reported, never raised.  Indifferent witnesses additionally require
    certified existence and the exact indifferent-case hypothesis check.
    """
    models = list(models)
    n = len(models)
    if len(census.counts) != n:
        raise ValueError(f"census lists {len(census.counts)} count triples for {n} balls")
    wits = list(census.witnesses)
    for w in wits:
        if w.expected not in (ATTRACTING, REPELLING, INDIFFERENT):
            raise ValueError(f"unknown expected kind {w.expected!r}")
        if not (0 <= w.ball_index < n):
            raise ValueError(f"witness ball index {w.ball_index} out of range")
        if w.disk.closed:
            raise ValueError("witness disks must be open")
        if not models[w.ball_index].domain.contains_ball(w.disk):
            raise ValueError(
                f"witness disk {w.disk} is not inside ball {w.ball_index}"
            )
    for i, wa in enumerate(wits):
        for wb in wits[i + 1:]:
            if not wa.disk.disjoint_from(wb.disk):
                raise ValueError(f"witness disks {wa.disk} and {wb.disk} overlap")

    wresults = []
    got_counts = [[0, 0, 0] for _ in range(n)]
    slot = {ATTRACTING: 0, REPELLING: 1, INDIFFERENT: 2}
    for w in wits:
        behavior = classify_disk(F, w.disk)
        got = behavior.kind
        ok = got == w.expected
        c3_ok = None
        if w.expected == INDIFFERENT:
            c3_ok = check_c3_hypotheses(models, w.ball_index)
            ok = ok and behavior.existence_certified is True and c3_ok
        if got in slot:
            got_counts[w.ball_index][slot[got]] += 1
        wresults.append(
            WitnessResult(
                ball_index=w.ball_index,
                disk=w.disk,
                expected=w.expected,
                got=got,
                existence_certified=behavior.existence_certified,
                c3_ok=c3_ok,
                ok=ok,
            )
        )

    cresults = []
    for i in range(n):
        expected = tuple(int(x) for x in census.counts[i])
        got = tuple(got_counts[i])
        cresults.append(CountResult(index=i, expected=expected, got=got, ok=expected == got))

    passes = all(w.ok for w in wresults) and all(c.ok for c in cresults)
    return CensusReport(witnesses=tuple(wresults), counts=tuple(cresults), passes=passes)


def hensel_fixed_point(F: RationalMap, start, target_exp, max_iter: int = 64) -> KElement:
    """Newton refinement of a fixed point of F from a seed satisfying the
    Hensel condition v(G(start)) > 2 v(G'(start)) for G = F - z.

    Iterates z <- z - G(z)/G'(z) until v(G(z)) >= target_exp (checked by
    exact evaluation).  Iterates are rounded to a generous p-adic working
    precision so coordinate heights stay bounded; the final exactness
    check is unaffected by the rounding.
    """
    if not isinstance(start, KElement):
        start = KElement(F.p, start)
    if isinstance(target_exp, ValExp):
        if target_exp.is_infinite:
            raise ValueError("target exponent must be finite")
        target = target_exp.exp
    else:
        target = Fraction(target_exp)
    G = F - RationalMap.identity(F.p)
    # working precision: far above the target so rounding never disturbs
    # the valuations the iteration reasons about
    prec = int(2 * target) + 128 + F.degree

    z = start
    gz = G.eval(z)
    if not isinstance(gz, KElement):
        raise HenselConditionError("seed point is a pole of the map")
    if gz.valuation() >= target:
        return z
    gpz = G.derivative_at(z)
    if not isinstance(gpz, KElement) or gpz.is_zero:
        raise HenselConditionError("G' vanishes at the seed point")
    if not gz.valuation() > gpz.valuation() * 2:
        raise HenselConditionError(
            f"Hensel condition fails at seed: v(G) = {gz.valuation()}, v(G') = {gpz.valuation()}"
        )
    for _ in range(max_iter):
        z = _round_point(z - gz * gpz.inverse(), prec)
        gz = G.eval(z)
        if not isinstance(gz, KElement):
            raise HenselConditionError("iteration stepped onto a pole")
        if gz.valuation() >= target:
            return z
        gpz = G.derivative_at(z)
        if not isinstance(gpz, KElement) or gpz.is_zero:
            raise HenselConditionError("G' vanished during the iteration")
    raise HenselConditionError(f"no convergence to exponent {target} in {max_iter} steps")


def _round_point(z: KElement, prec: int) -> KElement:
    # skip tiny representatives; round only when heights grow
    h = max(
        z.a.numerator.bit_length(),
        z.a.denominator.bit_length(),
        z.b.numerator.bit_length(),
        z.b.denominator.bit_length(),
    )
    if h <= 8 * prec:
        return z
    return reduce_mod(z, prec)


@dataclass(frozen=True)
class OrbitStep:
    """One orbit entry: the point, distance to the reference (when given),
    and the size of the step from the previous point."""

    k: int
    point: KElement | None
    dist_exp: ValExp | None
    step_exp: ValExp | None
    pole: bool = False


def orbit(F: RationalMap, z0, steps: int, ref=None, precision: int = 512) -> list:
    """Pointwise iteration z_{k+1} = F(z_k), never symbolic composition.

    Records v(z_k - ref) when a reference point is supplied and the size of
    each step.  A pole truncates the orbit with a marked entry.  Points are
    held at bounded height by p-adic rounding far below the working
    precision, which leaves all recorded valuations exact.
    """
    if not isinstance(z0, KElement):
        z0 = KElement(F.p, z0)
    if ref is not None and not isinstance(ref, KElement):
        ref = KElement(F.p, ref)
    out = [
        OrbitStep(
            k=0,
            point=z0,
            dist_exp=(z0 - ref).valuation() if ref is not None else None,
            step_exp=None,
        )
    ]
    z = z0
    for k in range(1, steps + 1):
        nxt = F.eval(z)
        if not isinstance(nxt, KElement):
            out.append(OrbitStep(k=k, point=None, dist_exp=None, step_exp=None, pole=True))
            break
        nxt = _round_point(nxt, precision)
        out.append(
            OrbitStep(
                k=k,
                point=nxt,
                dist_exp=(nxt - ref).valuation() if ref is not None else None,
                step_exp=(nxt - z).valuation(),
            )
        )
        z = nxt
    return out


def suggest_witness(model, fixed_point, expected: str, max_shrink: int = 8) -> Ball:
    """Smallest-shrink open witness disk around a fixed point of the LOCAL
    map whose local classification matches the expected kind.

    Starts from the open disk with the domain's radius and shrinks by p
    until classify_disk(f, disk) returns the expected kind.
    """
    if not isinstance(fixed_point, KElement):
        fixed_point = KElement(model.domain.p, fixed_point)
    if not model.domain.contains_point(fixed_point):
        raise ValueError("fixed point lies outside the model domain")
    for j in range(max_shrink + 1):
        disk = Ball(fixed_point, Radius(model.domain.radius.exp + j), closed=False)
        try:
            behavior = classify_disk(model.f, disk)
        except PoleInBallError:
            continue
        if behavior.kind == expected:
            return disk
    raise ValueError(
        f"no witness disk within {max_shrink} shrinks classifies as {expected}"
    )


def epsilon_for_census(models, census: FixedPointCensus, delta_override=None) -> Radius:
    """Tolerance small enough that gluing preserves every witness's kind.

    Needs epsilon below each witness's local image radius; indifferent
    witnesses additionally need epsilon below every separation delta and
    below the witness radius, with all plan exponents M >= 2.
    """
    from .gluing import plan_gluing

    models = list(models)
    exps = [m.image.radius.exp for m in models]
    has_indifferent = False
    for w in census.witnesses:
        local_img = image_of_ball(models[w.ball_index].f, w.disk)
        exps.append(local_img.radius.exp)
        if w.expected == INDIFFERENT:
            has_indifferent = True
            exps.append(w.disk.radius.exp)
    if has_indifferent:
        if delta_override is not None:
            exps.extend(Radius(d).exp if not isinstance(d, Radius) else d.exp for d in delta_override)
        else:
            from .geometry import pairwise_deltas

            exps.extend(d.exp for d in pairwise_deltas([m.domain.center for m in models]))
    e = max(exps) + 1
    while has_indifferent:
        plan = plan_gluing(models, Radius(e), delta_override=delta_override)
        if all(M >= 2 for M in plan.M):
            break
        e += 1
    return Radius(e)
