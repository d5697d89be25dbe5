"""Mechanical checkers for the conditions a scale may satisfy.

Grid-quantified conditions (axioms, adequacy, goodness) are checked by
exact dyadic evaluation at every sampled combination.  Conditions
quantified over all r (the universality premises S1/S3, expansion-set
bounds, expansion thresholds) are certified exactly for piecewise-affine
scales: the domain is cut at the declared piece boundaries, included
endpoints are compared by direct evaluation, and open interiors are
decided by the rational interval engine in `affine`.  Scales without a
piecewise description degrade to sampled grids and the report says so.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .affine import Affine, Interval, affine_of, evaluate_min, min_dominates
from .dyadic import Dyadic, ONE, ZERO
from .reporting import CheckReport
from .scales import FiniteMetricGroup, Scale, ScalePiece, conjugation_scale
from .words import E, Letter, Point, pos, ultrametric


# -- exact for-all-r core ----------------------------------------------


def _affines_at(pieces: Sequence[ScalePiece], at: Fraction) -> list[Affine]:
    for p in pieces:
        lo = p.lo.as_fraction()
        hi = p.hi.as_fraction() if p.hi is not None else None
        if (lo < at or (lo == at and p.include_lo)) and (
            hi is None or at < hi or (at == hi and p.include_hi)
        ):
            return [affine_of(s, c) for s, c in p.affines]
    raise ValueError(f"pieces do not cover r = {at}")


def dominates_everywhere(
    lhs_pieces: Sequence[ScalePiece],
    rhs_pieces: Sequence[ScalePiece],
    lhs_eval: Callable[[Dyadic], Dyadic],
    rhs_eval: Callable[[Dyadic], Dyadic],
    lo: Dyadic,
    hi: Dyadic | None,
    lo_open: bool,
    hi_open: bool,
    strict: bool = False,
) -> list[dict]:
    """Certify lhs >= rhs (or > when strict) for every r in the interval.

    Returns violation records; empty means certified.  Included
    endpoints and interior piece boundaries are compared by direct
    evaluation; open interiors between cuts by exact affine reasoning.
    """
    violations: list[dict] = []

    cuts: set[Dyadic] = set()
    for p in (*lhs_pieces, *rhs_pieces):
        for v in (p.lo, p.hi):
            if v is None:
                continue
            if lo < v and (hi is None or v < hi):
                cuts.add(v)

    checkpoints: list[Dyadic] = sorted(cuts)
    if not lo_open:
        checkpoints.append(lo)
    if hi is not None and not hi_open:
        checkpoints.append(hi)
    for r in checkpoints:
        left, right = lhs_eval(r), rhs_eval(r)
        if left < right or (strict and left == right):
            violations.append({"r": str(r), "lhs": str(left), "rhs": str(right)})

    grid = [lo, *sorted(cuts)] + ([hi] if hi is not None else [])
    for i in range(len(grid) - 1 + (1 if hi is None else 0)):
        a = grid[i]
        b = grid[i + 1] if i + 1 < len(grid) else None
        mid = a.as_fraction() + 1 if b is None else (a.as_fraction() + b.as_fraction()) / 2
        if b is not None and a == b:
            continue
        upper = _affines_at(lhs_pieces, mid)
        lower = _affines_at(rhs_pieces, mid)
        domain = Interval(a.as_fraction(), b.as_fraction() if b is not None else None)
        witness = min_dominates(upper, lower, domain, strict=strict)
        if witness is not None:
            violations.append(
                {
                    "r": str(witness),
                    "lhs": str(evaluate_min(upper, witness)),
                    "rhs": str(evaluate_min(lower, witness)),
                }
            )
    return violations


def _sampled_grid(lo: Dyadic, hi: Dyadic, steps: int = 64) -> list[Dyadic]:
    span = hi - lo
    out = []
    for i in range(1, steps + 1):
        out.append(lo + span * Dyadic(i, 6))  # 64 linear steps, all dyadic
    for k in range(1, 21):  # geometric refinement toward lo
        out.append(lo + span * Dyadic(1, k))
    return sorted(set(v for v in out if lo < v <= hi))


def _sampled_dominates(
    scale_eval: Callable[[Dyadic], Dyadic],
    rhs_eval: Callable[[Dyadic], Dyadic],
    lo: Dyadic,
    hi: Dyadic,
    strict: bool = False,
) -> list[dict]:
    violations = []
    for r in _sampled_grid(lo, hi):
        left, right = scale_eval(r), rhs_eval(r)
        if left < right or (strict and left == right):
            violations.append({"r": str(r), "lhs": str(left), "rhs": str(right)})
    return violations


# -- scale axioms -------------------------------------------------------


def check_scale_axioms(
    scale: Scale,
    letters: Iterable[Letter],
    r_grid: Sequence[Dyadic],
    limit_tolerance: Dyadic = Dyadic(1, 10),
) -> CheckReport:
    """Check the four scale axioms on the given letters and r grid.

    The vanishing limit at 0 has no finite certificate for a black-box
    evaluator; it is checked as value <= tolerance at the smallest
    positive grid point and reported as a sampled surrogate.
    """
    grid = sorted(set(r_grid))
    if not grid or grid[0] != ZERO:
        raise ValueError("r grid must include 0")
    letters = list(letters)
    report = CheckReport(
        title=f"{scale.name} scale axioms",
        context={"scale": scale.name, "letters": str(len(letters)), "r-values": str(len(grid))},
    )
    positive = grid[1:]
    for r in positive:
        report.checked += 1
        if scale(E, r) != r:
            report.add_finding("identity-letter", r=r, value=scale(E, r))
    for x in letters:
        if scale(x, ZERO) != ZERO:
            report.add_finding("zero-at-zero", x=x, value=scale(x, ZERO))
        prev = ZERO
        for r in positive:
            v = scale(x, r)
            report.checked += 1
            if v < r:
                report.add_finding("dominates-r", x=x, r=r, value=v)
            if not v > ZERO:
                report.add_finding("positive", x=x, r=r, value=v)
            if v < prev:
                report.add_finding("monotone", x=x, r=r, value=v, previous=prev)
            prev = v
        if positive and scale(x, positive[0]) > limit_tolerance:
            report.add_finding(
                "vanishing-limit", x=x, r=positive[0], value=scale(x, positive[0]),
                tolerance=limit_tolerance,
            )
    report.notes.append(
        "vanishing limit checked at the smallest grid point only (sampled surrogate)"
    )
    return report


# -- adequacy and goodness ----------------------------------------------


def check_adequacy(
    scale: Scale,
    triples: Iterable[tuple[Letter, Letter, Letter]],
    r_pairs: Sequence[tuple[Dyadic, Dyadic]],
) -> CheckReport:
    """Check the two segment-merge conditions (in the equivalent split
    form A1' + A1'') and the nested-pair condition A2 on samples."""
    triples = list(triples)
    report = CheckReport(
        title=f"{scale.name} adequacy",
        context={"scale": scale.name, "triples": str(len(triples)), "r-pairs": str(len(r_pairs))},
    )
    cache: dict[tuple[Letter, Dyadic], Dyadic] = {}

    def ev(x: Letter, r: Dyadic) -> Dyadic:
        key = (x, r)
        v = cache.get(key)
        if v is None:
            v = scale(x, r)
            cache[key] = v
        return v

    single_rs = sorted({r for pair in r_pairs for r in pair})
    for x, y, z in triples:
        dxy = ultrametric(x, y)
        dxz = ultrametric(x, z)
        dyz = ultrametric(y, z)
        for r in single_rs:
            report.checked += 1
            if ev(z, r) + dxz + dyz < min(ev(x, r), ev(y, r)) + dxy:
                report.add_finding("A1-prime", x=x, y=y, z=z, r=r)
        xinv, yinv, zinv = x.inverse(), y.inverse(), z.inverse()
        for r1, r2 in r_pairs:
            report.checked += 2
            if min(ev(x, r1), ev(y, r1)) + min(ev(x, r2), ev(y, r2)) < min(
                ev(x, r1 + r2), ev(y, r1 + r2)
            ):
                report.add_finding("A1-double-prime", x=x, y=y, r1=r1, r2=r2)
            r = r1 + min(ev(yinv, r2), ev(zinv, r2)) + dyz
            if min(ev(x, r), ev(z, r)) + dxz < min(ev(x, r1), ev(y, r1)) + dxy + r2:
                report.add_finding("A2", x=x, y=y, z=z, r1=r1, r2=r2, r=r)
    return report


def check_goodness(
    scale: Scale,
    pairs: Iterable[tuple[Letter, Letter]],
    r_triples: Sequence[tuple[Dyadic, Dyadic, Dyadic]],
) -> CheckReport:
    """Check G1 (distance-Lipschitz across letters), G2 (value/r monotone
    decreasing, tested on consecutive grid points by cross-multiplying),
    and G3 (superadditive growth) on samples."""
    pairs = list(pairs)
    report = CheckReport(
        title=f"{scale.name} goodness",
        context={"scale": scale.name, "pairs": str(len(pairs)), "r-triples": str(len(r_triples))},
    )
    cache: dict[tuple[Letter, Dyadic], Dyadic] = {}

    def ev(x: Letter, r: Dyadic) -> Dyadic:
        key = (x, r)
        v = cache.get(key)
        if v is None:
            v = scale(x, r)
            cache[key] = v
        return v

    rs = sorted({t[0] for t in r_triples})
    positive = [r for r in rs if r > ZERO]
    letters = sorted({l for pair in pairs for l in pair}, key=str)
    for x, y in pairs:
        dxy = ultrametric(x, y)
        for r in rs:
            report.checked += 1
            if ev(y, r) + dxy < ev(x, r):
                report.add_finding("G1", x=x, y=y, r=r)
    for x in letters:
        for ra, rb in zip(positive, positive[1:]):
            report.checked += 1
            # value(ra)/ra >= value(rb)/rb, cross-multiplied to stay exact
            if ev(x, ra) * rb < ev(x, rb) * ra:
                report.add_finding("G2", x=x, r_small=ra, r_large=rb)
        for _, r1, r2 in r_triples:
            report.checked += 1
            if ev(x, r1 + r2) < ev(x, r1) + r2:
                report.add_finding("G3", x=x, r1=r1, r2=r2)
    return report


# -- universality premises ----------------------------------------------


def _shifted_capped_pieces(
    base: Sequence[ScalePiece], shift: Dyadic, cap: Dyadic
) -> list[ScalePiece]:
    """Pieces of r -> min(cap, f(r) + shift) from the pieces of f."""
    out = []
    for p in base:
        affines = ((ZERO, cap),) + tuple((s, c + shift) for s, c in p.affines)
        out.append(ScalePiece(p.lo, p.hi, p.include_lo, p.include_hi, affines))
    return out


def check_universality_premises(
    scale: Scale,
    points: Iterable[Point],
    K: int | None = None,
    witness: Callable[[Point], Point] | None = None,
) -> CheckReport:
    """Check premises S1 and S3 at the canonical witness for each point.

    S1: above the small-r threshold the distortion of x dominates
    min(2^-(K+3), distortion of the witness y plus 2^-K d(x, y)); for
    r > 2^-(K+3) this follows from the first axiom, which is certified
    on that tail as part of the check.
    S3: at or below the threshold the scale expands by a factor 8.
    """
    if K is None:
        K = scale.K
    if K is None:
        raise ValueError(f"scale {scale.name} declares no constant K; pass one")
    witness = witness or scale.s1_witness or (lambda x: Point(()))
    points = [p for p in points if p.support >= 1]
    report = CheckReport(
        title=f"{scale.name} universality premises",
        context={"scale": scale.name, "K": str(K), "points": str(len(points))},
    )
    cap = Dyadic(1, K + 3)
    eight = single_piece_affine(8)
    for x in points:
        m = x.support
        y = witness(x)
        if y.support > m - 1:
            report.add_finding("S1-witness-support", x=x, y=y, m=m)
            continue
        xl, yl = pos(x), pos(y)
        shift = Dyadic(1, K) * ultrametric(xl, yl)
        threshold = Dyadic(1, m + K + 5)
        lhs_eval = lambda r, xl=xl: scale(xl, r)
        rhs_eval = lambda r, yl=yl, shift=shift: min(cap, scale(yl, r) + shift)
        report.checked += 2
        if scale.pieces is not None:
            lhs_pieces = scale.pieces(xl)
            rhs_pieces = _shifted_capped_pieces(scale.pieces(yl), shift, cap)
            for v in dominates_everywhere(
                lhs_pieces, rhs_pieces, lhs_eval, rhs_eval, threshold, cap, True, False
            ):
                report.add_finding("S1", x=x, y=y, **v)
            # tail r > 2^-(K+3): rhs <= cap <= r, so the first axiom closes it
            for v in dominates_everywhere(
                lhs_pieces, single_piece_affine(1), lhs_eval, lambda r: r, cap, None, True, True
            ):
                report.add_finding("S1-tail-axiom-i", x=x, **v)
            for v in dominates_everywhere(
                lhs_pieces, eight, lhs_eval, lambda r: 8 * r, ZERO, threshold, False, False
            ):
                report.add_finding("S3", x=x, **v)
        else:
            report.certified = False
            for v in _sampled_dominates(lhs_eval, rhs_eval, threshold, cap):
                report.add_finding("S1", x=x, y=y, **v)
            for v in _sampled_dominates(lhs_eval, lambda r: 8 * r, ZERO, threshold):
                report.add_finding("S3", x=x, **v)
    if not report.certified:
        report.notes.append("scale exposes no piecewise description: sampled, not certified")
    return report


def single_piece_affine(slope: int) -> tuple[ScalePiece, ...]:
    return (ScalePiece(ZERO, None, True, False, ((Dyadic(slope), ZERO),)),)


def check_ekm_bound(
    scale: Scale,
    m: int,
    k: int,
    K: int | None = None,
    cap: int = 100,
    points: Iterable[Point] | None = None,
    witness: Callable[[Point], Point] | None = None,
) -> CheckReport:
    """Certify that every candidate point lies outside the exception set
    for the window (2^-k, 2^-(m+K+5)]: the canonical witness y makes the
    S1 inequality hold on the whole window, which negates membership.

    Candidates default to the scale's published tail rule (points whose
    enumeration data exceed the derived finiteness bound, up to a cap).
    """
    if K is None:
        K = scale.K
    if K is None:
        raise ValueError(f"scale {scale.name} declares no constant K; pass one")
    if not k > m + K + 5:
        raise ValueError("need k > m + K + 5")
    if points is None:
        if scale.ekm_candidates is None:
            raise ValueError(f"scale {scale.name} has no candidate rule; pass points")
        points = scale.ekm_candidates(m, k, cap)
    witness = witness or scale.s1_witness or (lambda x: Point(()))
    points = [p for p in points if p.support == m]
    report = CheckReport(
        title=f"{scale.name} exception-set bound",
        context={
            "scale": scale.name,
            "m": str(m),
            "k": str(k),
            "K": str(K),
            "candidates": str(len(points)),
        },
    )
    cap_value = Dyadic(1, K + 3)
    lo, hi = Dyadic(1, k), Dyadic(1, m + K + 5)
    for x in points:
        y = witness(x)
        if y.support > m - 1:
            report.add_finding("witness-support", x=x, y=y, m=m)
            continue
        xl, yl = pos(x), pos(y)
        shift = Dyadic(1, K) * ultrametric(xl, yl)
        lhs_eval = lambda r, xl=xl: scale(xl, r)
        rhs_eval = lambda r, yl=yl, shift=shift: min(cap_value, scale(yl, r) + shift)
        report.checked += 1
        if scale.pieces is not None:
            lhs_pieces = scale.pieces(xl)
            rhs_pieces = _shifted_capped_pieces(scale.pieces(yl), shift, cap_value)
            for v in dominates_everywhere(
                lhs_pieces, rhs_pieces, lhs_eval, rhs_eval, lo, hi, True, False
            ):
                report.add_finding("not-certified-outside", x=x, y=y, **v)
        else:
            report.certified = False
            for v in _sampled_dominates(lhs_eval, rhs_eval, lo, hi):
                report.add_finding("not-certified-outside", x=x, y=y, **v)
    if not report.certified:
        report.notes.append("scale exposes no piecewise description: sampled, not certified")
    return report


# -- finite-group conjugation distortion ---------------------------------


def verify_gamma_G_lipschitz(
    group: FiniteMetricGroup, r_grid: Sequence[Dyadic] = ()
) -> CheckReport:
    """Exhaustively verify the 2-Lipschitz bound of the conjugation
    distortion in the group argument, over all element pairs and all r
    in the grid joined with every metric value."""
    rs = sorted(set(group.metric_values()) | set(r_grid))
    report = CheckReport(
        title="conjugation-distortion Lipschitz bound",
        context={"elements": str(group.size), "r-values": str(len(rs))},
    )
    for r in rs:
        values = [conjugation_scale(group, g, r) for g in group.elements()]
        for g1 in group.elements():
            for g2 in group.elements():
                report.checked += 1
                if abs(values[g1] - values[g2]) > 2 * group.d(g1, g2):
                    report.add_finding(
                        "lipschitz",
                        g1=group.names[g1],
                        g2=group.names[g2],
                        r=r,
                        v1=values[g1],
                        v2=values[g2],
                        bound=2 * group.d(g1, g2),
                    )
    return report
