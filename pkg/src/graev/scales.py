"""Scales on the signed point alphabet, point enumerations, and finite
metric groups with their conjugation-distortion scale.

A scale assigns each letter x a distortion function r -> Gamma(x, r)
subject to four axioms: Gamma(e, r) = r and Gamma(x, r) >= r; zero
exactly at r = 0; monotone in r; vanishing as r -> 0.  The built-in
scales are all piecewise affine in r and expose that structure so the
condition checkers in `scale_checks` can certify for-all-r statements
exactly rather than on sampled grids.

Built-in scale names (CLI selection): ``graev``, ``gamma1``, ``gamma2``,
``gamma0``, and the deliberately ill-behaved ``toy`` used as a negative
control for norm computations that assume adequacy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .dyadic import Dyadic, ONE, ZERO
from .words import E, Letter, Point, ZERO_POINT, pos, project, ultrametric


class NonPiecewiseLinearError(ValueError):
    """The scale exposes no piecewise-affine description."""


class GroupFormatError(ValueError):
    """Malformed or invalid finite metric group data."""


@dataclass(frozen=True)
class ScalePiece:
    """On [lo, hi] (with the stated endpoint inclusions) the scale value
    is the minimum of the affine functions slope * r + intercept."""

    lo: Dyadic
    hi: Dyadic | None  # None = unbounded above
    include_lo: bool
    include_hi: bool
    affines: tuple[tuple[Dyadic, Dyadic], ...]


def single_piece(affines: Iterable[tuple[Dyadic | int, Dyadic | int]]) -> tuple[ScalePiece, ...]:
    fixed = tuple(
        (s if isinstance(s, Dyadic) else Dyadic(s), c if isinstance(c, Dyadic) else Dyadic(c))
        for s, c in affines
    )
    return (ScalePiece(ZERO, None, True, False, fixed),)


@dataclass(frozen=True, eq=False)
class Scale:
    """An evaluable scale with optional exact structure.

    `pieces(letter)` describes r -> Gamma(letter, r) as finitely many
    intervals each carrying affine functions whose minimum is the value
    there.  `int_envelope(letter)`, when the scale is globally a minimum
    of affines with integer slopes, feeds the fast common-denominator
    path of the norm machinery.  `certified_adequate` marks scales whose
    norms the minimum-over-matches formula computes exactly.
    """

    name: str
    fn: Callable[[Letter, Dyadic], Dyadic]
    K: int | None = None
    symmetric: bool = True
    certified_adequate: bool = False
    pieces: Callable[[Letter], tuple[ScalePiece, ...]] | None = None
    int_envelope: Callable[[Letter], tuple[tuple[int, Dyadic], ...]] | None = None
    s1_witness: Callable[[Point], Point] | None = None
    ekm_candidates: Callable[[int, int, int], list[Point]] | None = None

    def __call__(self, letter: Letter, r: Dyadic | int) -> Dyadic:
        if isinstance(r, int):
            r = Dyadic(r)
        if r < ZERO:
            raise ValueError("scales are defined for r >= 0")
        return self.fn(letter, r)

    def __repr__(self):
        return f"Scale({self.name!r})"


# -- point enumerations ----------------------------------------------


class PointEnumeration:
    """Graded bijection between finite-support points and the naturals.

    Points are ordered by entry sum plus support, ties broken by the
    reversed zero-padded entry tuple.  With the zero point included the
    map sends it to 0; without it (the zeta-style enumeration) every
    point x satisfies support(x) <= index(x) + 1, which is asserted each
    time an index is minted rather than assumed.
    """

    def __init__(self, include_zero: bool = True):
        self.include_zero = include_zero
        self._by_index: list[Point] = []
        self._index_of: dict[Point, int] = {}
        self._next_grade = 0

    @staticmethod
    def grade(x: Point) -> int:
        return sum(x.entries) + x.support

    @staticmethod
    def _grade_points(g: int) -> list[Point]:
        if g == 0:
            return [ZERO_POINT]
        pts = []
        width = g - 1
        for support in range(1, g):
            total = g - support
            for head in itertools.product(range(total + 1), repeat=support - 1):
                last = total - sum(head)
                if last >= 1:
                    pts.append(Point(head + (last,)))
        pts.sort(key=lambda p: tuple(reversed(p.entries + (0,) * (width - p.support))))
        return pts

    def _extend(self) -> None:
        g = self._next_grade
        self._next_grade += 1
        for p in self._grade_points(g):
            if not self.include_zero and p == ZERO_POINT:
                continue
            idx = len(self._by_index)
            if not self.include_zero and p.support > idx + 1:
                raise RuntimeError(
                    f"enumeration order broke the support bound at {p} -> {idx}"
                )
            self._by_index.append(p)
            self._index_of[p] = idx

    def index(self, x: Point) -> int:
        while self._next_grade <= self.grade(x):
            self._extend()
        return self._index_of[x]

    def point(self, n: int) -> Point:
        if n < 0:
            raise ValueError("indices are naturals")
        while len(self._by_index) <= n:
            self._extend()
        return self._by_index[n]

    def points_up_to(self, n: int) -> list[Point]:
        self.point(n)
        return self._by_index[: n + 1]


def xi_enumeration() -> PointEnumeration:
    """Bijection with all points; sends the zero point to 0."""
    return PointEnumeration(include_zero=True)


def zeta_enumeration() -> PointEnumeration:
    """Bijection with the nonzero points; support(x) <= index + 1."""
    return PointEnumeration(include_zero=False)


# -- concrete scales --------------------------------------------------


def graev_scale() -> Scale:
    """The trivial scale Gamma(x, r) = r, inducing the classical Graev
    metric; adequate by construction."""

    def fn(letter: Letter, r: Dyadic) -> Dyadic:
        return r

    return Scale(
        name="graev",
        fn=fn,
        K=None,
        certified_adequate=True,
        pieces=lambda letter: single_piece([(1, 0)]),
        int_envelope=lambda letter: ((1, ZERO),),
        s1_witness=lambda x: ZERO_POINT,
    )


def scale_gamma1(enum: PointEnumeration | None = None) -> Scale:
    """Linear scale with slope 2**6 * index(x) + 1 from an enumeration
    that sends the zero point to 0."""
    enum = enum or xi_enumeration()
    if enum.index(ZERO_POINT) != 0:
        raise ValueError("gamma1 needs an enumeration sending the zero point to 0")

    def slope(letter: Letter) -> int:
        if letter.is_identity:
            return 1
        return (enum.index(letter.point) << 6) + 1

    def fn(letter: Letter, r: Dyadic) -> Dyadic:
        return slope(letter) * r

    def candidates(m: int, k: int, cap: int) -> list[Point]:
        bound = 1 << (k - (m + 5))
        return [p for p in enum.points_up_to(cap)[bound:] if p.support == m]

    return Scale(
        name="gamma1",
        fn=fn,
        K=0,
        pieces=lambda letter: single_piece([(slope(letter), 0)]),
        int_envelope=lambda letter: ((slope(letter), ZERO),),
        s1_witness=lambda x: ZERO_POINT,
        ekm_candidates=candidates,
    )


def scale_gamma2(enum: PointEnumeration | None = None) -> Scale:
    """Piecewise scale: 8r up to the point-dependent threshold
    2**-(index(x)+6), then max(1/8, r); the zero point is undistorted."""
    enum = enum or zeta_enumeration()
    if enum.include_zero:
        raise ValueError("gamma2 needs an enumeration of the nonzero points")
    eighth = Dyadic(1, 3)

    def fn(letter: Letter, r: Dyadic) -> Dyadic:
        if letter.is_identity or letter.point == ZERO_POINT:
            return r
        threshold = Dyadic(1, enum.index(letter.point) + 6)
        if r <= threshold:
            return 8 * r
        return max(eighth, r)

    def pieces(letter: Letter) -> tuple[ScalePiece, ...]:
        if letter.is_identity or letter.point == ZERO_POINT:
            return single_piece([(1, 0)])
        threshold = Dyadic(1, enum.index(letter.point) + 6)
        return (
            ScalePiece(ZERO, threshold, True, True, ((Dyadic(8), ZERO),)),
            ScalePiece(threshold, eighth, False, True, ((ZERO, eighth),)),
            ScalePiece(eighth, None, False, False, ((ONE, ZERO),)),
        )

    def candidates(m: int, k: int, cap: int) -> list[Point]:
        bound = max(k - 6, 0)
        return [p for p in enum.points_up_to(cap)[bound:] if p.support == m]

    return Scale(
        name="gamma2",
        fn=fn,
        K=0,
        pieces=pieces,
        s1_witness=lambda x: ZERO_POINT,
        ekm_candidates=candidates,
    )


def _gamma0_envelope(point: Point) -> tuple[tuple[int, Dyadic], ...]:
    """Gamma0(x, .) as a minimum of affines, built along the chain of
    truncations of x with strictly increasing support."""
    env: tuple[tuple[int, Dyadic], ...] = ((1, ZERO),)
    partial = 0  # running exponent sum over the prefix
    acc = 1  # sum of 2**partial over prefix lengths 0..j
    for j in range(1, point.support + 1):
        partial += point.entries[j - 1]
        acc += 1 << partial
        if point.entries[j - 1] != 0:
            step = Dyadic(1, j)
            env = ((32 * acc, ZERO),) + tuple((s, c + step) for s, c in env)
    return env


def scale_gamma0() -> Scale:
    """Good (hence adequate) recursive scale: the distortion of x is the
    cheaper of a steep slope that doubles with every unit of every entry
    and the distortion of a truncation plus the truncation error."""
    env_cache: dict[Point, tuple[tuple[int, Dyadic], ...]] = {}

    def envelope(letter: Letter) -> tuple[tuple[int, Dyadic], ...]:
        if letter.is_identity:
            return ((1, ZERO),)
        env = env_cache.get(letter.point)
        if env is None:
            env = _gamma0_envelope(letter.point)
            env_cache[letter.point] = env
        return env

    def fn(letter: Letter, r: Dyadic) -> Dyadic:
        return min(s * r + c for s, c in envelope(letter))

    def pieces(letter: Letter) -> tuple[ScalePiece, ...]:
        return single_piece(envelope(letter))

    def candidates(m: int, k: int, cap: int) -> list[Point]:
        bound = k - (m + 5)
        out = []
        for entries in itertools.product(range(cap + 1), repeat=m):
            if entries[-1] != 0 and bound <= sum(entries) <= cap:
                out.append(Point(entries))
        return out

    return Scale(
        name="gamma0",
        fn=fn,
        K=1,
        certified_adequate=True,
        pieces=pieces,
        int_envelope=envelope,
        s1_witness=lambda x: project(x, x.support - 1),
        ekm_candidates=candidates,
    )


def toy_scale() -> Scale:
    """Second-entry-weighted linear scale.  Satisfies the scale axioms
    but is not adequate: letters sharing a first entry can be close while
    their distortions differ wildly, so inserting a cancelling pair of
    cheap letters can shrink the minimum over matches."""

    def slope(letter: Letter) -> int:
        if letter.is_identity:
            return 1
        return (letter.point(1) << 6) + 1

    def fn(letter: Letter, r: Dyadic) -> Dyadic:
        return slope(letter) * r

    return Scale(
        name="toy",
        fn=fn,
        pieces=lambda letter: single_piece([(slope(letter), 0)]),
        int_envelope=lambda letter: ((slope(letter), ZERO),),
    )


_REGISTRY: dict[str, Callable[[], Scale]] = {
    "graev": graev_scale,
    "gamma1": scale_gamma1,
    "gamma2": scale_gamma2,
    "gamma0": scale_gamma0,
    "toy": toy_scale,
}
_instances: dict[str, Scale] = {}


def scale_names() -> list[str]:
    return sorted(_REGISTRY)


def get_scale(name: str) -> Scale:
    """Shared instance of a built-in scale (evaluation caches persist)."""
    if name not in _REGISTRY:
        raise KeyError(f"unknown scale {name!r}; known: {', '.join(scale_names())}")
    if name not in _instances:
        _instances[name] = _REGISTRY[name]()
    return _instances[name]


# -- finite metric groups ---------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteMetricGroup:
    """A finite group with a left-invariant metric, both given by tables.

    Validation runs at construction and reports the first violation:
    well-formed tables, group axioms, metric axioms, left-invariance
    d(gh, gk) = d(h, k).
    """

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    metric: tuple[tuple[Dyadic, ...], ...]
    identity: int = field(init=False)
    inverses: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise GroupFormatError("empty group")
        if len(set(self.names)) != n:
            raise GroupFormatError("duplicate element names")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupFormatError("group table must be n x n")
        if any(not (0 <= v < n) for row in self.table for v in row):
            raise GroupFormatError("group table entry out of range")
        if len(self.metric) != n or any(len(row) != n for row in self.metric):
            raise GroupFormatError("metric table must be n x n")

        identity = None
        for i in range(n):
            if all(self.table[i][j] == j and self.table[j][i] == j for j in range(n)):
                identity = i
                break
        if identity is None:
            raise GroupFormatError("no identity element")
        object.__setattr__(self, "identity", identity)

        inverses = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == identity and self.table[j][i] == identity:
                    inverses[i] = j
                    break
            if inverses[i] is None:
                raise GroupFormatError(f"element {self.names[i]} has no inverse")
        object.__setattr__(self, "inverses", tuple(inverses))

        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise GroupFormatError(
                            f"associativity fails at ({self.names[a]}, {self.names[b]}, {self.names[c]})"
                        )

        for i in range(n):
            for j in range(n):
                d = self.metric[i][j]
                if d < ZERO:
                    raise GroupFormatError(f"negative distance at ({self.names[i]}, {self.names[j]})")
                if (d == ZERO) != (i == j):
                    raise GroupFormatError(
                        f"distance zero iff equal fails at ({self.names[i]}, {self.names[j]})"
                    )
                if d != self.metric[j][i]:
                    raise GroupFormatError(
                        f"metric not symmetric at ({self.names[i]}, {self.names[j]})"
                    )
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.metric[a][c] > self.metric[a][b] + self.metric[b][c]:
                        raise GroupFormatError(
                            f"triangle inequality fails at ({self.names[a]}, {self.names[b]}, {self.names[c]})"
                        )
        for g in range(n):
            for h in range(n):
                for k in range(n):
                    if self.metric[self.table[g][h]][self.table[g][k]] != self.metric[h][k]:
                        raise GroupFormatError(
                            f"left-invariance fails at ({self.names[g]}, {self.names[h]}, {self.names[k]})"
                        )

    @property
    def size(self) -> int:
        return len(self.names)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def d(self, i: int, j: int) -> Dyadic:
        return self.metric[i][j]

    def element(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def metric_values(self) -> list[Dyadic]:
        return sorted({v for row in self.metric for v in row})

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))


def conjugation_scale(group: FiniteMetricGroup, g: int, r: Dyadic | int) -> Dyadic:
    """max(r, largest distance from the identity of a conjugate g^-1 h g
    over all h within distance r of the identity).  Exact: the group is
    finite, so the supremum is a maximum."""
    if isinstance(r, int):
        r = Dyadic(r)
    if r < ZERO:
        raise ValueError("r must be >= 0")
    one = group.identity
    ginv = group.inv(g)
    best = r
    for h in group.elements():
        if group.d(one, h) <= r:
            v = group.d(one, group.mul(group.mul(ginv, h), g))
            if v > best:
                best = v
    return best


def parse_group(text: str) -> FiniteMetricGroup:
    """Load the group file format:

        elements: <name> <name> ...
        table:
        <n rows of n element indices>
        metric:
        <n rows of n dyadic literals>

    Blank lines and lines starting with ``#`` are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("elements:"):
        raise GroupFormatError("expected 'elements:' header")
    names = tuple(lines[0][len("elements:") :].split())
    n = len(names)
    if len(lines) < 2 + 2 * n or lines[1] != "table:" or lines[2 + n] != "metric:":
        raise GroupFormatError("expected 'table:' and 'metric:' sections of n rows each")
    try:
        table = tuple(tuple(int(v) for v in lines[2 + i].split()) for i in range(n))
    except ValueError as exc:
        raise GroupFormatError(f"bad table row: {exc}") from None
    try:
        metric = tuple(
            tuple(Dyadic.parse(v) for v in lines[3 + n + i].split()) for i in range(n)
        )
    except ValueError as exc:
        raise GroupFormatError(f"bad metric row: {exc}") from None
    return FiniteMetricGroup(names, table, metric)


def load_group(path: str) -> FiniteMetricGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group(fh.read())


def format_group(group: FiniteMetricGroup) -> str:
    out = ["elements: " + " ".join(group.names), "table:"]
    out += [" ".join(str(v) for v in row) for row in group.table]
    out.append("metric:")
    out += [" ".join(str(v) for v in row) for row in group.metric]
    return "\n".join(out) + "\n"


def word_metric_group(
    names: tuple[str, ...],
    table: tuple[tuple[int, ...], ...],
    generator_weights: dict[str, Dyadic],
) -> FiniteMetricGroup:
    """Build a finite metric group from a weighted generating set.

    The length of an element is the cheapest product of generators equal
    to it; the metric d(g, h) is the length of g^-1 h, left-invariant by
    construction.  The generating set must be closed under inversion
    with matching weights, which makes the length symmetric.
    """
    n = len(names)
    identity = None
    for i in range(n):
        if all(table[i][j] == j for j in range(n)):
            identity = i
            break
    if identity is None:
        raise GroupFormatError("no identity element")
    inverses = {}
    for i in range(n):
        for j in range(n):
            if table[i][j] == identity:
                inverses[i] = j
                break
    gens = []
    for name, weight in generator_weights.items():
        try:
            i = names.index(name)
        except ValueError:
            raise GroupFormatError(f"unknown generator {name!r}") from None
        if weight <= ZERO:
            raise GroupFormatError(f"generator weight must be positive: {name}")
        inv_name = names[inverses[i]]
        if inv_name not in generator_weights or generator_weights[inv_name] != weight:
            raise GroupFormatError(
                f"generating set must be inverse-closed with equal weights ({name})"
            )
        gens.append((i, weight))

    # Dijkstra over the Cayley graph, exact dyadic edge weights
    lengths: dict[int, Dyadic] = {identity: ZERO}
    frontier = {identity}
    while frontier:
        g = min(frontier, key=lambda v: (lengths[v].as_fraction(), v))
        frontier.discard(g)
        for s, w in gens:
            t = table[g][s]
            cand = lengths[g] + w
            if t not in lengths or cand < lengths[t]:
                lengths[t] = cand
                frontier.add(t)
    if len(lengths) != n:
        raise GroupFormatError("generators do not generate the group")
    metric = tuple(
        tuple(lengths[table[inverses[i]][j]] for j in range(n)) for i in range(n)
    )
    return FiniteMetricGroup(names, table, metric)
