"""Pre-norms, exact norms as minima over matches, two-sided bounds via
trivial-extension sweeps, and the induced left-invariant metrics.

Decomposition conventions for the pre-norm recursion (fixed here once;
everything else follows from them):

* a single letter x under the identity match costs d(e, x);
* when the first index pairs with the last, the word is read as
  a w1 b with a the literal first letter, and the cost is
  d(a^-1, b) + min(Gamma(a^-1, N(w1)), Gamma(b, N(w1))) -- that is, the
  scale is applied to the INVERSE of the first letter;
* when the first index pairs with an interior index k, the word splits
  at k into independent halves whose pre-norms add.

The minimum over all matches is computed by interval recursion over
those three cases; scale monotonicity in r lets the minimum be pushed
through Gamma, so the recursion memoizes on letter content.  For scales
that are global minima of integer-slope affine functions the whole
computation runs over a common power-of-two denominator in plain
integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .dyadic import Dyadic, ZERO
from .matches import Match
from .scales import Scale, graev_scale
from .words import (
    E,
    IDENTITY_WORD,
    Letter,
    Word,
    invert,
    is_irreducible,
    multiply,
    ultrametric,
)

DEFAULT_CAP = 16


class WordTooLongError(ValueError):
    """The word exceeds the configured length cap."""


class MatchLengthMismatchError(ValueError):
    """The match does not cover exactly the word's index range."""


class AdequacyNotCertifiedError(ValueError):
    """norm_exact was asked to trust a scale that is not certified adequate."""


@dataclass(frozen=True)
class NormResult:
    value: Dyadic
    witness_match: Match
    witness_word: Word
    exact: bool
    bounds: tuple[Dyadic, Dyadic] | None = None


def pre_norm(scale: Scale, word: Word, match: Match) -> Dyadic:
    """The pre-norm of a (not necessarily irreducible) word under a match."""
    if match.start != 0 or match.size != len(word):
        raise MatchLengthMismatchError(
            f"match on [{match.start}..{match.end}] does not fit word of length {len(word)}"
        )
    letters = word.letters

    def value(i: int, j: int) -> Dyadic:
        if i > j:
            return ZERO
        t = match(i)
        assert i <= t <= j, "non-crossing keeps split segments closed"
        if t == i:
            return ultrametric(E, letters[i]) + value(i + 1, j)
        if t < j:
            return value(i, t) + value(t + 1, j)
        x = letters[i].inverse()
        y = letters[j]
        if j == i + 1:
            return ultrametric(x, y)
        inner = value(i + 1, j - 1)
        return ultrametric(x, y) + min(scale(x, inner), scale(y, inner))

    return value(0, len(letters) - 1)


class _MatchMinimizer:
    """Minimum of the pre-norm over all matches, memoized on letter
    content so trivial-extension sweeps share subword results.

    Two value modes: exact Dyadic objects, or (when the scale exposes an
    integer-slope envelope) plain integers over a common denominator
    2**Q -- the fast path for the heavy oracle runs.
    """

    def __init__(self, scale: Scale, universe: Iterable[Letter]):
        letters: list[Letter] = []
        index: dict[Letter, int] = {}
        for letter in universe:
            for l in (letter, letter.inverse()):
                if l not in index:
                    index[l] = len(letters)
                    letters.append(l)
        if E not in index:
            index[E] = len(letters)
            letters.append(E)
        self.scale = scale
        self._letters = letters
        self._index = index
        self._inv = [index[l.inverse()] for l in letters]

        n = len(letters)
        d_fixed = [ultrametric(E, l) for l in letters]
        d_pair = [[ultrametric(letters[i].inverse(), letters[k]) for k in range(n)] for i in range(n)]

        envs = None
        if scale.int_envelope is not None:
            envs = [scale.int_envelope(l) for l in letters]

        if envs is not None:
            q = 0
            for v in d_fixed:
                q = max(q, v.exp)
            for row in d_pair:
                for v in row:
                    q = max(q, v.exp)
            for env in envs:
                for _, c in env:
                    q = max(q, c.exp)
            self._q = q
            self._zero = 0
            self._fixed = [v.num << (q - v.exp) for v in d_fixed]
            self._pair = [[v.num << (q - v.exp) for v in row] for row in d_pair]
            self._envs = [
                tuple((s, c.num << (q - c.exp)) for s, c in env) for env in envs
            ]
        else:
            self._q = None
            self._zero = ZERO
            self._fixed = d_fixed
            self._pair = d_pair
            self._envs = None

        self._gamma_env: dict[tuple[int, int], tuple] = {}
        self._memo: dict[tuple[int, ...], object] = {(): self._zero}

    def ids(self, letters: Sequence[Letter]) -> tuple[int, ...]:
        return tuple(self._index[l] for l in letters)

    def to_dyadic(self, v) -> Dyadic:
        return Dyadic(v, self._q) if self._q is not None else v

    def _gamma_min(self, first: int, last: int, inner):
        """min over the two scale applications of the arc (first, last)."""
        if self._envs is not None:
            key = (first, last)
            env = self._gamma_env.get(key)
            if env is None:
                env = self._envs[self._inv[first]] + self._envs[last]
                self._gamma_env[key] = env
            return min(s * inner + c for s, c in env)
        x = self._letters[self._inv[first]]
        y = self._letters[last]
        r = inner
        return min(self.scale(x, r), self.scale(y, r))

    def min_norm(self, ids: tuple[int, ...]):
        memo = self._memo
        v = memo.get(ids)
        if v is not None:
            return v
        n = len(ids)
        if n == 1:
            v = self._fixed[ids[0]]
            memo[ids] = v
            return v
        first = ids[0]
        best = self._fixed[first] + self.min_norm(ids[1:])
        pair_row = self._pair[first]
        for k in range(1, n):
            d = pair_row[ids[k]]
            if d >= best:
                continue
            v = d
            if k > 1:
                v = v + self._gamma_min(first, ids[k], self.min_norm(ids[1:k]))
            if k < n - 1:
                v = v + self.min_norm(ids[k + 1 :])
            if v < best:
                best = v
        memo[ids] = best
        return best

    def reconstruct(self, ids: tuple[int, ...]) -> tuple[int, ...]:
        """The lexicographically least match attaining min_norm."""
        targets = list(range(len(ids)))
        self._rebuild(ids, 0, len(ids) - 1, targets)
        return tuple(targets)

    def _rebuild(self, ids, i, j, targets):
        if i > j:
            return
        total = self.min_norm(ids[i : j + 1])
        if self._fixed[ids[i]] + self.min_norm(ids[i + 1 : j + 1]) == total:
            targets[i] = i
            self._rebuild(ids, i + 1, j, targets)
            return
        pair_row = self._pair[ids[i]]
        for k in range(i + 1, j + 1):
            v = pair_row[ids[k]]
            if k > i + 1:
                v = v + self._gamma_min(ids[i], ids[k], self.min_norm(ids[i + 1 : k]))
            if k < j:
                v = v + self.min_norm(ids[k + 1 : j + 1])
            if v == total:
                targets[i] = k
                targets[k] = i
                self._rebuild(ids, i + 1, k - 1, targets)
                self._rebuild(ids, k + 1, j, targets)
                return
        raise AssertionError("minimum not attained by any first-index choice")


def _require_computable(scale: Scale, unchecked: bool) -> None:
    if not scale.certified_adequate and not unchecked:
        raise AdequacyNotCertifiedError(
            f"scale {scale.name!r} is not certified adequate, so the minimum over "
            "matches may exceed the true norm; use norm_bounds for bracketing or "
            "pass unchecked=True to compute the minimum anyway"
        )


def norm_exact(
    scale: Scale, word: Word, *, unchecked: bool = False, cap: int = DEFAULT_CAP
) -> NormResult:
    """The norm as the minimum of the pre-norm over matches of the word.

    Equals the true norm for adequate scales; other scales are refused
    unless `unchecked` is passed.  The witness is the lexicographically
    least minimizing match.
    """
    _require_computable(scale, unchecked)
    if not is_irreducible(word):
        raise ValueError("norm_exact expects an irreducible word")
    if len(word) > cap:
        raise WordTooLongError(f"word length {len(word)} exceeds cap {cap}")
    calc = _MatchMinimizer(scale, word.letters)
    ids = calc.ids(word.letters)
    value = calc.to_dyadic(calc.min_norm(ids))
    witness = Match(0, calc.reconstruct(ids))
    return NormResult(value=value, witness_match=witness, witness_word=word, exact=True)


def trivial_extensions(
    letters: tuple[Letter, ...], budget: int, alphabet: Sequence[Letter]
) -> Iterable[tuple[Letter, ...]]:
    """All distinct words over the alphabet reducing to the given word,
    within `budget` extra letters, built by inserting cancelling pairs.

    Identity-letter insertions are omitted: eliminating an identity
    letter never increases any pre-norm under any scale, so such
    extensions cannot lower the minimum over matches.
    """
    pool = [z for z in alphabet if not z.is_identity]
    seen = {letters}
    yield letters
    frontier = [letters]
    for _ in range(budget // 2):
        grown: list[tuple[Letter, ...]] = []
        for t in frontier:
            for g in range(len(t) + 1):
                for z in pool:
                    cand = t[:g] + (z, z.inverse()) + t[g:]
                    if cand not in seen:
                        seen.add(cand)
                        grown.append(cand)
                        yield cand
        frontier = grown


def norm_bounds(
    scale: Scale,
    word: Word,
    extension_budget: int = 0,
    *,
    extras: Sequence[Letter] = (),
    cap: int = DEFAULT_CAP,
) -> NormResult:
    """Two-sided norm bracketing valid for every scale.

    upper: minimum of the pre-norm over all matches of all trivial
    extensions within the budget, inserted letters drawn from the word's
    letters, their inverses, and the extras.  lower: the trivial-scale
    norm, valid since every scale dominates the trivial one pointwise.
    The result carries the upper bound as its value; it is exact when
    the scale is certified adequate (then no extension helps and the
    value is the budget-0 minimum).
    """
    if not is_irreducible(word):
        raise ValueError("norm_bounds expects an irreducible word")
    if len(word) > cap:
        raise WordTooLongError(f"word length {len(word)} exceeds cap {cap}")

    lower = norm_exact(get_trivial_scale(), word, cap=cap).value

    alphabet: list[Letter] = []
    seen: set[Letter] = set()
    for letter in (*word.letters, *extras):
        for l in (letter, letter.inverse()):
            if l not in seen and not l.is_identity:
                seen.add(l)
                alphabet.append(l)
    alphabet.sort(key=str)

    calc = _MatchMinimizer(scale, alphabet)
    base_ids = calc.ids(word.letters)
    base_value = calc.min_norm(base_ids)
    best_value, best = base_value, word.letters
    for cand in trivial_extensions(word.letters, extension_budget, alphabet):
        v = calc.min_norm(calc.ids(cand))
        if v < best_value:
            best_value, best = v, cand
    upper = calc.to_dyadic(best_value)
    witness = Match(0, calc.reconstruct(calc.ids(best)))
    exact = scale.certified_adequate and best_value == base_value
    return NormResult(
        value=upper,
        witness_match=witness,
        witness_word=Word(best),
        exact=exact,
        bounds=None if exact else (lower, upper),
    )


_trivial: list[Scale] = []


def get_trivial_scale() -> Scale:
    if not _trivial:
        _trivial.append(graev_scale())
    return _trivial[0]


def delta(
    scale: Scale, w: Word, v: Word, *, unchecked: bool = False, cap: int = DEFAULT_CAP
) -> Dyadic:
    """Left-invariant distance: norm of w^-1 v."""
    return norm_exact(scale, multiply(invert(w), v), unchecked=unchecked, cap=cap).value


def delta_big(
    scale: Scale, w: Word, v: Word, *, unchecked: bool = False, cap: int = DEFAULT_CAP
) -> Dyadic:
    """Two-sided-compatible distance: max of delta on the pair and on the
    inverted pair."""
    return max(
        delta(scale, w, v, unchecked=unchecked, cap=cap),
        delta(scale, invert(w), invert(v), unchecked=unchecked, cap=cap),
    )


def oracle_equivalence(
    scale: Scale,
    words: Iterable[Word],
    budget: int,
    *,
    unchecked: bool = False,
    cap: int = DEFAULT_CAP,
) -> list[dict]:
    """Compare norm_bounds' upper bound with the budget-0 minimum on each
    word; returns one record per discrepancy.  For adequate scales any
    discrepancy is a bug; for others it exhibits an extension that beats
    the word's own matches."""
    discrepancies = []
    for word in words:
        exact = norm_exact(scale, word, unchecked=unchecked, cap=cap)
        bounded = norm_bounds(scale, word, budget, cap=cap)
        if bounded.value != exact.value:
            discrepancies.append(
                {
                    "word": str(word),
                    "match-minimum": str(exact.value),
                    "match-witness": str(exact.witness_match),
                    "extension-minimum": str(bounded.value),
                    "extension-word": str(bounded.witness_word),
                    "extension-witness": str(bounded.witness_match),
                }
            )
    return discrepancies
