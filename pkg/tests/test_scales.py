import itertools

import pytest

from graev.dyadic import Dyadic, ONE, ZERO
from graev.sampling import letter_box, octave_grid, point_box
from graev.scale_checks import (
    check_adequacy,
    check_ekm_bound,
    check_goodness,
    check_scale_axioms,
    check_universality_premises,
    verify_gamma_G_lipschitz,
)
from graev.scales import (
    FiniteMetricGroup,
    GroupFormatError,
    PointEnumeration,
    Scale,
    conjugation_scale,
    format_group,
    get_scale,
    graev_scale,
    parse_group,
    scale_gamma0,
    scale_gamma1,
    scale_gamma2,
    toy_scale,
    xi_enumeration,
    zeta_enumeration,
)
from graev.words import E, Point, ZERO_POINT, neg, pos, project

from util import klein_group, s3_group


# -- enumerations -------------------------------------------------------


def test_xi_enumeration_frozen_prefix():
    # hand-derived from the graded order (sum+support, reversed padded entries)
    enum = xi_enumeration()
    expected = [
        Point(()),
        Point((1,)),
        Point((2,)),
        Point((0, 1)),
        Point((3,)),
        Point((1, 1)),
        Point((0, 2)),
        Point((0, 0, 1)),
    ]
    assert [enum.point(i) for i in range(8)] == expected
    for i, p in enumerate(expected):
        assert enum.index(p) == i


def test_xi_is_bijective_prefix():
    enum = xi_enumeration()
    pts = [enum.point(i) for i in range(300)]
    assert len(set(pts)) == 300
    assert all(enum.index(p) == i for i, p in enumerate(pts))


def test_zeta_skips_zero_and_satisfies_support_bound():
    enum = zeta_enumeration()
    assert enum.point(0) == Point((1,))
    assert enum.point(1) == Point((2,))
    assert enum.point(2) == Point((0, 1))
    for i in range(300):
        assert enum.point(i).support <= i + 1
    with pytest.raises(KeyError):
        enum.index(ZERO_POINT)


# -- concrete scale values ----------------------------------------------


def test_graev_scale_values():
    g = graev_scale()
    assert g(pos((5,)), Dyadic(3, 2)) == Dyadic(3, 2)
    assert g(E, ZERO) == ZERO
    assert g(pos((5,)), 1) == ONE
    assert g.certified_adequate


def test_gamma1_values():
    s = scale_gamma1()
    assert s(pos(()), Dyadic(1, 3)) == Dyadic(1, 3)  # index 0: undistorted
    assert s(pos((1,)), Dyadic(1, 3)) == Dyadic(65, 3)  # index 1
    assert s(neg((1,)), Dyadic(1, 3)) == Dyadic(65, 3)
    assert s(pos((1,)), ZERO) == ZERO
    assert s(E, Dyadic(1, 2)) == Dyadic(1, 2)


def test_gamma2_values():
    s = scale_gamma2()
    x = pos((1,))  # zeta index 0, threshold 2^-6
    assert s(x, Dyadic(1, 7)) == Dyadic(1, 4)
    assert s(x, Dyadic(1, 6)) == Dyadic(1, 3)  # boundary: 8 * 2^-6
    assert s(x, Dyadic(1, 5)) == Dyadic(1, 3)  # max(1/8, 1/32)
    assert s(x, ONE) == ONE
    assert s(pos(()), Dyadic(5, 4)) == Dyadic(5, 4)  # zero point undistorted
    assert s(x, ZERO) == ZERO


def test_gamma0_values():
    s = scale_gamma0()
    assert s(pos(()), Dyadic(7, 3)) == Dyadic(7, 3)
    assert s(pos((1,)), Dyadic(1, 10)) == Dyadic(3, 5)  # min(96/2^10, 2^-10 + 1/2)
    assert s(pos((1,)), ONE) == Dyadic(3, 1)  # min(96, 3/2)
    assert s(neg((1,)), ONE) == Dyadic(3, 1)
    # envelope for [0,1]: min(128 r, r + 1/4)
    assert s(pos((0, 1)), Dyadic(1, 10)) == Dyadic(1, 3)
    assert s(pos((0, 1)), ONE) == Dyadic(5, 2)


def test_gamma0_projection_chain():
    s = scale_gamma0()
    grid = octave_grid(12, include_zero=False)
    for entries in [(1, 2), (2, 0, 1), (0, 1, 1), (3,)]:
        x = Point(entries)
        for n in range(4):
            y = project(x, n)
            for r in grid:
                lo = s(pos(y), r)
                v = s(pos(x), r)
                assert lo <= v <= lo + Dyadic(1, n)


def test_scales_symmetric_on_samples():
    points = point_box(2, 2)
    grid = octave_grid(8)
    for scale in (graev_scale(), scale_gamma1(), scale_gamma2(), scale_gamma0(), toy_scale()):
        for p in points:
            for r in grid:
                assert scale(pos(p), r) == scale(neg(p), r)


def test_pieces_agree_with_evaluator():
    grid = octave_grid(20, include_zero=False)
    letters = letter_box(point_box(2, 2))
    for name in ("graev", "gamma1", "gamma2", "gamma0", "toy"):
        scale = get_scale(name)
        for letter in letters:
            pieces = scale.pieces(letter)
            for r in grid:
                rf = r.as_fraction()
                for p in pieces:
                    lo, hi = p.lo.as_fraction(), p.hi.as_fraction() if p.hi else None
                    if (lo < rf or (lo == rf and p.include_lo)) and (
                        hi is None or rf < hi or (rf == hi and p.include_hi)
                    ):
                        want = min(s.as_fraction() * rf + c.as_fraction() for s, c in p.affines)
                        assert scale(letter, r).as_fraction() == want
                        break
                else:
                    pytest.fail(f"no piece covers r={r} for {name}/{letter}")


def test_int_envelope_agrees_with_evaluator():
    grid = octave_grid(10, include_zero=False)
    letters = letter_box(point_box(2, 2))
    for name in ("graev", "gamma1", "gamma0", "toy"):
        scale = get_scale(name)
        for letter in letters:
            env = scale.int_envelope(letter)
            for r in grid:
                assert scale(letter, r) == min(s * r + c for s, c in env)


def test_get_scale_registry():
    assert get_scale("gamma0") is get_scale("gamma0")
    with pytest.raises(KeyError):
        get_scale("nope")


# -- axiom checks ---------------------------------------------------------


def desk_letters():
    return letter_box(point_box(2, 2))


def test_axioms_pass_for_builtin_scales():
    letters = desk_letters()
    grid = octave_grid(12)
    for name in ("graev", "gamma1", "gamma2", "gamma0"):
        report = check_scale_axioms(get_scale(name), letters, grid)
        assert report.passed, report.lines()


def test_axioms_fail_for_halving_evaluator():
    bad = Scale(name="halver", fn=lambda letter, r: Dyadic(r.num, r.exp + 1))
    report = check_scale_axioms(bad, [pos((1,))], octave_grid(10))
    assert not report.passed
    assert any(f.condition == "dominates-r" for f in report.findings)


def test_axioms_require_zero_in_grid():
    with pytest.raises(ValueError):
        check_scale_axioms(graev_scale(), [pos((1,))], octave_grid(5, include_zero=False))


# -- adequacy and goodness -------------------------------------------------


def small_r_pairs():
    rs = [ZERO, Dyadic(1, 4), Dyadic(1, 2), ONE, Dyadic(3, 1)]
    return [(a, b) for a in rs for b in rs]


def test_adequacy_graev_passes():
    letters = desk_letters()
    triples = list(itertools.product(letters[:9], repeat=3))
    report = check_adequacy(graev_scale(), triples, small_r_pairs())
    assert report.passed, report.findings[:3]


def test_adequacy_gamma0_passes_small():
    letters = letter_box(point_box(2, 1))
    triples = list(itertools.product(letters, repeat=3))
    report = check_adequacy(scale_gamma0(), triples, small_r_pairs())
    assert report.passed, report.findings[:3]


def test_adequacy_quadratic_scale_fails_a1pp():
    quad = Scale(name="quad", fn=lambda letter, r: r if letter.is_identity else r * r + r)
    x, y, z = pos((1,)), pos((2,)), pos((3,))
    report = check_adequacy(quad, [(x, y, z)], [(ONE, ONE)])
    assert any(f.condition == "A1-double-prime" for f in report.findings)


def test_goodness_gamma0_passes_small():
    letters = letter_box(point_box(2, 1))
    pairs = list(itertools.product(letters, repeat=2))
    triples = [(r, r1, r2) for r in octave_grid(10) for (r1, r2) in [(Dyadic(1, 3), Dyadic(1, 2)), (ONE, Dyadic(1, 4))]]
    report = check_goodness(scale_gamma0(), pairs, triples)
    assert report.passed, report.findings[:3]


def test_goodness_graev_passes():
    letters = desk_letters()[:9]
    pairs = list(itertools.product(letters, repeat=2))
    triples = [(r, Dyadic(1, 2), Dyadic(1, 3)) for r in octave_grid(8)]
    report = check_goodness(graev_scale(), pairs, triples)
    assert report.passed


def test_goodness_superlinear_fails_g2():
    quad = Scale(name="quad", fn=lambda letter, r: r if letter.is_identity else r * r + r)
    x = pos((1,))
    triples = [(r, Dyadic(1, 2), Dyadic(1, 2)) for r in [ZERO, ONE, Dyadic(2)]]
    report = check_goodness(quad, [(x, x)], triples)
    assert any(f.condition == "G2" for f in report.findings)


def test_good_implies_adequate_crosscheck():
    # any scale passing goodness on a grid must pass adequacy on it too
    letters = letter_box(point_box(2, 1))
    pairs = list(itertools.product(letters, repeat=2))
    r_pairs = small_r_pairs()
    triples = list(itertools.product(letters, repeat=3))
    g_triples = [(r, r1, r2) for r in octave_grid(8) for (r1, r2) in r_pairs[:8]]
    for scale in (scale_gamma0(), graev_scale()):
        good = check_goodness(scale, pairs, g_triples)
        adequate = check_adequacy(scale, triples, r_pairs)
        assert not good.passed or adequate.passed


# -- universality premises --------------------------------------------------


def support_points(max_support, max_entry):
    return [p for p in point_box(max_support, max_entry) if p.support >= 1]


def test_universality_gamma1_passes():
    enum = xi_enumeration()
    points = [enum.point(i) for i in range(1, 51) if enum.point(i).support <= 2]
    report = check_universality_premises(scale_gamma1(), points)
    assert report.passed, report.findings[:3]
    assert report.certified


def test_universality_gamma2_passes():
    points = support_points(3, 2)
    report = check_universality_premises(scale_gamma2(), points)
    assert report.passed, report.findings[:3]


def test_universality_gamma0_passes():
    points = support_points(3, 3)
    report = check_universality_premises(scale_gamma0(), points)
    assert report.passed, report.findings[:3]


def test_universality_graev_fails_s3():
    report = check_universality_premises(graev_scale(), support_points(2, 2), K=0)
    assert not report.passed
    assert any(f.condition == "S3" for f in report.findings)
    assert not any(f.condition == "S1" for f in report.findings)


def test_universality_sampled_fallback_without_pieces():
    opaque = Scale(name="opaque", fn=scale_gamma0().fn, K=1, s1_witness=lambda x: project(x, x.support - 1))
    report = check_universality_premises(opaque, [Point((1,))])
    assert not report.certified
    assert any("sampled" in note for note in report.notes)


# -- exception-set bounds -----------------------------------------------------


def test_ekm_gamma1():
    report = check_ekm_bound(get_scale("gamma1"), m=1, k=8, cap=100)
    assert report.passed, report.findings[:3]
    assert int(report.context["candidates"]) > 0


def test_ekm_gamma2():
    report = check_ekm_bound(get_scale("gamma2"), m=1, k=10, cap=100)
    assert report.passed, report.findings[:3]


def test_ekm_gamma0():
    report = check_ekm_bound(get_scale("gamma0"), m=1, k=9, cap=100)
    assert report.passed, report.findings[:3]
    # bound: first entry >= 9 - (1+5) = 3
    assert int(report.context["candidates"]) == 98


def test_ekm_requires_window():
    with pytest.raises(ValueError):
        check_ekm_bound(get_scale("gamma1"), m=1, k=6)


# -- finite metric groups ------------------------------------------------------


def test_klein_group_valid_and_conjugation_trivial():
    G = klein_group()
    assert G.identity == 0
    for g in G.elements():
        for r in octave_grid(6):
            assert conjugation_scale(G, g, r) == r  # abelian: conjugation fixes


def test_conjugation_scale_examples():
    G = s3_group()
    one = G.identity
    for r in octave_grid(6):
        assert conjugation_scale(G, one, r) == r
    for g in G.elements():
        assert conjugation_scale(G, g, ZERO) == ZERO


def test_s3_lipschitz_bound():
    report = verify_gamma_G_lipschitz(s3_group(), octave_grid(6))
    assert report.passed, report.findings[:3]
    assert report.checked > 0


def test_s3_is_nonabelian():
    G = s3_group()
    assert any(
        G.mul(a, b) != G.mul(b, a) for a in G.elements() for b in G.elements()
    )


def test_group_roundtrip_and_loader(tmp_path):
    G = s3_group()
    text = format_group(G)
    H = parse_group(text)
    assert H.names == G.names and H.table == G.table and H.metric == G.metric
    path = tmp_path / "s3.group"
    path.write_text(text)
    from graev.scales import load_group

    assert load_group(str(path)).names == G.names


def test_group_validation_reports_first_violation():
    names = ("1", "a")
    table = ((0, 1), (1, 0))
    bad_metric = ((ZERO, Dyadic(1, 1)), (Dyadic(1, 2), ZERO))  # asymmetric
    with pytest.raises(GroupFormatError, match="symmetric"):
        FiniteMetricGroup(names, table, bad_metric)
    with pytest.raises(GroupFormatError, match="identity"):
        FiniteMetricGroup(("1", "a"), ((1, 0), (0, 1)), bad_metric)


def test_right_but_not_left_invariant_rejected():
    # metric d(g,h) = length(g h^-1) with asymmetric generator weights is
    # right-invariant; on a nonabelian group it fails left-invariance
    G = s3_group()
    n = G.size
    right = tuple(
        tuple(G.metric[G.identity][G.mul(i, G.inv(j))] for j in range(n)) for i in range(n)
    )
    with pytest.raises(GroupFormatError, match="left-invariance"):
        FiniteMetricGroup(G.names, G.table, right)


def test_parse_group_rejects_malformed():
    with pytest.raises(GroupFormatError):
        parse_group("nonsense")
    with pytest.raises(GroupFormatError):
        parse_group("elements: a b\ntable:\n0 1\n")
