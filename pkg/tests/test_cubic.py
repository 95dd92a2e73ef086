import random
from fractions import Fraction

import pytest

from dahacubic.cubic import (
    CTX,
    X1,
    X2,
    X3,
    CubicSurface,
    MilnorError,
    analyze,
    coeffs_from_params,
    hessian_rank,
    jacobi_check,
    k_action,
    milnor_number,
    normal_form,
    parse_poly,
    poisson_bracket,
    poisson_checks,
    poisson_sign,
    poly_to_json,
    verify_equivariance,
    verify_singular,
)
from dahacubic.daha import Params
from dahacubic.weyl import TorusPointS, pi, theta

S = coeffs_from_params((2, 3, 5, 7))


def test_surface_equation_shape():
    R = S.R
    assert R.to_dict()[(1, 1, 1)] == 1
    assert R.to_dict()[(2, 0, 0)] == -1
    assert CubicSurface.of(S.p) == S


def test_normal_form_kills_R():
    assert normal_form(S.R, S).is_zero()
    assert normal_form(S.R * X1 + X2, S) == normal_form(X2, S)


def test_bracket_table():
    d1, d2, d3 = S.partials()
    assert poisson_bracket(X1, X2, S).poly == d3
    assert poisson_bracket(X2, X3, S).poly == d1
    assert poisson_bracket(X3, X1, S).poly == d2


def test_poisson_axioms():
    recs = jacobi_check(S) + poisson_checks(S)
    assert all(r.passed for r in recs)


def test_flipped_table_breaks_jacobi():
    d1, d2, d3 = S.partials()
    table = {(0, 1): -d3, (1, 2): d1, (2, 0): d2}
    assert not all(r.passed for r in jacobi_check(S, table))


@pytest.mark.parametrize("word", [["g1"], ["g2"], ["g3"]])
def test_vieta_involutions(word):
    img, T, _ = k_action(word + word, X3 * X1 + X2, S)
    assert img == normal_form(X3 * X1 + X2, S)
    assert T == S
    assert verify_equivariance(word[0], Params(2, 3, 5, 7)).scalar == 1


def test_vieta_preserves_R_exactly():
    from dahacubic.cubic import _g_images
    for i in range(3):
        assert S.R.compose(*_g_images(i, S)) == S.R


def test_vieta_is_anti_poisson():
    assert [poisson_sign(i, S) for i in (1, 2, 3)] == [-1, -1, -1]


@pytest.mark.parametrize("name", ["sigma", "tau", "eta"])
def test_equivariance(name):
    rec = verify_equivariance(name, Params(2, 3, 5, 7))
    assert rec.passed
    assert rec.scalar in (1, -1)


def test_k_action_changes_surface():
    t = Params(2, 3, 5, 7)
    img, T, tt = k_action(["sigma"], X1, S, t)
    assert tt == t.sigma()
    assert T == coeffs_from_params(t.sigma())
    assert img.poly == X2


def test_k_action_needs_params():
    with pytest.raises(ValueError):
        k_action(["tau"], X1, S)
    with pytest.raises(KeyError):
        k_action(["g4"], X1, S)


def test_parse_poly():
    f = parse_poly("X1*X2 - 2*X3 + 1/2")
    assert f * 2 == X1 * X2 * 2 - X3 * 4 + CTX.constant(1)
    assert parse_poly("X1^2") == X1 ** 2
    assert poly_to_json(parse_poly("3*X1 - 1")) == {"0,0,0": "-1/1", "1,0,0": "3/1"}


@pytest.mark.parametrize("bad", ["X4", "X1 +", "X1**X2", "1.5*X1", "f(X1)", "X1/X2"])
def test_parse_poly_rejects(bad):
    with pytest.raises(ValueError):
        parse_poly(bad)


def test_milnor_d4_and_a1():
    D = CubicSurface.of(pi(TorusPointS((1, 1, 1, 1), 1)))
    pt = (Fraction(2), Fraction(2), Fraction(-2))
    assert verify_singular(D, pt)
    assert milnor_number(D, pt) == 4
    assert hessian_rank(D, pt) == 1
    A = CubicSurface.of(pi(TorusPointS((2, 2, 3, 12), 12)))
    rep = analyze(A)
    assert [p.milnor for p in rep.points] == [1]


def test_milnor_rejects_smooth_point():
    with pytest.raises((MilnorError, ValueError)):
        milnor_number(S, (Fraction(0), Fraction(0), Fraction(0)))


def test_identity_params_four_nodes():
    rep = analyze(coeffs_from_params((1, 1, 1, 1)), theta((1, 1, 1, 1)))
    pts = sorted(p.point for p in rep.points)
    want = sorted((2 * a, 2 * b, 2 * a * b) for a in (1, -1) for b in (1, -1))
    assert pts == want
    assert rep.types == ["A1"] * 4
    assert rep.agrees and rep.completeness == "proved"


def test_generic_surface_smooth():
    rep = analyze(S, theta((2, 3, 5, 7)))
    assert rep.points == [] and rep.completeness == "proved"


def test_mismatched_point_rejected():
    with pytest.raises(ValueError):
        analyze(S, TorusPointS((1, 1, 1, 1), 1))
