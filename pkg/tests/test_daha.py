from fractions import Fraction

import pytest

from dahacubic.core import Field, RatFuncX
from dahacubic.daha import (
    GenSet,
    NotFlatError,
    Params,
    center_generators,
    check_automorphism,
    check_centrality,
    check_composites,
    check_presentation,
    compose_images,
    deformation_bracket,
    center_images,
    expected_center_images,
    ld_generators,
    verify_bracket_table,
    verify_cubic_relation,
    verify_generator_brackets,
    verify_symmetrizer,
)
from dahacubic.qtorus import TorusOp


def failed(recs):
    return [r.relation_name for r in recs if not r.passed]


def test_params_reject_zero():
    with pytest.raises(ValueError, match="nonzero"):
        Params(0, 1, 1, 1)


def test_param_maps():
    p = Params(2, 3, 5, 7)
    assert p.sigma().t == (7, 3, 5, 2)
    assert p.tau().t == (5, 3, 2, 7)
    assert p.eta().t == tuple(Fraction(1, x) for x in (2, 3, 5, 7))
    assert p.kb0 == Fraction(3, 2)


def test_presentation_symbolic(generic_params):
    recs = check_presentation(ld_generators(generic_params))
    assert len(recs) == 9
    assert failed(recs) == []


@pytest.mark.parametrize("v0", [2, Fraction(3, 5), -3])
def test_presentation_specialized(generic_params, v0):
    assert failed(check_presentation(ld_generators(generic_params, Field.specialized(v0)))) == []


def test_presentation_degenerate_parameters():
    assert failed(check_presentation(ld_generators(Params(1, 1, 1, 1)))) == []


def test_printed_t0_breaks_its_quadratic(generic_params):
    # T0 with its coefficient written in X instead of q^{1/2} X^{-1}
    p, F = generic_params, Field.symbolic()
    one = TorusOp.one(F)
    Pis = TorusOp.coeff(F, RatFuncX.const(1), -1, 1)
    c0 = TorusOp.coeff(F, RatFuncX.from_coeffs([p.kb0, p.ub0]) / RatFuncX.from_coeffs([1, 0, -1]))
    bad_T0 = Pis * p.k0 + c0.mul(one - Pis)
    good = ld_generators(p)
    bad = GenSet(p, F.qhalf, bad_T0, good.V1, good.V0v, good.V1v)
    assert "quadratic V0" in failed(check_presentation(bad))


def test_center_and_cubic(generic_params):
    g = ld_generators(generic_params, Field.specialized(1))
    assert failed(check_centrality(g)) == []
    recs = verify_cubic_relation(generic_params, g)
    assert len(recs) == 7
    assert failed(recs) == []


def test_center_fails_off_q_one(generic_params):
    g = ld_generators(generic_params, Field.specialized(2))
    assert failed(check_centrality(g))
    with pytest.raises(ValueError):
        verify_cubic_relation(generic_params, g)


def test_cubic_relation_with_wrong_coefficients():
    p, other = Params(2, 3, 5, 7), Params(2, 3, 5, 11)
    g = ld_generators(p, Field.specialized(1))
    assert not verify_cubic_relation(other, g, intermediates=False)[0].passed


def test_brackets(generic_params):
    g = ld_generators(generic_params)
    assert failed(verify_bracket_table(generic_params, g)) == []
    assert failed(verify_generator_brackets(generic_params, g)) == []


def test_deformation_bracket_needs_flat_commutator():
    F = Field.symbolic()
    with pytest.raises(NotFlatError):
        deformation_bracket(TorusOp.X(F), TorusOp.s(F))
    with pytest.raises(ValueError):
        deformation_bracket(TorusOp.X(Field.specialized(1)), TorusOp.s(Field.specialized(1)))


def test_deformation_bracket_on_torus():
    F = Field.symbolic()
    X, P = TorusOp.X(F), TorusOp.P(F)
    # [X, P] = (1 - q) X P
    assert deformation_bracket(X, P) == -X.mul(P).eval_spec(1)


def test_symmetrizer(generic_params):
    assert failed(verify_symmetrizer(generic_params)) == []


@pytest.mark.parametrize("name", ["sigma", "tau", "eta"])
def test_automorphisms(generic_params, name):
    assert failed(check_automorphism(name, generic_params)) == []


def test_automorphism_aliases(generic_params):
    a = compose_images(["σ"], generic_params)
    b = compose_images(["sigma"], generic_params)
    assert all(x == y for x, y in zip(a.gens(), b.gens()))
    with pytest.raises(KeyError):
        compose_images(["rho"], generic_params)


def test_composites(generic_params):
    assert failed(check_composites(generic_params)) == []


def test_sigma_tau_cubed_is_not_identity(generic_params):
    g = ld_generators(generic_params)
    st3 = compose_images(["sigma", "tau"] * 3, generic_params)
    assert any(not (a - b).is_zero() for a, b in zip(st3.gens(), g.gens()))


@pytest.mark.parametrize("name", ["sigma", "tau", "eta"])
def test_center_images(generic_params, name):
    got = center_images(name, generic_params)
    exp = expected_center_images(name, generic_params)
    assert all((a - b).is_zero() for a, b in zip(got, exp))


def test_center_generators_commute(generic_params):
    X1, X2, X3 = center_generators(ld_generators(generic_params, Field.specialized(1)))
    assert (X1.mul(X2) - X2.mul(X1)).is_zero()
    assert (X2.mul(X3) - X3.mul(X2)).is_zero()
