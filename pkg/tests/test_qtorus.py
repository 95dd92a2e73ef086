import random

import pytest

from dahacubic.core import Field, PoleError, RatFuncX
from dahacubic.qtorus import FieldMismatch, TorusOp, commutator

F = Field.symbolic()


def test_px_equals_q_xp():
    X, P = TorusOp.X(F), TorusOp.P(F)
    assert P.mul(X) == X.mul(P) * F.q


def test_reflection_inverts_x():
    X, s = TorusOp.X(F), TorusOp.s(F)
    assert s.mul(X) == TorusOp.X(F, -1).mul(s)
    assert s.mul(s) == TorusOp.one(F)


def test_reflection_past_shift():
    X = TorusOp.X(F)
    Ps = TorusOp.coeff(F, RatFuncX.const(1), 1, 1)
    assert Ps.mul(X) == TorusOp.X(F, -1).mul(Ps) * (1 / F.q)


def test_p_inverse():
    assert TorusOp.P(F).mul(TorusOp.P(F, -1)) == TorusOp.one(F)


def _random_op(rng):
    terms = {}
    for _ in range(3):
        key = (rng.randint(-2, 2), rng.randint(0, 1))
        num = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        den = rng.choice([[1], [1, 1], [2, 0, -1]])
        terms[key] = RatFuncX.from_coeffs(num, den)
    return TorusOp(F, terms)


@pytest.mark.parametrize("seed", range(5))
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c = (_random_op(rng) for _ in range(3))
    assert a.mul(b).mul(c) == a.mul(b.mul(c))


def test_distributivity():
    rng = random.Random(9)
    a, b, c = (_random_op(rng) for _ in range(3))
    assert a.mul(b + c) == a.mul(b) + a.mul(c)


def test_commutator_of_x_with_itself():
    X = TorusOp.X(F)
    assert commutator(X, X).is_zero()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        TorusOp.X(F) + TorusOp.X(Field.specialized(1))


def test_eval_spec_names_pole():
    v = F.qhalf
    op = TorusOp.coeff(F, RatFuncX.const(1) / (RatFuncX.const(v) - 1), 2, 1)
    with pytest.raises(PoleError, match="P\\^2 s\\^1"):
        op.eval_spec(1)


def test_eval_spec_specializes_field():
    op = TorusOp.X(F) * F.q
    out = op.eval_spec(2)
    assert out.field == Field.specialized(2)
    assert out == TorusOp.X(Field.specialized(2)) * 4


def test_records_are_sorted():
    op = TorusOp.P(F, 2) + TorusOp.s(F) + TorusOp.X(F)
    keys = [(r["j"], r["eps"]) for r in op.to_records()]
    assert keys == sorted(keys)
