import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp

from dahacubic.cubic import coeffs_from_params
from dahacubic.weyl import (
    TorusPointS,
    WeylElement,
    classify,
    monomial,
    orbit,
    pi,
    stabilizer_subsystem,
    theta,
    weyl_act,
    weyl_group,
)


def independent_orbits():
    """Doubled weights of the four minuscule-type orbits, listed by hand."""
    w1 = set()
    for i in range(4):
        for sgn in (2, -2):
            v = [0] * 4
            v[i] = sgn
            w1.add(tuple(v))
    w2 = set()
    for i, j in itertools.combinations(range(4), 2):
        for a, b in itertools.product((2, -2), repeat=2):
            v = [0] * 4
            v[i], v[j] = a, b
            w2.add(tuple(v))
    half = list(itertools.product((1, -1), repeat=4))
    w4 = {v for v in half if v.count(-1) % 2 == 0}
    w3 = {v for v in half if v.count(-1) % 2 == 1}
    return w1, w2, w3, w4


def symbolic_pi_theta():
    t1, t2, t3, t4 = sp.symbols("t1:5")
    s = (t1 * t2, -t1 / t2, -t3 / t4, t3 * t4)
    delta = t1 * t3

    def mono(lam):
        if lam[0] % 2 == 0:
            return sp.Mul(*[si ** (e // 2) for si, e in zip(s, lam)])
        return delta * sp.Mul(*[si ** ((e - 1) // 2) for si, e in zip(s, lam)])

    m1, m2, m3, m4 = (sum(mono(l) for l in orb) for orb in independent_orbits())
    got = (m4, m1, -m3, -m2 - 8)
    kb = [x - 1 / x for x in (t1, t2, t3, t4)]
    kb0, kb1, ub0, ub1 = kb
    want = (ub0 * kb0 + kb1 * ub1, ub1 * ub0 + kb0 * kb1, kb0 * ub1 + kb1 * ub0,
            kb0 ** 2 + kb1 ** 2 + ub0 ** 2 + ub1 ** 2 - kb0 * kb1 * ub0 * ub1)
    return [sp.cancel(a - b) for a, b in zip(got, want)]


def test_pi_theta_symbolic():
    assert symbolic_pi_theta() == [0, 0, 0, 0]


def test_orbits_match_hand_enumeration():
    hand = independent_orbits()
    for name, h in zip(("omega1", "omega2", "omega3", "omega4"), hand):
        assert set(orbit(name)) == h
    assert [len(orbit(n)) for n in ("omega1", "omega2", "omega3", "omega4")] == [8, 24, 8, 8]


def test_group_order_and_closure():
    W = weyl_group()
    assert len(W) == 192
    assert len(set(W)) == 192
    rng = random.Random(3)
    for _ in range(20):
        a, b = rng.choice(W), rng.choice(W)
        assert a * b in W
        assert (a * a.inverse()).perm == (0, 1, 2, 3)


def test_odd_sign_change_rejected():
    with pytest.raises(ValueError):
        WeylElement((0, 1, 2, 3), (-1, 1, 1, 1))


def test_torus_point_validation():
    with pytest.raises(ValueError, match="delta"):
        TorusPointS((1, 2, 3, 4), 5)
    with pytest.raises(ValueError):
        TorusPointS((0, 1, 1, 1), 0)


def test_pi_of_identity_point():
    s = TorusPointS((1, 1, 1, 1), 1)
    assert pi(s) == (8, 8, -8, -32)


def random_point(rng):
    s1, s2, s3, d = (Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))
                     for _ in range(4))
    return TorusPointS((s1, s2, s3, d * d / (s1 * s2 * s3)), d)


@pytest.mark.parametrize("seed", range(3))
def test_pi_is_weyl_invariant(seed):
    s = random_point(random.Random(seed))
    base = pi(s)
    assert all(pi(weyl_act(w, s)) == base for w in weyl_group())


def test_weyl_act_is_an_action():
    s = random_point(random.Random(11))
    W = weyl_group()
    a, b = W[17], W[101]
    lhs = weyl_act(a * b, s)
    rhs = weyl_act(a, weyl_act(b, s))
    assert lhs == rhs


def test_monomial_half_weight_uses_delta():
    s = TorusPointS((4, 1, 1, 1), 2)
    assert monomial(s, (1, 1, 1, 1)) == 2
    assert monomial(s, (2, 0, 0, 0)) == 4
    with pytest.raises(ValueError):
        monomial(s, (1, 0, 0, 0))


def test_theta_lands_over_params():
    t = (2, 3, 5, 7)
    assert coeffs_from_params(t).p == pi(theta(t))


@pytest.mark.parametrize("s,delta,types", [
    ((2, 2, 3, 12), 12, ["A1"]),
    ((2, 2, 3, 3), 6, ["A1", "A1"]),
    ((2, 2, 2, 18), 12, ["A2"]),
    ((1, 1, 3, 3), 3, ["A1", "A1", "A1"]),
    ((2, 2, 2, 2), 4, ["A3"]),
    ((1, -1, -1, 1), 1, ["A1", "A1", "A1", "A1"]),
    ((1, 1, 1, 1), 1, ["D4"]),
])
def test_classify_witnesses(s, delta, types):
    pred = classify(TorusPointS(s, delta))
    assert pred.types == types
    assert pred.total_milnor == {"A1": 1, "A2": 2, "A3": 3, "D4": 4}[types[0]] * (
        len(types) if types[0] == "A1" else 1)


def test_a1_stratum_label():
    pred = classify(TorusPointS((2, 2, 3, 12), 12))
    assert pred.stratum.startswith("Sigma^")


def test_generic_point_is_smooth():
    pred = classify(theta((2, 3, 5, 7)))
    assert pred.types == [] and pred.stratum == "smooth"
    assert stabilizer_subsystem(theta((2, 3, 5, 7))) == []
