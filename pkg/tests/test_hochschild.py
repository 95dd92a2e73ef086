from fractions import Fraction

import pytest

from dahacubic.hochschild import (
    KoszulComplex,
    StabilizationError,
    Window,
    check_chain_maps,
    homology_dims,
    image_characterization_check,
    z2_combine,
)


@pytest.mark.parametrize("q,N", [(0, 10), (1, 10), (-1, 10), (2, 3)])
def test_window_validation(q, N):
    with pytest.raises(ValueError):
        Window(N, q)


@pytest.mark.parametrize("twisted", [False, True])
def test_d_squared_is_zero(twisted):
    cx = KoszulComplex(Fraction(3, 2), twisted)
    for k in range(-3, 4):
        for l in range(-3, 4):
            out = {}
            for key, c in cx.d(2, (0, k, l)).items():
                for key2, c2 in cx.d(1, key).items():
                    out[key2] = out.get(key2, 0) + c * c2
            assert all(v == 0 for v in out.values())


def test_chain_maps():
    assert all(r.passed for r in check_chain_maps(Window(6, Fraction(2))))


@pytest.mark.parametrize("q", [Fraction(2), Fraction(5, 7)])
def test_small_window_dims(q):
    w = Window(6, q)
    assert homology_dims(w, "untwisted").dims == (1, 2, 1)
    assert homology_dims(w, "twisted").dims == (4, 0, 0)
    assert homology_dims(w, "untwisted", invariant=True).dims == (1, 0, 1)


def test_combined():
    rep = z2_combine(Window(8, Fraction(3, 2)))
    assert rep.combined == (5, 0, 1)
    assert rep.stabilized
    assert rep.to_dict()["combined"] == [5, 0, 1]


def test_too_small_window_does_not_stabilize():
    with pytest.raises(StabilizationError):
        homology_dims(Window(4, Fraction(2)), "twisted")
    rep = homology_dims(Window(4, Fraction(2)), "twisted", strict=False)
    assert not rep.stabilized


def test_image_characterization():
    recs = image_characterization_check(Window(8, Fraction(2)))
    assert recs and all(r.passed for r in recs)
