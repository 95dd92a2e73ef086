"""The D4 weight torus, the maps theta and pi, and the Weyl group action.

Weights are stored doubled (integer vectors ``2*lambda``) so the spin
weights need no fractions.  A monomial ``s^lambda`` with half-integral
``lambda`` is evaluated as ``delta * s^(lambda - omega4)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .core import format_rational, to_fraction

__all__ = [
    "FUNDAMENTAL",
    "Prediction",
    "TorusPointS",
    "WeylElement",
    "classify",
    "monomial",
    "orbit",
    "orbit_sum",
    "pi",
    "stabilizer_subsystem",
    "theta",
    "weyl_act",
    "weyl_group",
]

# doubled coordinates of the fundamental weights
FUNDAMENTAL = {
    "omega1": (2, 0, 0, 0),
    "omega2": (2, 2, 0, 0),
    "omega3": (1, 1, 1, -1),
    "omega4": (1, 1, 1, 1),
}
_ALIASES = {"w1": "omega1", "w2": "omega2", "w3": "omega3", "w4": "omega4",
            "ω1": "omega1", "ω2": "omega2", "ω3": "omega3", "ω4": "omega4",
            1: "omega1", 2: "omega2", 3: "omega3", 4: "omega4"}


@dataclass(frozen=True)
class TorusPointS:
    """A point ``(s1, s2, s3, s4; delta)`` with ``s1 s2 s3 s4 = delta^2``."""

    s: tuple
    delta: Fraction

    def __post_init__(self):
        s = tuple(to_fraction(x) for x in self.s)
        d = to_fraction(self.delta)
        if len(s) != 4:
            raise ValueError("a torus point has four coordinates")
        if any(x == 0 for x in s) or d == 0:
            raise ValueError("torus coordinates must be nonzero")
        if s[0] * s[1] * s[2] * s[3] != d * d:
            raise ValueError("s1*s2*s3*s4 must equal delta^2")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "delta", d)

    def to_dict(self) -> dict:
        return {"s": [format_rational(x) for x in self.s], "delta": format_rational(self.delta)}


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation with an even number of sign changes.

    Acts on weights by ``e_i -> signs[i] * e_{perm[i]}``.
    """

    perm: tuple
    signs: tuple

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2, 3]:
            raise ValueError("perm must be a permutation of 0..3")
        if any(x not in (1, -1) for x in self.signs) or self.signs.count(-1) % 2:
            raise ValueError("signs must be +-1 with an even number of -1")

    def act_weight(self, lam: Sequence[int]) -> tuple:
        out = [0] * 4
        for i in range(4):
            out[self.perm[i]] = self.signs[i] * lam[i]
        return tuple(out)

    def inverse(self) -> "WeylElement":
        perm = [0] * 4
        signs = [1] * 4
        for i in range(4):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return WeylElement(tuple(perm), tuple(signs))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other)(lam) = self(other(lam))
        perm = tuple(self.perm[other.perm[i]] for i in range(4))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(4))
        return WeylElement(perm, signs)


@lru_cache(maxsize=None)
def weyl_group() -> tuple[WeylElement, ...]:
    elems = []
    for perm in itertools.permutations(range(4)):
        for signs in itertools.product((1, -1), repeat=4):
            if signs.count(-1) % 2 == 0:
                elems.append(WeylElement(perm, signs))
    return tuple(elems)


def _weight(name) -> tuple:
    name = _ALIASES.get(name, name)
    if name not in FUNDAMENTAL:
        raise KeyError(f"unknown fundamental weight {name!r}")
    return FUNDAMENTAL[name]


@lru_cache(maxsize=None)
def orbit(name) -> tuple:
    lam = _weight(name)
    return tuple(sorted({w.act_weight(lam) for w in weyl_group()}))


def monomial(s: TorusPointS, lam2: Sequence[int]) -> Fraction:
    """``s^lambda`` for a doubled weight ``lam2 = 2*lambda``."""
    parity = {x % 2 for x in lam2}
    if len(parity) != 1:
        raise ValueError(f"{lam2} is not a D4 weight")
    if parity == {0}:
        out = Fraction(1)
        for si, e in zip(s.s, lam2):
            out *= si ** (e // 2)
        return out
    out = s.delta
    for si, e in zip(s.s, lam2):
        out *= si ** ((e - 1) // 2)
    return out


def orbit_sum(weight, s: TorusPointS) -> Fraction:
    return sum((monomial(s, lam) for lam in orbit(weight)), Fraction(0))


def theta(t) -> TorusPointS:
    """``s = (t1 t2, -t1/t2, -t3/t4, t3 t4)``, ``delta = t1 t3``."""
    t1, t2, t3, t4 = (to_fraction(x) for x in (t.t if hasattr(t, "t") else t))
    return TorusPointS((t1 * t2, -t1 / t2, -t3 / t4, t3 * t4), t1 * t3)


def pi(s: TorusPointS) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Cubic coefficients ``(p1, p2, p3, p0)`` of the surface over ``s``."""
    m1, m2, m3, m4 = (orbit_sum(n, s) for n in ("omega1", "omega2", "omega3", "omega4"))
    return (m4, m1, -m3, -m2 - 8)


def weyl_act(w: WeylElement, s: TorusPointS) -> TorusPointS:
    """``(w s)^lambda = s^(w^{-1} lambda)``."""
    winv = w.inverse()
    new = []
    for j in range(4):
        e = [0] * 4
        e[j] = 2
        new.append(monomial(s, winv.act_weight(e)))
    delta = monomial(s, winv.act_weight(FUNDAMENTAL["omega4"]))
    return TorusPointS(tuple(new), delta)


# ---------------------------------------------------------------------------
# stabilizers


def _positive_roots() -> list[tuple[str, int, int]]:
    roots = []
    for i, j in itertools.combinations(range(4), 2):
        roots.append(("-", i, j))
        roots.append(("+", i, j))
    return roots


def _root_vector(r) -> tuple:
    kind, i, j = r
    v = [0] * 4
    v[i] = 1
    v[j] = -1 if kind == "-" else 1
    return tuple(v)


def _fixes(r, s: TorusPointS) -> bool:
    kind, i, j = r
    if kind == "-":
        return s.s[i] == s.s[j]
    return s.s[i] * s.s[j] == 1


_TYPE_BY_SIZE = {1: "A1", 3: "A2", 6: "A3", 12: "D4"}
_MILNOR = {"A1": 1, "A2": 2, "A3": 3, "D4": 4}


def _root_label(r) -> str:
    kind, i, j = r
    return f"e{i + 1}{kind}e{j + 1}"


def stabilizer_subsystem(s: TorusPointS) -> list[dict]:
    """Irreducible components of the root subsystem fixing ``s``.

    Each component is ``{"type": ..., "roots": [...]}``, sorted by type.
    """
    fixing = [r for r in _positive_roots() if _fixes(r, s)]
    vecs = {r: _root_vector(r) for r in fixing}
    comps: list[list] = []
    seen = set()
    for r in fixing:
        if r in seen:
            continue
        comp, stack = [], [r]
        seen.add(r)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in fixing:
                if b not in seen and sum(x * y for x, y in zip(vecs[a], vecs[b])) != 0:
                    seen.add(b)
                    stack.append(b)
        comps.append(comp)
    out = []
    for comp in comps:
        typ = _TYPE_BY_SIZE.get(len(comp))
        if typ is None:
            raise ValueError(f"unexpected root subsystem with {len(comp)} positive roots")
        out.append({"type": typ, "roots": sorted(_root_label(r) for r in comp)})
    return sorted(out, key=lambda c: (c["type"], c["roots"]))


_STRATUM = {
    (): "smooth",
    ("A1",): "Sigma",
    ("A1", "A1"): "Sigma'_{1,1}",
    ("A2",): "Sigma'_2",
    ("A1", "A1", "A1"): "Sigma''_{1,1,1}",
    ("A3",): "Sigma''_3",
    ("A1", "A1", "A1", "A1"): "Sigma'''_{1,1,1,1}",
    ("D4",): "Sigma'''_4",
}


@dataclass
class Prediction:
    """Predicted singularities over ``s`` from its stabilizer."""

    point: TorusPointS
    types: list
    stratum: str
    components: list

    @property
    def total_milnor(self) -> int:
        return sum(_MILNOR[t] for t in self.types)

    def to_dict(self) -> dict:
        return {"s_point": self.point.to_dict(), "predicted_types": self.types,
                "witness_stratum": self.stratum, "total_milnor": self.total_milnor,
                "components": self.components}


def _a1_label(s: TorusPointS, comp: dict) -> str:
    kind, i, j = comp["roots"][0][2], comp["roots"][0][1], comp["roots"][0][4]
    eps = "1" if kind == "-" else "-1"
    return f"Sigma^{eps}_{{{i}{j}}}"


def classify(s: TorusPointS) -> Prediction:
    comps = stabilizer_subsystem(s)
    types = sorted(c["type"] for c in comps)
    key = tuple(types)
    stratum = _STRATUM.get(key)
    if stratum is None:
        raise ValueError(f"unexpected stabilizer type {key}")
    if key == ("A1",):
        stratum = _a1_label(s, comps[0])
    return Prediction(s, types, stratum, comps)
