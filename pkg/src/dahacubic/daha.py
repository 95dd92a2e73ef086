"""The C^vC1 double affine Hecke algebra inside the localized quantum torus.

Generators ``V0, V1, V0v, V1v`` are realized by the Lusztig-Demazure
operators.  Identities are verified by reducing the difference of both
sides to the zero operator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from .core import Field, PoleError, RatFuncV, RatFuncX, to_fraction
from .qtorus import TorusOp, commutator

__all__ = [
    "CheckRecord",
    "GenSet",
    "MAPS",
    "NotFlatError",
    "Params",
    "automorphism_images",
    "center_generators",
    "center_images",
    "check_automorphism",
    "check_centrality",
    "check_composites",
    "check_presentation",
    "compose_images",
    "deformation_bracket",
    "expected_center_images",
    "ld_generators",
    "random_params",
    "symmetrizer",
    "verify_bracket_table",
    "verify_cubic_relation",
    "verify_generator_brackets",
    "verify_symmetrizer",
]


@dataclass(frozen=True)
class Params:
    """Parameters ``t = (k0, k1, u0, u1)``, all nonzero rationals."""

    k0: Fraction
    k1: Fraction
    u0: Fraction
    u1: Fraction

    def __post_init__(self):
        for name in ("k0", "k1", "u0", "u1"):
            val = to_fraction(getattr(self, name))
            if val == 0:
                raise ValueError("parameters must be nonzero")
            object.__setattr__(self, name, val)

    @classmethod
    def of(cls, t: Sequence) -> "Params":
        if len(t) != 4:
            raise ValueError("expected four parameters (k0, k1, u0, u1)")
        return cls(*t)

    @property
    def t(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.k0, self.k1, self.u0, self.u1)

    @staticmethod
    def bar(x: Fraction) -> Fraction:
        return x - 1 / x

    @property
    def kb0(self):
        return self.bar(self.k0)

    @property
    def kb1(self):
        return self.bar(self.k1)

    @property
    def ub0(self):
        return self.bar(self.u0)

    @property
    def ub1(self):
        return self.bar(self.u1)

    def bars(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Bars in generator order ``(V0, V1, V0v, V1v)``."""
        return (self.kb0, self.kb1, self.ub0, self.ub1)

    def sigma(self) -> "Params":
        return Params(self.u1, self.k1, self.u0, self.k0)

    def tau(self) -> "Params":
        return Params(self.u0, self.k1, self.k0, self.u1)

    def eta(self) -> "Params":
        return Params(1 / self.k0, 1 / self.k1, 1 / self.u0, 1 / self.u1)

    def __str__(self):
        return "(" + ", ".join(f"{x.numerator}/{x.denominator}" for x in self.t) + ")"


def random_params(rng: random.Random, lo: int = 1, hi: int = 20) -> Params:
    """Numerators and denominators uniform in ``[lo, hi]`` with random signs."""
    vals = []
    for _ in range(4):
        x = Fraction(rng.randint(lo, hi), rng.randint(lo, hi))
        vals.append(x if rng.random() < 0.5 else -x)
    return Params(*vals)


@dataclass
class GenSet:
    """Images of ``V0, V1, V0v, V1v`` together with their inverses.

    ``params`` and ``qhalf`` describe the algebra these elements represent,
    which for automorphism images differs from the ambient torus.
    """

    params: Params
    qhalf: object
    V0: TorusOp
    V1: TorusOp
    V0v: TorusOp
    V1v: TorusOp
    inv: tuple = dc_field(default=None)

    def __post_init__(self):
        if self.inv is None:
            gens = self.gens()
            self.inv = tuple(g - b for g, b in zip(gens, self.params.bars()))

    @property
    def field(self) -> Field:
        return self.V0.field

    def gens(self) -> tuple[TorusOp, TorusOp, TorusOp, TorusOp]:
        return (self.V0, self.V1, self.V0v, self.V1v)

    @property
    def V0i(self):
        return self.inv[0]

    @property
    def V1i(self):
        return self.inv[1]

    @property
    def V0vi(self):
        return self.inv[2]

    @property
    def V1vi(self):
        return self.inv[3]

    @property
    def T0(self):
        return self.V0

    @property
    def T1(self):
        return self.V1

    @property
    def T0v(self):
        return self.V0v

    @property
    def T1v(self):
        return self.V1v

    @property
    def X(self) -> TorusOp:
        """``V1^{-1} (V1v)^{-1}``; equals the multiplication operator X."""
        return self.V1i.mul(self.V1vi)

    @property
    def Y(self) -> TorusOp:
        return self.V1.mul(self.V0)

    def eval_spec(self, v0) -> "GenSet":
        qh = self.qhalf
        qh = RatFuncV.__call__(qh, v0) if isinstance(qh, RatFuncV) else qh
        return GenSet(self.params, qh, *(g.eval_spec(v0) for g in self.gens()),
                      inv=tuple(g.eval_spec(v0) for g in self.inv))


def ld_generators(p: Params, field: Field | None = None) -> GenSet:
    """Lusztig-Demazure operators for ``H(t; q)`` with ``q^{1/2} = field.qhalf``."""
    F = field or Field.symbolic()
    one = TorusOp.one(F)
    s = TorusOp.s(F)
    Pis = TorusOp.coeff(F, RatFuncX.const(1), -1, 1)
    denom = RatFuncX.from_coeffs([1, 0, -1])
    # P^{-1}s sends X to qX^{-1}, so T0's coefficient is written in
    # Z = q^{1/2}X^{-1}, which that reflection inverts
    Z = RatFuncX.X(-1) * F.qhalf
    c0 = TorusOp.coeff(F, (Z * p.ub0 + p.kb0) / (1 - Z * Z))
    c1 = TorusOp.coeff(F, RatFuncX.from_coeffs([p.kb1, p.ub1]) / denom)
    T0 = Pis * p.k0 + c0.mul(one - Pis)
    T1 = s * p.k1 + c1.mul(one - s)
    T0i = T0 - p.kb0
    T1i = T1 - p.kb1
    Xop, Xinv = TorusOp.X(F), TorusOp.X(F, -1)
    T1v = Xinv.mul(T1i)
    T0v = T0i.mul(Xop) * (1 / F.qhalf)
    return GenSet(p, F.qhalf, T0, T1, T0v, T1v)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckRecord:
    relation_name: str
    status: str
    residue_support_size: int
    group: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"relation_name": self.relation_name, "status": self.status,
                "residue_support_size": self.residue_support_size, "group": self.group}


def _record(name: str, residue: TorusOp, group: str) -> CheckRecord:
    n = len(residue.terms)
    return CheckRecord(name, "pass" if n == 0 else "fail", n, group)


def check_presentation(g: GenSet, p: Params | None = None) -> list[CheckRecord]:
    """Five defining relations and four relations in ``X, Y, T``.

    ``p`` defaults to the parameters carried by ``g``.
    """
    p = p or g.params
    qh = g.qhalf
    q = qh * qh
    V0, V1, V0v, V1v = g.gens()
    recs = []
    for name, V, c in (("quadratic V0", V0, p.k0), ("quadratic V1", V1, p.k1),
                       ("quadratic V0v", V0v, p.u0), ("quadratic V1v", V1v, p.u1)):
        recs.append(_record(name, (V - c).mul(V + 1 / c), "presentation"))
    recs.append(_record("product V1v V1 V0 V0v", V1v.mul(V1).mul(V0).mul(V0v) - 1 / qh,
                        "presentation"))

    # X, Y, T presentation; inverses are taken with the same parameters as p
    V0i, V1i = V0 - p.kb0, V1 - p.kb1
    V0vi = V0v - p.ub0
    Xp = V0.mul(V0v) * qh
    Xpi = V0vi.mul(V0i) * (1 / qh)
    Y, T, Ti = V1.mul(V0), V1, V1i
    Yi = V0i.mul(V1i)
    recs.append(_record("XT = T^-1 X^-1 + (1/u1 - u1)",
                        Xp.mul(T) - Ti.mul(Xpi) - (1 / p.u1 - p.u1), "XYT"))
    recs.append(_record("Y^-1 T = T^-1 Y + (1/k0 - k0)",
                        Yi.mul(T) - Ti.mul(Y) - (1 / p.k0 - p.k0), "XYT"))
    recs.append(_record("(T - k1)(T + 1/k1) = 0", (T - p.k1).mul(T + 1 / p.k1), "XYT"))
    TY, TX = T.mul(Y), T.mul(Xp)
    rhs = T.mul(TX).mul(Y) * q + TY * (q * p.ub1) + TX * p.kb0 + T * (qh * p.ub0)
    recs.append(_record("YX = qT^2XY + q ub1 TY + kb0 TX + q^1/2 ub0 T", Y.mul(Xp) - rhs, "XYT"))
    return recs


# ---------------------------------------------------------------------------
# center and cubic relation


def center_generators(g: GenSet) -> tuple[TorusOp, TorusOp, TorusOp]:
    X1 = g.V1v.mul(g.V1) + g.V0.mul(g.V0v)
    X2 = g.V1.mul(g.V0) + g.V0v.mul(g.V1v)
    X3 = g.V1.mul(g.V0v) + g.V0vi.mul(g.V1i)
    return X1, X2, X3


def _cubic_coeffs(p: Params):
    kb0, kb1, ub0, ub1 = p.bars()
    p1 = ub0 * kb0 + kb1 * ub1
    p2 = ub1 * ub0 + kb0 * kb1
    p3 = kb0 * ub1 + kb1 * ub0
    p0 = kb0 ** 2 + kb1 ** 2 + ub0 ** 2 + ub1 ** 2 - kb0 * kb1 * ub0 * ub1
    return p1, p2, p3, p0


def check_centrality(g: GenSet) -> list[CheckRecord]:
    recs = []
    names = ("V0", "V1", "V0v", "V1v")
    for i, Xi in enumerate(center_generators(g), 1):
        for name, V in zip(names, g.gens()):
            recs.append(_record(f"[X{i}, {name}] = 0", commutator(Xi, V), "center"))
    return recs


def verify_cubic_relation(p: Params, g: GenSet | None = None,
                          intermediates: bool = True) -> list[CheckRecord]:
    """Cubic relation among ``X1, X2, X3`` at ``q = 1``."""
    g = g or ld_generators(p, Field.specialized(1))
    if g.field.is_symbolic or g.field.qhalf != 1:
        raise ValueError("the cubic relation is checked at v = 1")
    X1, X2, X3 = center_generators(g)
    p1, p2, p3, p0 = _cubic_coeffs(p)
    R = (X1.mul(X2).mul(X3) - X1.mul(X1) - X2.mul(X2) - X3.mul(X3)
         + X1 * p1 + X2 * p2 + X3 * p3 + (p0 + 4))
    recs = [_record("R(X1, X2, X3) = 0", R, "cubic")]
    if intermediates:
        recs.extend(_intermediate_identities(g, p, X1, X2, X3))
    return recs


def _intermediate_identities(g, p, X1, X2, X3) -> list[CheckRecord]:
    kb0, kb1, ub0, ub1 = p.bars()
    V0, V1, V0v, V1v = g.gens()
    V0i, V1i, V0vi, V1vi = g.inv
    recs = []
    recs.append(_record("X1 = V1 V1v + V1v^-1 V1^-1",
                        X1 - V1.mul(V1v) - V1vi.mul(V1i), "cubic-steps"))
    recs.append(_record("X3 = V0v V1 + V1^-1 V0v^-1",
                        X3 - V0v.mul(V1) - V1i.mul(V0vi), "cubic-steps"))
    W = V1vi.mul(V0) + V0i.mul(V1v)
    recs.append(_record("X1 X2 = X3 - ub0 kb1 + W",
                        X1.mul(X2) - X3 + ub0 * kb1 - W, "cubic-steps"))
    A = V1vi.mul(V1i).mul(V0vi) - V0v.mul(V1).mul(V1v)
    B = V1vi.mul(V1i).mul(V1vi) - V1v.mul(V1).mul(V1v)
    rhs = (X1.mul(X1) + X2.mul(X2) - 4 - ub0 ** 2 - ub1 ** 2 - X2 * (ub0 * ub1)
           + A * kb0 + B * kb1)
    recs.append(_record("W X3 = X1^2 + X2^2 - 4 - ... + kb0 A + kb1 B",
                        W.mul(X3) - rhs, "cubic-steps"))
    recs.append(_record("A = -kb0 - ub0 X1 - kb1 X2 - ub1 X3 + ub0 ub1 kb1",
                        A + kb0 + X1 * ub0 + X2 * kb1 + X3 * ub1 - ub0 * ub1 * kb1,
                        "cubic-steps"))
    recs.append(_record("B = -ub1 X1 - kb1", B + X1 * ub1 + kb1, "cubic-steps"))
    return recs


# ---------------------------------------------------------------------------
# deformation bracket


class NotFlatError(ValueError):
    """The commutator does not vanish at ``q = 1``."""


def deformation_bracket(F: TorusOp, G: TorusOp) -> TorusOp:
    """``[F, G] / (q - 1)`` evaluated at ``v = 1``.

    Both operators must be over the symbolic field.  Raises
    :class:`NotFlatError` if the quotient has a pole at ``v = 1``.
    """
    if not F.field.is_symbolic:
        raise ValueError("deformation_bracket needs symbolic-v operators")
    C = commutator(F, G)
    scale = RatFuncX.const(1 / (F.field.q - 1))
    try:
        return C.map_coeffs(lambda c: c * scale).eval_spec(1)
    except PoleError as exc:
        raise NotFlatError(f"commutator not divisible by q - 1: {exc}") from None


def verify_bracket_table(p: Params, g: GenSet | None = None) -> list[CheckRecord]:
    """Deformation brackets of the central generators against partials of R."""
    g = g or ld_generators(p)
    X1, X2, X3 = center_generators(g)
    p1, p2, p3, _ = _cubic_coeffs(p)
    Y1, Y2, Y3 = center_generators(g.eval_spec(1))
    dR1 = Y2.mul(Y3) - Y1 * 2 + p1
    dR2 = Y1.mul(Y3) - Y2 * 2 + p2
    dR3 = Y1.mul(Y2) - Y3 * 2 + p3
    return [
        _record("{X1,X2} = X1X2 - 2X3 + p3", deformation_bracket(X1, X2) - dR3, "bracket"),
        _record("{X2,X3} = X2X3 - 2X1 + p1", deformation_bracket(X2, X3) - dR1, "bracket"),
        _record("{X3,X1} = X1X3 - 2X2 + p2", deformation_bracket(X3, X1) - dR2, "bracket"),
    ]


def verify_generator_brackets(p: Params, g: GenSet | None = None) -> list[CheckRecord]:
    """``{X1, V}`` for the four generators, with the factor 1/2."""
    g = g or ld_generators(p)
    X1 = center_generators(g)[0]
    h = g.eval_spec(1)
    V0, V1, V0v, V1v = h.gens()
    V0i, V1i, V0vi, V1vi = h.inv
    half = Fraction(1, 2)
    expect = {
        "V0": (V0.mul(V0v).mul(V0i) - V0v) * half,
        "V0v": (V0 - V0vi.mul(V0).mul(V0v)) * half,
        "V1": (V1v - V1i.mul(V1v).mul(V1)) * half,
        "V1v": (V1v.mul(V1).mul(V1vi) - V1) * half,
    }
    recs = []
    for name, V in zip(("V0", "V1", "V0v", "V1v"), g.gens()):
        recs.append(_record(f"{{X1,{name}}}", deformation_bracket(X1, V) - expect[name],
                            "bracket-generators"))
    return recs


# ---------------------------------------------------------------------------
# symmetrizer


def symmetrizer(p: Params, g: GenSet | None = None) -> TorusOp:
    g = g or ld_generators(p)
    if 1 + p.k1 ** 2 == 0:
        raise ZeroDivisionError("1 + k1^2 vanishes")
    return (g.V1 * p.k1 + 1) * (1 / (1 + p.k1 ** 2))


def verify_symmetrizer(p: Params) -> list[CheckRecord]:
    g = ld_generators(p)
    e = symmetrizer(p, g)
    recs = [_record("e^2 = e", e.mul(e) - e, "symmetrizer")]
    h = ld_generators(p, Field.specialized(1))
    e1 = symmetrizer(p, h)
    Xs = center_generators(h)
    for i, Xi in enumerate(Xs, 1):
        recs.append(_record(f"e X{i} e = X{i} e", e1.mul(Xi).mul(e1) - Xi.mul(e1), "symmetrizer"))
    # z -> z e is multiplicative on products of central elements
    X1, X2, X3 = Xs
    for name, a, b in (("X1*X2", X1, X2), ("X2*X3", X2, X3), ("X1*X3", X1, X3)):
        lhs = a.mul(b).mul(e1)
        rhs = a.mul(e1).mul(b.mul(e1))
        recs.append(_record(f"({name}) e = (a e)(b e)", lhs - rhs, "satake"))
    return recs


# ---------------------------------------------------------------------------
# sigma, tau, eta


def _sigma_formula(G: GenSet, src: Params, qhalf) -> GenSet:
    V0 = G.V1i.mul(G.V1v).mul(G.V1)
    return GenSet(src, qhalf, V0, G.V1, G.V0.mul(G.V0v).mul(G.V0i), G.V0)


def _tau_formula(G: GenSet, src: Params, qhalf) -> GenSet:
    return GenSet(src, qhalf, G.V0.mul(G.V0v).mul(G.V0i), G.V1, G.V0, G.V1v)


def _eta_formula(G: GenSet, src: Params, qhalf) -> GenSet:
    return GenSet(src, qhalf, G.V0i, G.V1i,
                  G.V0.mul(G.V0vi).mul(G.V0i),
                  G.V1i.mul(G.V1vi).mul(G.V1))


@dataclass(frozen=True)
class _Map:
    name: str
    on_params: Callable[[Params], Params]
    inverts_q: bool
    formula: Callable


MAPS = {
    "sigma": _Map("sigma", Params.sigma, False, _sigma_formula),
    "tau": _Map("tau", Params.tau, False, _tau_formula),
    "eta": _Map("eta", Params.eta, True, _eta_formula),
}
_ALIASES = {"σ": "sigma", "τ": "tau", "η": "eta", "s": "sigma", "t": "tau", "e": "eta"}


def _lookup(name: str) -> _Map:
    name = _ALIASES.get(name, name)
    if name not in MAPS:
        raise KeyError(f"unknown map {name!r}")
    return MAPS[name]


def compose_images(word: Sequence[str], p: Params, field: Field | None = None) -> GenSet:
    """Images of the generators of ``H(t)`` under ``word[0] o word[1] o ...``.

    The rightmost map is applied first.  Images are expressed through the
    Lusztig-Demazure operators of the final target algebra.
    """
    F = field or Field.symbolic()
    maps = [_lookup(w) for w in word]
    # chain parameters forward, starting from the rightmost map
    chain = [(p, F.qhalf)]
    for m in reversed(maps):
        t, qh = chain[-1]
        chain.append((m.on_params(t), 1 / qh if m.inverts_q else qh))
    t_final, qh_final = chain[-1]
    G = ld_generators(t_final, Field(qh_final))
    for i, m in enumerate(maps):
        src, src_qh = chain[len(maps) - 1 - i]
        G = m.formula(G, src, src_qh)
    return G


def automorphism_images(name: str, p: Params, field: Field | None = None) -> GenSet:
    return compose_images([name], p, field)


def check_automorphism(name: str, p: Params, field: Field | None = None) -> list[CheckRecord]:
    """The images satisfy the relations of the source algebra."""
    G = automorphism_images(name, p, field)
    recs = check_presentation(G, p)
    m = _lookup(name).name
    for r in recs:
        r.relation_name = f"{m}: {r.relation_name}"
        r.group = f"automorphism {m}"
    return recs


def _diff_gensets(A: GenSet, B: GenSet, label: str) -> list[CheckRecord]:
    names = ("V0", "V1", "V0v", "V1v")
    return [_record(f"{label} on {n}", a - b, "composites")
            for n, a, b in zip(names, A.gens(), B.gens())]


def check_composites(p: Params, field: Field | None = None) -> list[CheckRecord]:
    """Composite relations among sigma, tau and eta."""
    F = field or Field.symbolic()
    recs = []
    ss = compose_images(["sigma", "sigma"], p, F)
    g = ld_generators(p, F)
    conj = GenSet(p, F.qhalf, *(g.V1i.mul(V).mul(g.V1) for V in g.gens()))
    recs += _diff_gensets(ss, conj, "sigma^2 = conjugation by V1")
    # (sigma tau)^3 is inner: it agrees with sigma^4, conjugation by V1^2
    st3 = compose_images(["sigma", "tau"] * 3, p, F)
    V1sq, V1sqi = g.V1.mul(g.V1), g.V1i.mul(g.V1i)
    conj2 = GenSet(p, F.qhalf, *(V1sqi.mul(V).mul(V1sq) for V in g.gens()))
    recs += _diff_gensets(st3, conj2, "(sigma tau)^3 = conjugation by V1^2")
    if F.is_symbolic:
        h1 = ld_generators(p, Field.specialized(1))
        st3c = center_generators(compose_images(["sigma", "tau"] * 3, p, Field.specialized(1)))
        for i, (a, b) in enumerate(zip(st3c, center_generators(h1)), 1):
            recs.append(_record(f"(sigma tau)^3 = id on X{i} at q = 1", a - b, "composites"))
    recs += _diff_gensets(compose_images(["sigma", "sigma", "tau"], p, F),
                          compose_images(["tau", "sigma", "sigma"], p, F),
                          "sigma^2 tau = tau sigma^2")
    eta = compose_images(["eta"], p, F)
    recs += _diff_gensets(compose_images(["sigma", "eta", "sigma"], p, F), eta,
                          "sigma eta sigma = eta")
    recs += _diff_gensets(compose_images(["tau", "eta", "tau"], p, F), eta,
                          "tau eta tau = eta")
    return recs


def center_images(name: str, p: Params) -> tuple[TorusOp, TorusOp, TorusOp]:
    """Images of ``X1, X2, X3`` under a map, at ``q = 1``."""
    G = automorphism_images(name, p, Field.specialized(1))
    return center_generators(G)


def expected_center_images(name: str, p: Params):
    """Images predicted by Vieta transport, in target central generators.

    Returns ``(images, target_center)`` as operators at ``q = 1``.
    """
    m = _lookup(name)
    tp = m.on_params(p)
    Y1, Y2, Y3 = center_generators(ld_generators(tp, Field.specialized(1)))
    _, p2, p3, _ = _cubic_coeffs(p)
    if m.name == "sigma":
        return (Y2, Y1, Y1.mul(Y2) - Y3 + p3)
    if m.name == "tau":
        return (Y1, Y1.mul(Y2) - Y3 + p2, Y2)
    return (Y1, Y2, Y1.mul(Y2) - Y3 + p3)
