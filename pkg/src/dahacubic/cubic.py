"""Affine cubic surfaces ``R = X1 X2 X3 - X1^2 - X2^2 - X3^2 + sum p_i X_i + p0 + 4``.

Covers the coordinate ring in X3-degree <= 1 normal form, the Poisson
bracket ``{f, g} = det(grad f, grad g, grad R)``, the Vieta involutions and
the transported sigma/tau/eta actions, and exact singularity analysis.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import flint

from .core import format_rational, to_fraction
from .daha import CheckRecord, Params
from .weyl import TorusPointS, classify, pi, weyl_act, weyl_group

__all__ = [
    "CTX",
    "CubicSurface",
    "SingularPoint",
    "SingularityReport",
    "SurfacePoly",
    "X1",
    "X2",
    "X3",
    "analyze",
    "certify_singular_set",
    "coeffs_from_params",
    "hessian_rank",
    "jacobi_check",
    "k_action",
    "milnor_number",
    "normal_form",
    "parse_poly",
    "poisson_bracket",
    "poisson_checks",
    "poisson_sign",
    "random_poly",
    "ade_label",
    "MilnorError",
    "WORD_LETTERS",
    "poly_to_json",
    "singular_candidates",
    "verify_equivariance",
    "verify_singular",
]

CTX = flint.fmpq_mpoly_ctx.get(("X1", "X2", "X3"), "lex")
X1, X2, X3 = CTX.gens()
_GENS = (X1, X2, X3)


def _q(x) -> flint.fmpq:
    x = to_fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class CubicSurface:
    p1: Fraction
    p2: Fraction
    p3: Fraction
    p0: Fraction

    def __post_init__(self):
        for name in ("p1", "p2", "p3", "p0"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))

    @classmethod
    def of(cls, p: Sequence) -> "CubicSurface":
        if len(p) != 4:
            raise ValueError("expected four coefficients (p1, p2, p3, p0)")
        return cls(*p)

    @property
    def p(self) -> tuple:
        return (self.p1, self.p2, self.p3, self.p0)

    @property
    def R(self):
        return (X1 * X2 * X3 - X1 ** 2 - X2 ** 2 - X3 ** 2
                + _q(self.p1) * X1 + _q(self.p2) * X2 + _q(self.p3) * X3 + _q(self.p0 + 4))

    def partials(self):
        R = self.R
        return tuple(R.derivative(i) for i in range(3))

    def to_dict(self) -> dict:
        return {k: format_rational(v) for k, v in zip(("p1", "p2", "p3", "p0"), self.p)}


def coeffs_from_params(p: Params | Sequence) -> CubicSurface:
    if not isinstance(p, Params):
        p = Params.of(p)
    kb0, kb1, ub0, ub1 = p.bars()
    return CubicSurface(
        ub0 * kb0 + kb1 * ub1,
        ub1 * ub0 + kb0 * kb1,
        kb0 * ub1 + kb1 * ub0,
        kb0 ** 2 + kb1 ** 2 + ub0 ** 2 + ub1 ** 2 - kb0 * kb1 * ub0 * ub1,
    )


# ---------------------------------------------------------------------------
# normal form


def _x3_parts(f) -> dict[int, object]:
    parts: dict[int, dict] = {}
    for exp, c in f.terms():
        parts.setdefault(exp[2], {})[(exp[0], exp[1], 0)] = c
    return {k: CTX.from_dict(v) for k, v in parts.items()}


def _reduce(f, S: CubicSurface):
    """Reduce modulo R until the X3-degree is at most one."""
    R = S.R
    while not f.is_zero() and f.degrees()[2] >= 2:
        k = f.degrees()[2]
        top = _x3_parts(f)[k]
        # R = -X3^2 + ..., so adding top*X3^(k-2)*R cancels the X3^k part
        f = f + top * X3 ** (k - 2) * R
    return f


@dataclass(frozen=True, eq=False)
class SurfacePoly:
    """Element ``a(X1, X2) + b(X1, X2) X3`` of the coordinate ring."""

    poly: object
    surface: CubicSurface

    @property
    def a(self):
        return _x3_parts(self.poly).get(0, CTX.constant(0))

    @property
    def b(self):
        part = _x3_parts(self.poly).get(1)
        return CTX.constant(0) if part is None else part

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SurfacePoly):
            return NotImplemented
        return self.surface == other.surface and self.poly == other.poly

    def __add__(self, other):
        return normal_form(self.poly + _raw(other), self.surface)

    def __sub__(self, other):
        return normal_form(self.poly - _raw(other), self.surface)

    def __mul__(self, other):
        return normal_form(self.poly * _raw(other), self.surface)

    def __repr__(self):
        return f"SurfacePoly({self.poly})"


def _raw(f):
    if isinstance(f, SurfacePoly):
        return f.poly
    if isinstance(f, (int, Fraction)):
        return CTX.constant(_q(f))
    return f


def normal_form(f, S: CubicSurface) -> SurfacePoly:
    return SurfacePoly(_reduce(_raw(f), S), S)


# ---------------------------------------------------------------------------
# Poisson bracket


def _default_table(S: CubicSurface):
    d1, d2, d3 = S.partials()
    return {(0, 1): d3, (1, 2): d1, (2, 0): d2}


def _table_entry(table, i, j):
    if i == j:
        return CTX.constant(0)
    if (i, j) in table:
        return table[(i, j)]
    return -table[(j, i)]


def poisson_bracket(f, g, S: CubicSurface, table=None, reduce: bool = True):
    """Bracket extended from the generator table by Leibniz.

    The default table is ``{X1,X2} = dR/dX3`` and cyclic, which makes the
    bracket ``det(grad f, grad g, grad R)``.  With ``reduce=False`` the
    ambient polynomial is returned.
    """
    table = table or _default_table(S)
    f, g = _raw(f), _raw(g)
    df = [f.derivative(i) for i in range(3)]
    dg = [g.derivative(i) for i in range(3)]
    out = CTX.constant(0)
    for i, j in ((0, 1), (1, 2), (2, 0)):
        coeff = df[i] * dg[j] - df[j] * dg[i]
        if not coeff.is_zero():
            out += coeff * _table_entry(table, i, j)
    return normal_form(out, S) if reduce else out


def _rec(name: str, residue, group: str) -> CheckRecord:
    n = len(list(residue.terms())) if not residue.is_zero() else 0
    return CheckRecord(name, "pass" if n == 0 else "fail", n, group)


def random_poly(rng: random.Random, degree: int = 3, nterms: int = 5):
    out = CTX.constant(0)
    for _ in range(nterms):
        e = [0, 0, 0]
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(3)] += 1
        out += _q(Fraction(rng.randint(-9, 9), rng.randint(1, 5))) * X1 ** e[0] * X2 ** e[1] * X3 ** e[2]
    return out


def jacobi_check(S: CubicSurface, table=None, samples: int = 2,
                 rng: random.Random | None = None) -> list[CheckRecord]:
    """Jacobi identity on the generators and on random cubic-degree triples."""
    rng = rng or random.Random(0)

    def jac(f, g, h):
        br = lambda a, b: poisson_bracket(a, b, S, table).poly
        return _reduce(br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g)), S)

    recs = [_rec("Jacobi on (X1, X2, X3)", jac(X1, X2, X3), "poisson")]
    for k in range(samples):
        f, g, h = (random_poly(rng) for _ in range(3))
        recs.append(_rec(f"Jacobi on random triple {k}", jac(f, g, h), "poisson"))
    return recs


def poisson_checks(S: CubicSurface, rng: random.Random | None = None,
                   samples: int = 2) -> list[CheckRecord]:
    """Casimir, antisymmetry and Leibniz checks."""
    rng = rng or random.Random(0)
    recs = []
    for i, Xi in enumerate(_GENS, 1):
        recs.append(_rec(f"{{R, X{i}}} = 0 in the ambient ring",
                         poisson_bracket(S.R, Xi, S, reduce=False), "poisson"))
    for k in range(samples):
        f, g, h = (random_poly(rng) for _ in range(3))
        fg = poisson_bracket(f, g, S).poly
        gf = poisson_bracket(g, f, S).poly
        recs.append(_rec(f"antisymmetry {k}", fg + gf, "poisson"))
        lhs = poisson_bracket(f, g * h, S).poly
        rhs = _reduce(poisson_bracket(f, g, S).poly * h + g * poisson_bracket(f, h, S).poly, S)
        recs.append(_rec(f"Leibniz {k}", lhs - rhs, "poisson"))
    return recs


# ---------------------------------------------------------------------------
# actions


def _g_images(i: int, S: CubicSurface):
    p = S.p
    imgs = list(_GENS)
    j, k = [x for x in range(3) if x != i]
    imgs[i] = -_GENS[i] + _GENS[j] * _GENS[k] + _q(p[i])
    return imgs


def _map_images(name: str, t: Params):
    """Images of X1, X2, X3 under sigma, tau, eta in target coordinates."""
    src = coeffs_from_params(t)
    if name == "sigma":
        return [X2, X1, X1 * X2 - X3 + _q(src.p3)], t.sigma()
    if name == "tau":
        return [X1, X1 * X2 - X3 + _q(src.p2), X2], t.tau()
    if name == "eta":
        return [X1, X2, X1 * X2 - X3 + _q(src.p3)], t.eta()
    raise KeyError(name)


_WORD_ALIASES = {"σ": "sigma", "τ": "tau", "η": "eta"}
WORD_LETTERS = ("g1", "g2", "g3", "sigma", "tau", "eta")


def _letter(w: str) -> str:
    w = _WORD_ALIASES.get(w.strip(), w.strip())
    if w not in WORD_LETTERS:
        raise KeyError(f"unknown generator {w!r}")
    return w


def k_action(word: Sequence[str], f, S: CubicSurface, t: Params | None = None):
    """Apply a word, rightmost letter first.

    Returns ``(image, target_surface, target_params)``.  The letters sigma,
    tau and eta need parameters ``t`` matching ``S``.
    """
    letters = [_letter(w) for w in word]
    if t is not None and coeffs_from_params(t) != S:
        raise ValueError("parameters do not match the surface")
    poly = _raw(f)
    for w in reversed(letters):
        if w.startswith("g"):
            imgs = _g_images(int(w[1]) - 1, S)
        else:
            if t is None:
                raise ValueError(f"{w} needs the parameters t")
            imgs, t = _map_images(w, t)
            S = coeffs_from_params(t)
        poly = poly.compose(*imgs)
    return normal_form(poly, S), S, t


def poisson_sign(i: int, S: CubicSurface) -> int | None:
    """Measured sign ``c`` with ``{g_i f, g_i h} = c g_i{f, h}`` on generators.

    Returns None when no single sign fits.
    """
    imgs = _g_images(i - 1, S)
    signs = set()
    for a, b in ((0, 1), (1, 2), (2, 0)):
        lhs = poisson_bracket(imgs[a], imgs[b], S).poly
        rhs = normal_form(poisson_bracket(_GENS[a], _GENS[b], S, reduce=False).compose(*imgs), S).poly
        if lhs == rhs:
            signs.add(1)
        elif lhs == -rhs:
            signs.add(-1)
        else:
            return None
    return signs.pop() if len(signs) == 1 else None


def verify_equivariance(name: str, p: Params) -> CheckRecord:
    """``R_source`` pulled back along the map lies in ``(R_target)``.

    The recorded scalar is ``R_source(images) / R_target``.
    """
    name = _letter(name)
    S = coeffs_from_params(p)
    if name.startswith("g"):
        imgs, T = _g_images(int(name[1]) - 1, S), S
    else:
        imgs, tp = _map_images(name, p)
        T = coeffs_from_params(tp)
    pulled = S.R.compose(*imgs)
    scalar = _coeff(pulled, (1, 1, 1)) / _coeff(T.R, (1, 1, 1))
    residue = _reduce(pulled, T)
    rec = _rec(f"R_source o {name} = {scalar} R_target", residue, "equivariance")
    if scalar not in (1, -1):
        rec.status = "fail"
    rec.scalar = scalar
    return rec


def _coeff(f, exp) -> Fraction:
    c = f.to_dict().get(exp)
    return Fraction(0) if c is None else _frac(c)


# ---------------------------------------------------------------------------
# singular points


def _eval(f, pt) -> Fraction:
    return _frac(f(*(_q(x) for x in pt)))


def verify_singular(S: CubicSurface, pt: Sequence) -> bool:
    if _eval(S.R, pt) != 0:
        return False
    return all(_eval(d, pt) == 0 for d in S.partials())


def hessian_rank(S: CubicSurface, pt: Sequence) -> int:
    x1, x2, x3 = (to_fraction(x) for x in pt)
    H = flint.fmpq_mat(3, 3, [_q(v) for v in (-2, x3, x2, x3, -2, x1, x2, x1, -2)])
    return H.rank()


def _monomials(n: int, deg: int):
    """Exponent tuples of total degree <= deg, ordered by degree."""
    out = []
    for d in range(deg + 1):
        for c in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return out


def _local_colength(gens, d: int) -> int:
    """``dim Q[y]/(J + m^(d+1))`` for the ideal ``J`` generated by ``gens``."""
    monos = _monomials(3, d)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    y = _GENS
    for g in gens:
        for a in monos:
            prod = g * y[0] ** a[0] * y[1] ** a[1] * y[2] ** a[2]
            row = [0] * len(monos)
            nz = False
            for e, c in prod.terms():
                e = tuple(e)
                if sum(e) <= d:
                    row[index[e]] = c
                    nz = True
            if nz:
                rows.append(row)
    if not rows:
        return len(monos)
    M = flint.fmpq_mat(len(rows), len(monos), [c for r in rows for c in r])
    return len(monos) - M.rank()


class MilnorError(ArithmeticError):
    pass


def milnor_number(S: CubicSurface, pt: Sequence, max_degree: int = 8) -> int:
    """Local Milnor number at a verified singular point.

    Stops when the colength of ``J + m^(d+1)`` agrees for ``d - 1`` and
    ``d``; then ``m^d`` lies in ``J`` locally and the value is exact.
    """
    if not verify_singular(S, pt):
        raise ValueError("point is not singular")
    shift = [X1 + _q(pt[0]), X2 + _q(pt[1]), X3 + _q(pt[2])]
    Rs = S.R.compose(*shift)
    gens = [Rs.derivative(i) for i in range(3)]
    prev = _local_colength(gens, 1)
    for d in range(2, max_degree + 1):
        cur = _local_colength(gens, d)
        if cur == prev:
            return cur
        prev = cur
    raise MilnorError("non-isolated or mu > 4")


_ADE = {(1, 3): "A1", (2, 2): "A2", (3, 2): "A3", (4, 1): "D4"}


def ade_label(mu: int, rank: int) -> str:
    label = _ADE.get((mu, rank))
    if label is None:
        raise ValueError(f"no ADE type with milnor {mu} and hessian rank {rank}")
    return label


def _chi_one_dim(s: TorusPointS):
    """Point of the one-dimensional character over ``s`` (needs s1 s4 = 1)."""
    s1, s2, _, s4 = s.s
    d = s.delta
    return (d + 1 / d, s1 + s4, -d / s2 - s2 / d)


def singular_candidates(s: TorusPointS) -> list[tuple]:
    """Candidate singular points over ``s``; callers must verify them."""
    pts = []
    for w in weyl_group():
        ws = weyl_act(w, s)
        if ws.s[0] * ws.s[3] == 1:
            pts.append(_chi_one_dim(ws))
    d = s.delta
    for i, j in itertools.permutations(range(4), 2):
        k, l = [x for x in range(4) if x not in (i, j)]
        si, sj, sk, sl = s.s[i], s.s[j], s.s[k], s.s[l]
        if si == sj:
            pts.append((d * (1 + 1 / (sk * sl)), -si - sj, d / si * (1 + 1 / (sk * sl))))
        if si * sj == 1:
            pts.append((d * (1 + 1 / (sk * sl)), -si - sj, d * (1 / sl + 1 / sk)))
    return sorted(set(pts))


# ---------------------------------------------------------------------------
# completeness


def _rational_roots(poly: flint.fmpq_poly) -> list[Fraction]:
    roots = []
    for fac, _ in poly.factor()[1]:
        if fac.degree() == 1:
            c = fac.coeffs()
            roots.append(_frac(-c[0] / c[1]))
    return sorted(roots)


def _as_fmpq_poly(f, var: int) -> flint.fmpq_poly:
    deg = f.degrees()[var]
    coeffs = [flint.fmpq(0)] * (deg + 1)
    for e, c in f.terms():
        if any(e[k] for k in range(3) if k != var):
            raise ValueError("polynomial is not univariate")
        coeffs[e[var]] += c
    return flint.fmpq_poly(coeffs)


def certify_singular_set(S: CubicSurface) -> tuple[list[tuple], str]:
    """All singular points, with flag ``"proved"`` when they are all rational.

    Uses dR/dX3 = X1 X2 - 2 X3 + p3 to eliminate X3, then resultants in X2.
    """
    d1, d2, d3 = S.partials()
    sub = (X1 * X2 + _q(S.p3)) * flint.fmpq(1, 2)
    A = d1.compose(X1, X2, sub)
    B = d2.compose(X1, X2, sub)
    C = S.R.compose(X1, X2, sub)
    eqs = [e for e in (A, B, C) if not e.is_zero()]
    res = []
    for f, g in itertools.combinations(eqs, 2):
        r = f.resultant(g, "X2")
        if not r.is_zero():
            res.append(r)
    if not res:
        return [], "heuristic"
    h = res[0]
    for r in res[1:]:
        h = h.gcd(r)
    if h.is_constant():
        return [], "proved"
    hx = _as_fmpq_poly(h, 0)
    complete = True
    pts = []
    total_deg = 0
    for fac, _ in hx.factor()[1]:
        total_deg += fac.degree()
        if fac.degree() != 1:
            complete = False
    for x1 in _rational_roots(hx):
        qx = _q(x1)
        ys = [e.compose(CTX.constant(qx), X2, X3) for e in eqs]
        ys = [y for y in ys if not y.is_zero()]
        if not ys:
            complete = False
            continue
        g = ys[0]
        for y in ys[1:]:
            g = g.gcd(y)
        if g.is_constant():
            continue
        gy = _as_fmpq_poly(g, 1)
        for fac, _ in gy.factor()[1]:
            if fac.degree() != 1:
                complete = False
        for x2 in _rational_roots(gy):
            x3 = (x1 * x2 + S.p3) / 2
            if verify_singular(S, (x1, x2, x3)):
                pts.append((x1, x2, x3))
    return sorted(set(pts)), "proved" if complete else "heuristic"


# ---------------------------------------------------------------------------
# reports


@dataclass
class SingularPoint:
    point: tuple
    ade_type: str
    milnor: int
    hessian_rank: int

    def to_dict(self) -> dict:
        return {"point": [format_rational(x) for x in self.point], "ade_type": self.ade_type,
                "milnor": self.milnor, "hessian_rank": self.hessian_rank}


@dataclass
class SingularityReport:
    surface: CubicSurface
    points: list = dc_field(default_factory=list)
    completeness: str = "heuristic"
    witness_stratum: str | None = None
    predicted_types: list | None = None

    @property
    def total_milnor(self) -> int:
        return sum(p.milnor for p in self.points)

    @property
    def types(self) -> list[str]:
        return sorted(p.ade_type for p in self.points)

    @property
    def agrees(self) -> bool | None:
        if self.predicted_types is None:
            return None
        return self.predicted_types == self.types

    def to_dict(self) -> dict:
        return {"surface": self.surface.to_dict(),
                "points": [p.to_dict() for p in self.points],
                "completeness_flag": self.completeness,
                "witness_stratum": self.witness_stratum,
                "predicted_types": self.predicted_types,
                "prediction_agrees": self.agrees,
                "total_milnor": self.total_milnor}


def analyze(S: CubicSurface, s: TorusPointS | None = None) -> SingularityReport:
    """Singular points of ``S`` with ADE labels.

    When an ``s`` point over ``S`` is given, candidates come from it and the
    stabilizer prediction is attached.  The resultant path always runs and
    supplies the completeness flag.
    """
    found, flag = certify_singular_set(S)
    pts = set(found)
    report = SingularityReport(S, completeness=flag)
    if s is not None:
        if CubicSurface.of(pi(s)) != S:
            raise ValueError("s point does not lie over the surface")
        pts.update(c for c in singular_candidates(s) if verify_singular(S, c))
        pred = classify(s)
        report.witness_stratum = pred.stratum
        report.predicted_types = pred.types
    if flag == "proved" and not pts.issubset(set(found)):
        report.completeness = "heuristic"
    for pt in sorted(pts):
        mu = milnor_number(S, pt)
        rk = hessian_rank(S, pt)
        report.points.append(SingularPoint(pt, ade_label(mu, rk), mu, rk))
    return report


# ---------------------------------------------------------------------------
# text I/O


def parse_poly(text: str):
    """Parse a polynomial in X1, X2, X3 such as ``"X1*X2 - 2*X3 + 1/2"``."""
    import ast

    allowed = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult,
               ast.Div, ast.Pow, ast.USub, ast.UAdd, ast.Constant, ast.Name, ast.Load)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed polynomial {text!r}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, allowed):
            raise ValueError(f"malformed polynomial {text!r}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int) or isinstance(node.value, bool):
                raise ValueError("only integer literals are allowed")
            return CTX.constant(node.value)
        if isinstance(node, ast.Name):
            names = {"X1": X1, "X2": X2, "X3": X3}
            if node.id not in names:
                raise ValueError(f"unknown variable {node.id!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        a, b = ev(node.left), ev(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if not b.is_constant() or b.is_zero():
                raise ValueError("division only by nonzero constants")
            return a * _q(1 / _frac(b.leading_coefficient()))
        if not b.is_constant():
            raise ValueError("exponent must be a constant")
        e = _frac(b.leading_coefficient())
        if e.denominator != 1 or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return a ** int(e)

    return ev(tree)


def poly_to_json(f) -> dict:
    """``{"i,j,k": "a/b"}`` with keys sorted for stable output."""
    f = _raw(f)
    out = {}
    for e, c in f.terms():
        out[",".join(str(x) for x in e)] = format_rational(_frac(c))
    return dict(sorted(out.items()))
