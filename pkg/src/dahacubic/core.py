"""Exact coefficient arithmetic.

Scalars are either :class:`fractions.Fraction` or :class:`RatFuncV`, a
rational function in the formal square root ``v`` of ``q``.  Functions of
``X`` (:class:`RatFuncX`) carry coefficients from either field; internally
they are stored as reduced quotients of bivariate polynomials in ``(X, v)``
so that every gcd is a single call into FLINT.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

import flint

__all__ = [
    "Field",
    "PoleError",
    "RatFuncV",
    "RatFuncX",
    "Scalar",
    "eval_at_v",
    "format_rational",
    "parse_rational",
    "scalar_arith",
    "subst_invert",
    "subst_qshift",
    "to_fraction",
]


class PoleError(ArithmeticError):
    """A specialization hit a zero of a denominator."""


Scalar = Union[Fraction, "RatFuncV"]

_XV = flint.fmpq_mpoly_ctx.get(("X", "v"), "lex")
_X, _V = _XV.gens()
_ONE = _XV.constant(1)
_ZERO = _XV.constant(0)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _fmpq(x: Fraction) -> flint.fmpq:
    return flint.fmpq(x.numerator, x.denominator)


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"``; floats are rejected."""
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"malformed rational {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Q(v)


class RatFuncV:
    """Reduced quotient ``num(v)/den(v)`` with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = flint.fmpq_poly(num) if not isinstance(num, flint.fmpq_poly) else num
        if den is None:
            den = flint.fmpq_poly([1])
        elif not isinstance(den, flint.fmpq_poly):
            den = flint.fmpq_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFuncV with zero denominator")
        if num.is_zero():
            self.num, self.den = num, flint.fmpq_poly([1])
            return
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num / g, den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num, den = num / lc, den / lc
        self.num, self.den = num, den

    @classmethod
    def v(cls) -> "RatFuncV":
        return cls(flint.fmpq_poly([0, 1]))

    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence = (1,)) -> "RatFuncV":
        return cls(flint.fmpq_poly([_fmpq(to_fraction(c)) for c in num]),
                   flint.fmpq_poly([_fmpq(to_fraction(c)) for c in den]))

    def _coerce(self, other) -> "RatFuncV | None":
        if isinstance(other, RatFuncV):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFuncV(flint.fmpq_poly([_fmpq(to_fraction(other))]))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFuncV(self.num + o.num, self.den)
        return RatFuncV(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncV(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFuncV(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFuncV(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFuncV(self.den ** (-n), self.num ** (-n)) if not self.num.is_zero() else 1 / self
        return RatFuncV(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __call__(self, v0) -> Fraction:
        return eval_at_v(self, v0)

    def to_coeffs(self) -> tuple[list[Fraction], list[Fraction]]:
        """Lowest-degree-first coefficient lists of numerator and denominator."""
        return ([to_fraction(c) for c in self.num.coeffs()] or [Fraction(0)],
                [to_fraction(c) for c in self.den.coeffs()])

    def __repr__(self):
        if self.den.is_one():
            return f"RatFuncV({self.num.str(var='v')})"
        return f"RatFuncV(({self.num.str(var='v')})/({self.den.str(var='v')}))"


def scalar_arith(a, b, op: str):
    """``op`` in ``{"add", "sub", "mul", "div"}``; raises on division by zero."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("scalar division by zero")
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")


def eval_at_v(f, v0) -> Fraction:
    """Exact value of a scalar at ``v = v0``."""
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    v0 = _fmpq(to_fraction(v0))
    d = f.den(v0)
    if d == 0:
        raise PoleError(f"pole at v={v0}: denominator {f.den.str(var='v')} vanishes")
    return to_fraction(f.num(v0) / d)


# ---------------------------------------------------------------------------
# ambient field


class Field:
    """Coefficient field together with the chosen value of ``q^{1/2}``.

    ``Field.symbolic()`` works over Q(v) with ``q^{1/2} = v``; specialized
    fields work over Q with a rational ``q^{1/2}``.  Two operators can only
    be combined when their fields compare equal.
    """

    __slots__ = ("qhalf",)

    def __init__(self, qhalf):
        if isinstance(qhalf, int):
            qhalf = Fraction(qhalf)
        if qhalf == 0:
            raise ValueError("q^{1/2} must be nonzero")
        self.qhalf = qhalf

    @classmethod
    def symbolic(cls) -> "Field":
        return cls(RatFuncV.v())

    @classmethod
    def specialized(cls, v0) -> "Field":
        return cls(to_fraction(v0))

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.qhalf, RatFuncV)

    @property
    def q(self):
        return self.qhalf * self.qhalf

    def inverted(self) -> "Field":
        """Field of the algebra with ``q`` replaced by ``q^{-1}``."""
        return Field(1 / self.qhalf)

    def specialize(self, v0) -> "Field":
        return Field(eval_at_v(self.qhalf, v0))

    def __eq__(self, other):
        return isinstance(other, Field) and self.qhalf == other.qhalf

    def __hash__(self):
        return hash(self.qhalf)

    def __repr__(self):
        return f"Field(qhalf={self.qhalf!r})"


# ---------------------------------------------------------------------------
# rational functions of X


def _scalar_to_frac(c) -> tuple:
    """Scalar -> (numerator mpoly, denominator mpoly) in (X, v)."""
    if isinstance(c, RatFuncV):
        return _vpoly(c.num), _vpoly(c.den)
    c = to_fraction(c)
    return _XV.constant(_fmpq(c)), _ONE


def _vpoly(p: flint.fmpq_poly):
    return _XV.from_dict({(0, i): c for i, c in enumerate(p.coeffs()) if c != 0}) if not p.is_zero() else _ZERO


class RatFuncX:
    """Reduced quotient of polynomials in ``X`` over Q or Q(v).

    The pair is stored as coprime polynomials in ``Q[X, v]``; the
    denominator is scaled so its leading term (lex, X before v) is 1.
    Over Q this is the usual monic normalization.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if den is None:
            den = _ONE
        if den.is_zero():
            raise ZeroDivisionError("RatFuncX with zero denominator")
        if num.is_zero():
            self.num, self.den = _ZERO, _ONE
            return
        if not reduced and not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num / g, den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den = num, den

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "RatFuncX":
        n, d = _scalar_to_frac(c)
        return cls(n, d)

    @classmethod
    def X(cls, power: int = 1) -> "RatFuncX":
        if power >= 0:
            return cls(_X ** power, _ONE, reduced=True)
        return cls(_ONE, _X ** (-power), reduced=True)

    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence = (1,)) -> "RatFuncX":
        """Build from Scalar coefficient lists, lowest degree first."""
        return cls(*_poly_from_scalars(num)) / cls(*_poly_from_scalars(den))

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "RatFuncX | None":
        if isinstance(other, RatFuncX):
            return other
        if isinstance(other, (int, Fraction, RatFuncV)):
            return RatFuncX.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        if self.den == o.den:
            return RatFuncX(self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        if g.is_one():
            return RatFuncX(self.num * o.den + o.num * self.den, self.den * o.den)
        a, b = self.den / g, o.den / g
        return RatFuncX(self.num * b + o.num * a, self.den * b)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncX(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFuncX(_ZERO)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        return RatFuncX(n1 * n2, d1 * d2, reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFuncX(o.den, o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(self.num.terms()), tuple(self.den.terms())))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def uses_v(self) -> bool:
        return self.num.degrees()[1] > 0 or self.den.degrees()[1] > 0

    # substitutions ----------------------------------------------------
    def qshift(self, m: int, qhalf) -> "RatFuncX":
        """``f(q^m X)`` where ``q = qhalf**2``."""
        if m == 0 or self.is_const_in_x():
            return self
        scale = qhalf ** (2 * m)
        if isinstance(scale, RatFuncV):
            sn, sd = _vpoly(scale.num), _vpoly(scale.den)
        else:
            scale = to_fraction(scale)
            sn, sd = _XV.constant(_fmpq(scale)), _ONE
        deg = max(self.num.degrees()[0], self.den.degrees()[0])
        return RatFuncX(_scale_x(self.num, sn, sd, deg), _scale_x(self.den, sn, sd, deg))

    def invert(self) -> "RatFuncX":
        """``f(X^{-1})`` with negative powers cleared."""
        if self.is_const_in_x():
            return self
        deg = max(self.num.degrees()[0], self.den.degrees()[0])
        return RatFuncX(_reverse_x(self.num, deg), _reverse_x(self.den, deg))

    def is_const_in_x(self) -> bool:
        return self.num.degrees()[0] == 0 and self.den.degrees()[0] == 0

    def eval_v(self, v0) -> "RatFuncX":
        """Specialize ``v = v0``; raises :class:`PoleError` on a pole."""
        if not self.uses_v():
            return self
        v0 = _fmpq(to_fraction(v0))
        den = self.den.subs({"v": v0})
        if den.is_zero():
            raise PoleError(f"pole at v={v0}: denominator {self.den} vanishes")
        return RatFuncX(self.num.subs({"v": v0}), den)

    def eval_x(self, x0):
        """Value at a rational ``X = x0`` (over Q only)."""
        x0 = _fmpq(to_fraction(x0))
        den = self.den.subs({"X": x0})
        if den.is_zero():
            raise PoleError(f"pole at X={x0}")
        r = self.num.subs({"X": x0}) / den
        if not r.is_constant():
            raise ValueError("eval_x needs a function without v")
        return to_fraction(r.leading_coefficient()) if not r.is_zero() else Fraction(0)

    # views --------------------------------------------------------------
    def to_coeffs(self) -> tuple[list, list]:
        """Numerator and denominator as Scalar lists in X (lowest first).

        The denominator is made monic over the coefficient field.
        """
        lead = _x_coeffs(self.den)[-1]
        num = [_div_vpoly(c, lead) for c in _x_coeffs(self.num)]
        den = [_div_vpoly(c, lead) for c in _x_coeffs(self.den)]
        return num, den

    def __repr__(self):
        if self.den.is_one():
            return f"RatFuncX({self.num})"
        return f"RatFuncX(({self.num})/({self.den}))"


def _poly_from_scalars(coeffs: Iterable):
    """Scalars c_i -> (sum c_i X^i) as a fraction of mpolys."""
    num, den = _ZERO, _ONE
    for i, c in enumerate(coeffs):
        n, d = _scalar_to_frac(c)
        if n.is_zero():
            continue
        term_n = n * _X ** i
        if d == den:
            num = num + term_n
        else:
            num, den = num * d + term_n * den, den * d
    return num, den


def _scale_x(p, sn, sd, deg):
    """sum p_i(v) X^i (sn/sd)^i, multiplied by sd^deg."""
    out = _ZERO
    for i, ci in _x_coeff_items(p):
        out += ci * _X ** i * sn ** i * sd ** (deg - i)
    return out


def _reverse_x(p, deg):
    return _XV.from_dict({(deg - e[0], e[1]): c for e, c in p.terms()})


def _x_coeff_items(p):
    buckets: dict[int, dict] = {}
    for (i, a), c in p.terms():
        buckets.setdefault(i, {})[(0, a)] = c
    return [(i, _XV.from_dict(d)) for i, d in sorted(buckets.items())]


def _x_coeffs(p) -> list:
    deg = p.degrees()[0]
    out = [_ZERO] * (deg + 1)
    for i, c in _x_coeff_items(p):
        out[i] = c
    return out


def _to_fmpq_poly(p) -> flint.fmpq_poly:
    deg = p.degrees()[1]
    coeffs = [flint.fmpq(0)] * (deg + 1)
    for (_, a), c in p.terms():
        coeffs[a] = c
    return flint.fmpq_poly(coeffs)


def _div_vpoly(c, lead):
    if c.is_zero():
        return Fraction(0)
    if lead.is_constant() and c.is_constant():
        return to_fraction(c.leading_coefficient() / lead.leading_coefficient())
    r = RatFuncV(_to_fmpq_poly(c), _to_fmpq_poly(lead))
    if r.is_constant():
        return to_fraction(r.num.coeffs()[0]) if not r.is_zero() else Fraction(0)
    return r


def subst_qshift(f: RatFuncX, m: int, qhalf) -> RatFuncX:
    return f.qshift(m, qhalf)


def subst_invert(f: RatFuncX) -> RatFuncX:
    return f.invert()
