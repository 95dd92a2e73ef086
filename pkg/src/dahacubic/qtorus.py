"""Localized quantum torus crossed with Z2.

An element is a finite sum ``sum f_{j,e}(X) P^j s^e`` with rational
coefficients in ``X``.  The relations are ``PX = qXP``, ``sXs = X^{-1}``,
``sPs = P^{-1}`` and ``s^2 = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .core import Field, PoleError, RatFuncX, format_rational, to_fraction

__all__ = ["FieldMismatch", "TorusOp", "commutator", "eval_spec", "is_zero", "linear", "mul"]

Key = tuple[int, int]


class FieldMismatch(ValueError):
    pass


class TorusOp:
    """Immutable element of the localized crossed product."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[Key, RatFuncX] | None = None):
        self.field = field
        clean = {}
        for key, c in (terms or {}).items():
            if not isinstance(c, RatFuncX):
                c = RatFuncX.const(c)
            if not c.is_zero():
                j, e = key
                clean[(int(j), int(e) & 1)] = c
        self.terms: dict[Key, RatFuncX] = clean

    # constructors -----------------------------------------------------
    @classmethod
    def scalar(cls, field: Field, c) -> "TorusOp":
        return cls(field, {(0, 0): RatFuncX.const(c)})

    @classmethod
    def one(cls, field: Field) -> "TorusOp":
        return cls.scalar(field, 1)

    @classmethod
    def zero(cls, field: Field) -> "TorusOp":
        return cls(field)

    @classmethod
    def coeff(cls, field: Field, f: RatFuncX, j: int = 0, e: int = 0) -> "TorusOp":
        """The element ``f(X) P^j s^e``."""
        return cls(field, {(j, e): f})

    @classmethod
    def X(cls, field: Field, power: int = 1) -> "TorusOp":
        return cls(field, {(0, 0): RatFuncX.X(power)})

    @classmethod
    def P(cls, field: Field, power: int = 1) -> "TorusOp":
        return cls(field, {(power, 0): RatFuncX.const(1)})

    @classmethod
    def s(cls, field: Field) -> "TorusOp":
        return cls(field, {(0, 1): RatFuncX.const(1)})

    # arithmetic -------------------------------------------------------
    def _check(self, other: "TorusOp"):
        if self.field != other.field:
            raise FieldMismatch(f"cannot combine operators over {self.field} and {other.field}")

    def _lift(self, other) -> "TorusOp | None":
        if isinstance(other, TorusOp):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RatFuncX)) or hasattr(other, "num"):
            return TorusOp.scalar(self.field, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return TorusOp(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusOp(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, TorusOp):
            o = self._lift(other)
            if o is None:
                return NotImplemented
            c = o.terms.get((0, 0))
            if c is None:
                return TorusOp(self.field)
            return TorusOp(self.field, {k: f * c for k, f in self.terms.items()})
        return self.mul(other)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o.mul(self)

    def mul(self, other: "TorusOp") -> "TorusOp":
        self._check(other)
        qh = self.field.qhalf
        out: dict[Key, RatFuncX] = {}
        shifted: dict[tuple[int, int, Key], RatFuncX] = {}
        for (j, e), f in self.terms.items():
            sign = -1 if e else 1
            for (j2, e2), g in other.terms.items():
                cache_key = (j, e, (j2, e2))
                g2 = shifted.get(cache_key)
                if g2 is None:
                    # move P^j s^e past g(X)
                    g2 = g.qshift(-j, qh).invert() if e else g.qshift(j, qh)
                    shifted[cache_key] = g2
                key = (j + sign * j2, e ^ e2)
                prod = f * g2
                out[key] = out[key] + prod if key in out else prod
        return TorusOp(self.field, out)

    def __pow__(self, n: int) -> "TorusOp":
        if n < 0:
            raise ValueError("general inversion is not available")
        result, base = TorusOp.one(self.field), self
        while n:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base)
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TorusOp):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    __hash__ = None

    # queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Key]:
        return sorted(self.terms)

    def __iter__(self) -> Iterator[tuple[Key, RatFuncX]]:
        return iter(sorted(self.terms.items()))

    def eval_spec(self, v0) -> "TorusOp":
        """Specialize ``v = v0`` in every coefficient and in the field."""
        if not self.field.is_symbolic:
            return self
        field = self.field.specialize(v0)
        out = {}
        for key, c in self.terms.items():
            try:
                out[key] = c.eval_v(v0)
            except PoleError as exc:
                raise PoleError(f"coefficient of P^{key[0]} s^{key[1]}: {exc}") from None
        return TorusOp(field, out)

    def map_coeffs(self, fn) -> "TorusOp":
        return TorusOp(self.field, {k: fn(c) for k, c in self.terms.items()})

    def with_field(self, field: Field) -> "TorusOp":
        return TorusOp(field, self.terms)

    def to_records(self) -> list[dict]:
        """Debug serialization, one record per support key."""
        recs = []
        for (j, e), c in self:
            num, den = c.to_coeffs()
            recs.append({"j": j, "eps": e,
                         "num_coeffs": [_fmt(x) for x in num],
                         "den_coeffs": [_fmt(x) for x in den]})
        return recs

    def __repr__(self):
        if not self.terms:
            return "TorusOp(0)"
        parts = [f"({c!r})*P^{j}*s^{e}" for (j, e), c in self]
        return "TorusOp(" + " + ".join(parts) + ")"


def _fmt(x):
    if isinstance(x, (int, Fraction)):
        return format_rational(to_fraction(x))
    num, den = x.to_coeffs()
    return {"num": [format_rational(a) for a in num], "den": [format_rational(b) for b in den]}


def linear(a: TorusOp, b: TorusOp, c1, c2) -> TorusOp:
    """``c1*a + c2*b``."""
    return a * c1 + b * c2


def commutator(a: TorusOp, b: TorusOp) -> TorusOp:
    return a.mul(b) - b.mul(a)


def is_zero(a: TorusOp) -> bool:
    return a.is_zero()


def mul(a: TorusOp, b: TorusOp) -> TorusOp:
    return a.mul(b)


def eval_spec(a: TorusOp, v0) -> TorusOp:
    return a.eval_spec(v0)
