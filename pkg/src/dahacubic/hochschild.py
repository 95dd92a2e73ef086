"""Hochschild homology of the quantum torus and of its Z2 crossed product.

Chains of the Koszul complex are finitely supported functions on Z^2
(coefficients of ``X^k P^l``), one copy per Koszul component.  Homology is
computed on truncation windows: a class is a cycle supported in the inner
window modulo boundaries of chains supported in the outer window.  All
ranks are exact over Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import flint

from .core import format_rational, to_fraction
from .daha import CheckRecord

__all__ = [
    "KoszulComplex",
    "StabilizationError",
    "Window",
    "build_complex",
    "check_chain_maps",
    "homology_dims",
    "image_characterization_check",
    "z2_combine",
]

Key = tuple[int, int, int]  # (component, k, l)
Vec = dict


class StabilizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Window:
    """Truncation radius ``N`` and a rational ``q`` that is not a root of unity."""

    N: int
    q: Fraction

    def __post_init__(self):
        q = to_fraction(self.q)
        object.__setattr__(self, "q", q)
        if self.N < 4:
            raise ValueError("window radius must be at least 4")
        if q == 0 or abs(q) == 1:
            raise ValueError("q must satisfy |q| != 1 and q != 0")
        for n in range(1, 4 * self.N + 1):
            if q ** n == 1:
                raise ValueError(f"q^{n} = 1")


# ---------------------------------------------------------------------------
# the complexes


class KoszulComplex:
    """Koszul complex ``C2 -> C1 -> C0`` for one sector.

    ``d(i, key)`` returns the image of a basis vector of ``C_i`` as a sparse
    vector of ``C_{i-1}``.  ``phi(i, key)`` is the Z2 chain map on ``C_i``.
    """

    def __init__(self, q: Fraction, twisted: bool):
        self.q = to_fraction(q)
        self.twisted = twisted
        self.ncomp = {0: 1, 1: 2, 2: 1}
        if twisted:
            # each window is centred where the chain map reflects
            self.centers = {0: [(0, 0)], 1: [(1, 0), (0, 1)], 2: [(1, 1)]}
        else:
            self.centers = {0: [(0, 0)], 1: [(0, 0), (0, 0)], 2: [(0, 0)]}
        self._pow: dict[int, Fraction] = {}

    def qp(self, n: int) -> Fraction:
        v = self._pow.get(n)
        if v is None:
            v = self._pow[n] = self.q ** n
        return v

    @property
    def flag(self) -> str:
        return "twisted" if self.twisted else "untwisted"

    # basis of a window -------------------------------------------------
    def basis(self, i: int, radius: int) -> list[Key]:
        out = []
        for c, (ck, cl) in enumerate(self.centers[i]):
            for k in range(ck - radius, ck + radius + 1):
                for l in range(cl - radius, cl + radius + 1):
                    out.append((c, k, l))
        return out

    def in_window(self, i: int, key: Key, radius: int) -> bool:
        c, k, l = key
        ck, cl = self.centers[i][c]
        return abs(k - ck) <= radius and abs(l - cl) <= radius

    # twisted shift operators on basis vectors ----------------------------
    def delta1(self, k: int, l: int) -> Vec:
        """Transpose of ``(delta1 c)(k,l) = q^{-l} c(k+2,l) - c(k,l)``."""
        return {(k - 2, l): self.qp(-l), (k, l): Fraction(-1)}

    def delta2(self, k: int, l: int) -> Vec:
        """Transpose of ``(delta2 c)(k,l) = q^{-k} c(k,l+2) - c(k,l)``."""
        return {(k, l - 2): self.qp(-k), (k, l): Fraction(-1)}

    def d(self, i: int, key: Key) -> Vec:
        c, k, l = key
        out: Vec = {}
        if i == 0:
            return out
        if not self.twisted:
            if i == 2:
                _add(out, (0, k, l), self.qp(-l) - 1)
                _add(out, (1, k, l), 1 - self.qp(k))
            else:
                _add(out, (0, k, l), self.qp(k) - 1 if c == 0 else self.qp(-l) - 1)
            return out
        if i == 2:
            for (a, b), v in self.delta2(k, l).items():
                _add(out, (0, a, b), v)
            for (a, b), v in self.delta1(k, l).items():
                _add(out, (1, a, b), -v)
        else:
            op = self.delta1 if c == 0 else self.delta2
            for (a, b), v in op(k, l).items():
                _add(out, (0, a, b), v)
        return out

    def phi(self, i: int, key: Key) -> Vec:
        """Z2 action: reflect by ``s`` then conjugate as the sector requires."""
        c, k, l = key
        q = self.qp
        if not self.twisted:
            if i == 0:
                return {(0, -k, -l): Fraction(1)}
            if i == 1:
                return {(c, -k, -l): -(q(k) if c == 0 else q(-l))}
            return {(0, -k, -l): q(k - l)}
        if i == 0:
            return {(0, -k, -l): Fraction(1)}
        if i == 1:
            # the delta1 component is conjugated by X, the delta2 one by P
            if c == 0:
                return {(0, 2 - k, -l): -q(-l)}
            return {(1, -k, 2 - l): -q(-k)}
        return {(0, 2 - k, 2 - l): q(2 - k - l)}


def _add(vec: Vec, key, val):
    if val == 0:
        return
    v = vec.get(key, 0) + val
    if v == 0:
        vec.pop(key, None)
    else:
        vec[key] = v


def build_complex(w: Window, twist: str | bool) -> KoszulComplex:
    twisted = twist in (True, "twisted", "s-twisted", "s")
    if twist not in (True, False, "twisted", "s-twisted", "s", "untwisted"):
        raise ValueError(f"unknown twist {twist!r}")
    return KoszulComplex(w.q, twisted)


# ---------------------------------------------------------------------------
# sparse exact rank


def _rank(cols: list[Vec]) -> int:
    """Rank of sparse column vectors, splitting into independent blocks."""
    cols = [c for c in cols if c]
    if not cols:
        return 0
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for col in cols:
        keys = list(col)
        for key in keys:
            parent.setdefault(key, key)
        r0 = find(keys[0])
        for key in keys[1:]:
            r = find(key)
            if r != r0:
                parent[r] = r0
    blocks: dict = {}
    for col in cols:
        blocks.setdefault(find(next(iter(col))), []).append(col)
    total = 0
    for bcols in blocks.values():
        rows = sorted({key for col in bcols for key in col})
        if len(bcols) == 1:
            total += 1
            continue
        index = {key: n for n, key in enumerate(rows)}
        M = flint.fmpq_mat(len(rows), len(bcols))
        for j, col in enumerate(bcols):
            for key, v in col.items():
                M[index[key], j] = flint.fmpq(v.numerator, v.denominator)
        total += M.rank()
    return total


def _apply(cx: KoszulComplex, i: int, vec: Vec, op) -> Vec:
    out: Vec = {}
    for key, a in vec.items():
        for k2, b in op(i, key).items():
            _add(out, k2, a * b)
    return out


def _invariant_basis(cx: KoszulComplex, i: int, radius: int, use_z2: bool) -> list[Vec]:
    keys = cx.basis(i, radius)
    if not use_z2:
        return [{k: Fraction(1)} for k in keys]
    out, seen = [], set()
    for key in keys:
        if key in seen:
            continue
        img = cx.phi(i, key)
        (k2, c), = img.items()
        seen.update((key, k2))
        v: Vec = {}
        _add(v, key, Fraction(1))
        _add(v, k2, c)
        if v:
            out.append(v)
    return out


def _windowed_dim(cx: KoszulComplex, i: int, inner: int, outer: int, use_z2: bool) -> int:
    """``dim Z_i(inner) - dim(V_i(inner) cap d(C_{i+1}(outer)))``."""
    V = _invariant_basis(cx, i, inner, use_z2)
    if i == 0:
        dim_z = len(V)
    else:
        dim_z = len(V) - _rank([_apply(cx, i, v, cx.d) for v in V])
    if i == 2:
        return dim_z
    W = _invariant_basis(cx, i + 1, outer, use_z2)
    imgs = [_apply(cx, i + 1, v, cx.d) for v in W]
    outside = [{k: a for k, a in img.items() if not cx.in_window(i, k, inner)} for img in imgs]
    return dim_z - (_rank(imgs) - _rank(outside))


@dataclass
class HomologyReport:
    twist: str
    q: Fraction
    N: int
    dims: tuple
    dims_smaller: tuple
    invariant: bool = False

    @property
    def stabilized(self) -> bool:
        return self.dims == self.dims_smaller

    def to_dict(self) -> dict:
        return {"twist": self.twist, "q": format_rational(self.q), "N": self.N,
                "dims": list(self.dims), "dims_N_minus_2": list(self.dims_smaller),
                "z2_invariant": self.invariant, "stabilized": self.stabilized}


def _dims(cx: KoszulComplex, N: int, use_z2: bool) -> tuple:
    return tuple(_windowed_dim(cx, i, N - 2, N, use_z2) for i in range(3))


def homology_dims(w: Window, twist: str | bool, invariant: bool = False,
                  strict: bool = True) -> HomologyReport:
    """Windowed ``(h0, h1, h2)`` at radius ``N`` and ``N - 2``.

    With ``invariant=True`` only the Z2-invariant part is counted.  Raises
    :class:`StabilizationError` when the two radii disagree and ``strict``.
    """
    cx = build_complex(w, twist)
    big = _dims(cx, w.N, invariant)
    small = _dims(cx, w.N - 2, invariant)
    rep = HomologyReport(cx.flag, w.q, w.N, big, small, invariant)
    if strict and not rep.stabilized:
        raise StabilizationError(
            f"{cx.flag} homology not stable at N={w.N}: {big} vs {small}; try a larger N")
    return rep


def check_chain_maps(w: Window) -> list[CheckRecord]:
    """``d phi = phi d`` and ``d d = 0`` on the window, for both sectors."""
    recs = []
    for twisted in (False, True):
        cx = KoszulComplex(w.q, twisted)
        bad_dd = bad_phi = bad_inv = 0
        for i in (1, 2):
            for key in cx.basis(i, w.N):
                e = {key: Fraction(1)}
                lhs = _apply(cx, i, _apply(cx, i, e, cx.phi), cx.d)
                rhs = _apply(cx, i - 1, _apply(cx, i, e, cx.d), cx.phi)
                if lhs != rhs:
                    bad_phi += 1
                if i == 2 and _apply(cx, 1, _apply(cx, 2, e, cx.d), cx.d):
                    bad_dd += 1
        for i in (0, 1, 2):
            for key in cx.basis(i, w.N):
                e = {key: Fraction(1)}
                if _apply(cx, i, _apply(cx, i, e, cx.phi), cx.phi) != e:
                    bad_inv += 1
        for name, bad in (("d d = 0", bad_dd), ("d phi = phi d", bad_phi),
                          ("phi^2 = 1", bad_inv)):
            recs.append(CheckRecord(f"{cx.flag}: {name}", "pass" if bad == 0 else "fail",
                                    bad, "hochschild"))
    return recs


# ---------------------------------------------------------------------------
# images of the delta operators


def _weight(q: Fraction, k: int, l: int) -> tuple[tuple[int, int], Fraction]:
    """Class label and weight of ``X^k P^l`` in the cokernel of d0."""
    e1, e2 = k % 2, l % 2
    i, j = (k - e1) // 2, (l - e2) // 2
    return (e1, e2), q ** (-2 * i * j - i * e2 - j * e1)


def _functionals(q: Fraction, vec: dict, which: str) -> dict:
    """Values of the annihilating functionals on a C0 vector keyed (k, l)."""
    out: dict = {}
    for (k, l), a in vec.items():
        if which == "delta1":
            i = (k - k % 2) // 2
            key, w = (k % 2, l), q ** (-i * l)
        elif which == "delta2":
            j = (l - l % 2) // 2
            key, w = (k, l % 2), q ** (-j * k)
        else:
            key, w = _weight(q, k, l)
        out[key] = out.get(key, 0) + a * w
    return {k: v for k, v in out.items() if v != 0}


def image_characterization_check(w: Window, samples: int = 5,
                                 rng: random.Random | None = None) -> list[CheckRecord]:
    """Both inclusions for the images of delta1, delta2 and d0 on the window."""
    rng = rng or random.Random(0)
    cx = KoszulComplex(w.q, True)
    q = w.q
    recs = []
    ops = {"delta1": cx.delta1, "delta2": cx.delta2}
    inner = w.N - 2
    keys_in = [(k, l) for k in range(-inner, inner + 1) for l in range(-inner, inner + 1)]
    keys_out = [(k, l) for k in range(-w.N, w.N + 1) for l in range(-w.N, w.N + 1)]

    def image_of(op_names, c):
        out: dict = {}
        for name, vec in zip(op_names, c):
            for key, a in vec.items():
                for k2, b in ops[name](*key).items():
                    _add(out, k2, a * b)
        return out

    def rand_vec():
        return {k: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for k in keys_out
                if rng.random() < 0.3}

    groups = (("delta1", ["delta1"]), ("delta2", ["delta2"]), ("d0", ["delta1", "delta2"]))
    for label, names in groups:
        bad = 0
        for _ in range(samples):
            img = image_of(names, [rand_vec() for _ in names])
            if _functionals(q, img, label):
                bad += 1
        recs.append(CheckRecord(f"functionals vanish on Im {label}", "pass" if bad == 0 else "fail",
                                bad, "hochschild-images"))
        # converse: inner-window vectors killed by the functionals are images
        cols = []
        for name in names:
            for key in keys_out:
                cols.append(ops[name](*key))
        outside = [{k: a for k, a in c.items() if not (abs(k[0]) <= inner and abs(k[1]) <= inner)}
                   for c in cols]
        dim_img_in = _rank(cols) - _rank(outside)
        fvals = [_functionals(q, {key: Fraction(1)}, label) for key in keys_in]
        # rank of the functionals restricted to the inner window
        func_rank = _rank(fvals)
        expected = len(keys_in) - func_rank
        ok = dim_img_in == expected
        recs.append(CheckRecord(f"kernel of functionals equals Im {label} on window",
                                "pass" if ok else "fail", abs(dim_img_in - expected),
                                "hochschild-images"))
    # the four classes X^e1 P^e2 are not boundaries
    bad = sum(1 for e1 in (0, 1) for e2 in (0, 1)
              if not _functionals(q, {(e1, e2): Fraction(1)}, "d0"))
    recs.append(CheckRecord("X^e1 P^e2 not in Im d0", "pass" if bad == 0 else "fail", bad,
                            "hochschild-images"))
    return recs


# ---------------------------------------------------------------------------
# Z2 combination


@dataclass
class Z2Report:
    q: Fraction
    N: int
    untwisted: HomologyReport
    twisted: HomologyReport
    untwisted_inv: HomologyReport
    twisted_inv: HomologyReport

    @property
    def combined(self) -> tuple:
        return tuple(a + b for a, b in zip(self.untwisted_inv.dims, self.twisted_inv.dims))

    @property
    def stabilized(self) -> bool:
        return all(r.stabilized for r in (self.untwisted, self.twisted,
                                          self.untwisted_inv, self.twisted_inv))

    def to_dict(self) -> dict:
        return {"q": format_rational(self.q), "N": self.N,
                "untwisted": list(self.untwisted.dims),
                "twisted": list(self.twisted.dims),
                "untwisted_invariant": list(self.untwisted_inv.dims),
                "twisted_invariant": list(self.twisted_inv.dims),
                "combined": list(self.combined),
                "stabilized": self.stabilized}


def z2_combine(w: Window) -> Z2Report:
    """Hochschild dims of the crossed product from the Z2-invariant parts."""
    return Z2Report(w.q, w.N,
                    homology_dims(w, "untwisted"), homology_dims(w, "twisted"),
                    homology_dims(w, "untwisted", invariant=True),
                    homology_dims(w, "twisted", invariant=True))
