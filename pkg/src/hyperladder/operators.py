"""Linear operators with rational-function coefficients.

``DiffOp`` is sum_k c_k(s) d^k/ds^k and ``ShiftOp`` is sum_k c_k(x) E^k with
E f(x) = f(x+1).  Both compose exactly.  ``HopOp`` is the lattice operator
acting on orthonormal functions: its off-diagonal coefficients carry square
roots, which disappear once the operator is conjugated by sqrt(rho).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exact import Poly, RationalFn, as_fraction

__all__ = ["DiffOp", "ShiftOp", "HopOp", "as_rational_fn"]


def as_rational_fn(value) -> RationalFn:
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, Poly):
        return RationalFn(value)
    return RationalFn(Poly(as_fraction(value)))


def _is_scalar_like(value) -> bool:
    return isinstance(value, (int, Fraction, Poly, RationalFn)) and not isinstance(value, bool)


class DiffOp:
    """Differential operator; ``coeffs[k]`` multiplies the k-th derivative."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational_fn(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def d(cls) -> DiffOp:
        return cls((0, 1))

    @classmethod
    def mul(cls, f) -> DiffOp:
        return cls((f,))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> RationalFn:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RationalFn(Poly())

    @staticmethod
    def _coerce(other):
        if isinstance(other, DiffOp):
            return other
        if _is_scalar_like(other):
            return DiffOp.mul(other)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("DiffOp", self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return DiffOp(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        """Composition: (self * other) f = self(other f)."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, RationalFn] = {}
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(o.coeffs):
                # a D^i (b D^j) = a sum_k C(i,k) b^(k) D^(i-k+j)
                bk = b
                for k in range(i + 1):
                    if not bk.is_zero:
                        term = a * bk * math.comb(i, k)
                        idx = i - k + j
                        out[idx] = out[idx] + term if idx in out else term
                    bk = bk.derivative()
        top = max(out) if out else -1
        return DiffOp(out.get(k, 0) for k in range(top + 1))

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int):
        out = DiffOp.mul(1)
        for _ in range(k):
            out = out * self
        return out

    def apply(self, f) -> RationalFn:
        f = as_rational_fn(f)
        acc = RationalFn(Poly())
        for c in self.coeffs:
            acc = acc + c * f
            f = f.derivative()
        return acc

    def conjugate(self, h) -> DiffOp:
        """Return w^-1 * self * w for a weight factor w with w'/w = h."""
        step = DiffOp((h, 1))
        acc = DiffOp()
        power = DiffOp.mul(1)
        for c in self.coeffs:
            acc = acc + DiffOp.mul(c) * power
            power = step * power
        return acc

    def __repr__(self):
        terms = [f"[{c.to_string()}]D^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero]
        return "DiffOp(" + " + ".join(terms) + ")" if terms else "DiffOp(0)"


class ShiftOp:
    """Difference operator; ``coeffs[k]`` multiplies the shift E^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        items = {}
        for k, c in (coeffs or {}).items():
            c = as_rational_fn(c)
            if not c.is_zero:
                items[int(k)] = c
        self.coeffs = dict(sorted(items.items()))

    @classmethod
    def E(cls, k: int = 1) -> ShiftOp:
        return cls({k: 1})

    @classmethod
    def mul(cls, f) -> ShiftOp:
        return cls({0: f})

    @classmethod
    def delta(cls) -> ShiftOp:
        return cls({1: 1, 0: -1})

    @classmethod
    def nabla(cls) -> ShiftOp:
        return cls({0: 1, -1: -1})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> RationalFn:
        return self.coeffs.get(k, RationalFn(Poly()))

    @staticmethod
    def _coerce(other):
        if isinstance(other, ShiftOp):
            return other
        if _is_scalar_like(other):
            return ShiftOp.mul(other)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("ShiftOp", tuple(self.coeffs.items())))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in o.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return ShiftOp(out)

    __radd__ = __add__

    def __neg__(self):
        return ShiftOp({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        """Composition: (c E^j)(d E^k) = c d(x+j) E^(j+k)."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, RationalFn] = {}
        for j, c in self.coeffs.items():
            for k, d in o.coeffs.items():
                term = c * d.shift(j)
                out[j + k] = out[j + k] + term if j + k in out else term
        return ShiftOp(out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def apply(self, f) -> RationalFn:
        f = as_rational_fn(f)
        acc = RationalFn(Poly())
        for k, c in self.coeffs.items():
            acc = acc + c * f.shift(k)
        return acc

    def __repr__(self):
        terms = [f"[{c.to_string('x')}]E^{k}" for k, c in self.coeffs.items()]
        return "ShiftOp(" + " + ".join(terms) + ")" if terms else "ShiftOp(0)"


class HopOp:
    """Lattice operator sum of m(x) * sqrt(Q(x)) * E^k terms.

    This is how ladder operators look when they act on orthonormal lattice
    functions.  ``terms`` is a tuple of (k, m, Q) with m a RationalFn and Q a
    Poly (Q = 1 for plain coefficients).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict[tuple[int, Poly], RationalFn] = {}
        for k, m, q in terms:
            m = as_rational_fn(m)
            q = q if isinstance(q, Poly) else Poly(as_fraction(q))
            if m.is_zero or q.is_zero:
                continue
            key = (int(k), q)
            merged[key] = merged[key] + m if key in merged else m
        self.terms = tuple(
            (k, m, q) for (k, q), m in sorted(merged.items(), key=lambda kv: (kv[0][0], kv[0][1].coeffs))
            if not m.is_zero
        )

    @classmethod
    def mul(cls, f) -> HopOp:
        return cls(((0, f, Poly(1)),))

    @classmethod
    def hop(cls, k: int, m=1, radicand=1) -> HopOp:
        return cls(((k, m, radicand),))

    @staticmethod
    def _coerce(other):
        if isinstance(other, HopOp):
            return other
        if _is_scalar_like(other):
            return HopOp.mul(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return HopOp(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self):
        return HopOp((k, -m, q) for k, m, q in self.terms)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __rmul__(self, other):
        """Left multiplication by a scalar or function of x."""
        if not _is_scalar_like(other):
            return NotImplemented
        f = as_rational_fn(other)
        return HopOp((k, f * m, q) for k, m, q in self.terms)

    def reduce(self, ratio, lattice) -> ShiftOp:
        """Conjugate by w = sqrt(rho), given ratio(k) = rho(x+k)/rho(x).

        Each sqrt(Q(x) rho(x+k)/rho(x)) must be an exact rational function of
        one sign on the sample ``lattice``; otherwise ValueError is raised.
        """
        out: dict[int, RationalFn] = {}
        for k, m, q in self.terms:
            if k == 0 and q == Poly(1):
                coeff = m
            else:
                radicand = RationalFn(q) * ratio(k)
                root = radicand.sqrt()
                if root is None:
                    raise ValueError(
                        f"hop coefficient sqrt({q.to_string('x')}) does not reduce to a "
                        f"rational function for shift {k}"
                    )
                coeff = m * _fix_sign(root, lattice)
            out[k] = out[k] + coeff if k in out else coeff
        return ShiftOp(out)

    def evaluate_on(self, values: dict, x: int) -> float:
        """Apply to a lattice function given as {x: value}; missing points are 0."""
        acc = 0.0
        for k, m, q in self.terms:
            target = values.get(x + k, 0.0)
            if target == 0.0:
                continue
            fx = float(x)
            qx = q(fx)
            if qx < 0:
                # tiny negative values are rounding noise at a zero of Q
                if q(Fraction(x)) < 0:
                    raise ValueError(f"negative radicand at x={x}")
                qx = 0.0
            acc += (m.num(fx) / m.den(fx)) * math.sqrt(qx) * target
        return acc

    def __repr__(self):
        parts = []
        for k, m, q in self.terms:
            rad = "" if q == Poly(1) else f"*sqrt({q.to_string('x')})"
            parts.append(f"[{m.to_string('x')}{rad}]E^{k}")
        return "HopOp(" + " + ".join(parts) + ")" if parts else "HopOp(0)"


def _fix_sign(root: RationalFn, lattice) -> RationalFn:
    """Pick the branch of a square root that is non-negative on the lattice."""
    signs = set()
    for x in lattice:
        x = Fraction(x)
        if root.den(x) == 0:
            continue
        v = root.num(x) / root.den(x)
        if v:
            signs.add(v > 0)
    if len(signs) > 1:
        raise ValueError(f"square root {root.to_string('x')} changes sign on the lattice")
    if signs == {False}:
        return -root
    return root
