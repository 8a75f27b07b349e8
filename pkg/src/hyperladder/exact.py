"""Exact rational polynomials and rational functions.

Scalars are :class:`fractions.Fraction`.  Polynomials are immutable and kept
in canonical form (no trailing zero coefficients), so ``==`` is structural.
The degree of the zero polynomial is ``-inf``; that keeps
``deg(p*q) == deg(p) + deg(q)`` true without special cases.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Fraction",
    "Poly",
    "RationalFn",
    "SignedRoot",
    "ZERO_DEGREE",
    "as_fraction",
    "fraction_sqrt",
    "poly_arith",
    "poly_derivative",
    "poly_shift",
    "poly_fwd_diff",
    "poly_bwd_diff",
    "poly_eval",
]

ZERO_DEGREE = -math.inf


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose: a float silently entering the exact
    layer is always a bug.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fraction_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    value = as_fraction(value)
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _binomial_row(k: int) -> list[int]:
    return [math.comb(k, j) for j in range(k + 1)]


class Poly:
    """Univariate polynomial with Fraction coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Poly):
            self.coeffs = coeffs.coeffs
            return
        if isinstance(coeffs, (int, Fraction, str)):
            coeffs = (coeffs,)
        cs = [c if type(c) is Fraction else as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # constructors -------------------------------------------------------
    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    # basic queries ------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.degree != 0:
                return NotImplemented
            other = other.leading
        c = as_fraction(other)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return Poly(a / c for a in self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        """Euclidean division over the rationals."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq else ())

    # calculus -----------------------------------------------------------
    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def shift(self, k) -> Poly:
        """Return q with q(t) = p(t + k), expanded binomially."""
        k = as_fraction(k)
        if k == 0 or self.degree < 1:
            return self
        out = [Fraction(0)] * len(self.coeffs)
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            row = _binomial_row(d)
            kp = Fraction(1)
            # c * (t + k)^d, accumulated from the top power down
            for j in range(d, -1, -1):
                out[j] += c * row[j] * kp
                kp *= k
        return Poly(out)

    def fwd_diff(self) -> Poly:
        return self.shift(1) - self

    def bwd_diff(self) -> Poly:
        return self - self.shift(-1)

    def __call__(self, at):
        """Horner evaluation; exact for rational ``at``."""
        if isinstance(at, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * at + float(c)
            return acc
        at = as_fraction(at)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * at + c
        return acc

    def sqrt(self) -> Poly | None:
        """Exact square root r with r*r == self and positive leading coefficient."""
        if self.is_zero:
            return Poly()
        d = self.degree
        if d % 2:
            return None
        lead = fraction_sqrt(self.leading)
        if lead is None:
            return None
        m = d // 2
        root = [Fraction(0)] * (m + 1)
        root[m] = lead
        # match coefficients from the top down
        for k in range(m - 1, -1, -1):
            acc = self.coeff(m + k)
            for i in range(k + 1, m):
                acc -= root[i] * root[m + k - i]
            root[k] = acc / (2 * lead)
        r = Poly(root)
        return r if r * r == self else None

    # display ------------------------------------------------------------
    def to_string(self, var: str = "s") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self.to_string()})"

    def __str__(self):
        return self.to_string()


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a / a.leading if not a.is_zero else a


_ONE = Poly(1)


class RationalFn:
    """Quotient of two polynomials, reduced and with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly(num)
        den = Poly(1) if den is None else (den if isinstance(den, Poly) else Poly(den))
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num, self.den = Poly(), _ONE
            return
        if den.degree == 0:
            lead = den.coeffs[0]
            self.num, self.den = (num if lead == 1 else num / lead), _ONE
            return
        g = _poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.divmod(g)[0], den.divmod(g)[0]
        lead = den.leading
        self.num, self.den = num / lead, den / lead

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> RationalFn:
        # caller guarantees num/den is already in lowest terms with monic den
        out = cls.__new__(cls)
        out.num, out.den = num, den
        return out

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, Poly):
            return RationalFn._reduced(other, _ONE) if not other.is_zero else RationalFn(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFn(Poly(other))
        return None

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial:
            raise ValueError("rational function is not a polynomial")
        return self.num

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("RationalFn", self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_polynomial and o.is_polynomial:
            total = self.num + o.num
            return RationalFn._reduced(total, _ONE) if not total.is_zero else RationalFn(total)
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._reduced(-self.num, self.den)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_polynomial and o.is_polynomial:
            prod = self.num * o.num
            return RationalFn._reduced(prod, _ONE) if not prod.is_zero else RationalFn(prod)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("rational function divided by zero")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def derivative(self) -> RationalFn:
        n, d = self.num, self.den
        return RationalFn(n.derivative() * d - n * d.derivative(), d * d)

    def shift(self, k) -> RationalFn:
        return RationalFn(self.num.shift(k), self.den.shift(k))

    def __call__(self, at):
        d = self.den(at)
        if d == 0:
            raise ZeroDivisionError(f"pole at {at}")
        return self.num(at) / d

    def sqrt(self) -> RationalFn | None:
        """Exact square root, up to an overall sign, or None."""
        lead = self.num.leading
        sign = 1 if lead > 0 else -1
        if sign < 0:
            return None
        rn, rd = self.num.sqrt(), self.den.sqrt()
        if rn is None or rd is None:
            return None
        return RationalFn(rn, rd)

    def to_string(self, var: str = "s") -> str:
        if self.is_polynomial:
            return self.num.to_string(var)
        return f"({self.num.to_string(var)})/({self.den.to_string(var)})"

    def __repr__(self):
        return f"RationalFn({self.to_string()})"


# Thin functional spellings of the operations -----------------------------

def poly_arith(a: Poly, b, op: str) -> Poly:
    """``op`` is one of add, sub, mul, scale (``b`` a rational for scale)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a * as_fraction(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_shift(p: Poly, k) -> Poly:
    return p.shift(k)


def poly_fwd_diff(p: Poly) -> Poly:
    return p.fwd_diff()


def poly_bwd_diff(p: Poly) -> Poly:
    return p.bwd_diff()


def poly_eval(p: Poly, at):
    return p(at)


class SignedRoot:
    """An exact real of the form sign * sqrt(square), square rational >= 0.

    Ladder constants and norm ratios live here: their squares are exact even
    when the constants themselves are irrational.
    """

    __slots__ = ("sign", "square")

    def __init__(self, sign: int, square):
        square = as_fraction(square)
        if square < 0:
            raise ValueError("negative square in SignedRoot")
        if square == 0 or sign == 0:
            self.sign, self.square = 0, Fraction(0)
        else:
            self.sign, self.square = (1 if sign > 0 else -1), square

    @classmethod
    def of(cls, value) -> SignedRoot:
        """Wrap an exact rational (or pass a SignedRoot through)."""
        if isinstance(value, SignedRoot):
            return value
        value = as_fraction(value)
        return cls((value > 0) - (value < 0), value * value)

    @classmethod
    def sqrt(cls, square, sign: int = 1) -> SignedRoot:
        return cls(sign, square)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def rational(self) -> Fraction | None:
        root = fraction_sqrt(self.square)
        return None if root is None else self.sign * root

    def __mul__(self, other):
        if not isinstance(other, SignedRoot):
            try:
                other = SignedRoot.of(other)
            except TypeError:
                return NotImplemented
        return SignedRoot(self.sign * other.sign, self.square * other.square)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, SignedRoot):
            other = SignedRoot.of(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a zero SignedRoot")
        return SignedRoot(self.sign * other.sign, self.square / other.square)

    def __neg__(self):
        return SignedRoot(-self.sign, self.square)

    def __eq__(self, other):
        if not isinstance(other, SignedRoot):
            try:
                other = SignedRoot.of(other)
            except TypeError:
                return NotImplemented
        return self.sign == other.sign and self.square == other.square

    def __hash__(self):
        return hash(("SignedRoot", self.sign, self.square))

    def __float__(self):
        if self.sign == 0:
            return 0.0
        num, den = self.square.numerator, self.square.denominator
        try:
            return self.sign * math.sqrt(num / den)
        except OverflowError:
            return self.sign * math.exp(0.5 * (math.log(num) - math.log(den)))

    def same_class(self, other: SignedRoot) -> Fraction | None:
        """Return q with self == q * other when the ratio is rational."""
        if other.is_zero:
            return None
        if self.is_zero:
            return Fraction(0)
        root = fraction_sqrt(self.square / other.square)
        return None if root is None else self.sign * other.sign * root

    def __repr__(self):
        r = self.rational()
        if r is not None:
            return f"SignedRoot({r})"
        s = "-" if self.sign < 0 else ""
        return f"SignedRoot({s}sqrt({self.square}))"
