"""The nine classical families of hypergeometric type.

Each family is a :class:`FamilySpec`: the pair (sigma, tau), the support,
closed forms for the eigenvalue, recurrence and norm data, and enough about
the weight to evaluate it in floating point and, on a lattice, exactly
through its Pearson ratio.

Normalization follows the usual Nikiforov-Suslov-Uvarov conventions with
y_0 = 1 and leading coefficients fixed by the recurrence
(lead y_{n+1} = lead y_n / alpha_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import DegreeError, DomainError, InvariantError, KindError, ParameterError
from .exact import Poly, RationalFn, as_fraction

__all__ = [
    "FamilySpec",
    "FAMILY_NAMES",
    "PARAM_NAMES",
    "DEFAULT_PARAMS",
    "make_family",
    "default_family",
    "lambda_n",
    "lambda_slope",
    "tau_n",
    "recurrence_coeffs",
    "norm_ratio",
    "norm_product",
    "pearson_ratio",
    "weight_ratio",
    "weight_eval",
    "log_weight",
    "log_norm_sq",
    "lattice_points",
    "check_degree",
    "family_key",
]

FAMILY_NAMES = (
    "hermite",
    "laguerre",
    "legendre",
    "jacobi",
    "kravchuk",
    "meixner",
    "charlier",
    "chebyshev",
    "hahn",
)

PARAM_NAMES = {
    "hermite": (),
    "laguerre": ("alpha",),
    "legendre": (),
    "jacobi": ("alpha", "beta"),
    "kravchuk": ("p", "N"),
    "meixner": ("gamma", "mu"),
    "charlier": ("mu",),
    "chebyshev": ("N",),
    "hahn": ("alpha", "beta", "N"),
}

# Small parameter values used whenever a caller does not pick its own.
DEFAULT_PARAMS = {
    "hermite": {},
    "laguerre": {"alpha": Fraction(2)},
    "legendre": {},
    "jacobi": {"alpha": Fraction(1, 2), "beta": Fraction(1, 2)},
    "kravchuk": {"p": Fraction(1, 2), "N": 8},
    "meixner": {"gamma": Fraction(2), "mu": Fraction(1, 3)},
    "charlier": {"mu": Fraction(1, 2)},
    "chebyshev": {"N": 8},
    "hahn": {"alpha": Fraction(1), "beta": Fraction(2), "N": 8},
}

_ALIASES = {
    "chebyshev_discrete": "chebyshev",
    "krawtchouk": "kravchuk",
}

# Samples for numeric spot checks inside the open continuous supports.
_PROBES = {
    "hermite": ("-29/10", "-47/20", "-13/10", "0", "13/10", "47/20", "29/10"),
    "laguerre": ("1/20", "1/2", "3/2", "3", "5", "8", "12"),
    "interval": ("-97/100", "-39/50", "-43/100", "0", "43/100", "39/50", "97/100"),
}

S = Poly.x()


@dataclass(frozen=True)
class FamilySpec:
    """Everything downstream code needs to know about one family."""

    name: str
    params: tuple
    kind: str
    sigma: Poly
    tau: Poly
    support: tuple
    max_degree: int | None
    lambda_fn: Callable = field(compare=False, repr=False)
    alpha_fn: Callable = field(compare=False, repr=False)
    beta_fn: Callable = field(compare=False, repr=False)
    gamma_fn: Callable = field(compare=False, repr=False)
    norm_ratio_fn: Callable = field(compare=False, repr=False)
    d0_rational: Fraction = field(compare=False, repr=False)
    d0_tag: str = field(compare=False, repr=False)
    log_d0_sq: float = field(compare=False, repr=False)
    log_weight_fn: Callable = field(compare=False, repr=False)
    moment_fn: Callable | None = field(default=None, compare=False, repr=False)
    weight_total: float | None = field(default=None, compare=False, repr=False)
    probes: tuple = field(default=(), compare=False, repr=False)

    @property
    def var(self) -> str:
        return "s" if self.kind == "continuous" else "x"

    @property
    def is_discrete(self) -> bool:
        return self.kind == "discrete"

    @property
    def is_finite(self) -> bool:
        return self.max_degree is not None

    def param(self, key: str):
        return dict(self.params)[key]

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"

    def __repr__(self):
        return f"FamilySpec({self.label()})"


# Parameter handling ------------------------------------------------------

def _rational_param(name: str, key: str, value) -> Fraction:
    try:
        return as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"{name}: parameter {key} must be rational, got {value!r}") from exc


def _integer_param(name: str, key: str, value) -> int:
    v = _rational_param(name, key, value)
    if v.denominator != 1:
        raise ParameterError(f"{name}: parameter {key} must be an integer, got {v}")
    return int(v)


def _normalize_params(name: str, params) -> dict:
    params = dict(params or {})
    expected = PARAM_NAMES[name]
    unknown = sorted(set(params) - set(expected))
    if unknown:
        raise ParameterError(f"{name} takes no parameter {', '.join(unknown)}")
    missing = [k for k in expected if k not in params]
    if missing:
        raise ParameterError(f"{name} needs parameter {', '.join(missing)}")
    out = {}
    for k in expected:
        out[k] = _integer_param(name, k, params[k]) if k == "N" else _rational_param(name, k, params[k])
    return out


def _require(cond: bool, name: str, message: str):
    if not cond:
        raise ParameterError(f"{name}: {message}")


def _lgamma_q(v: Fraction) -> float:
    return math.lgamma(float(v))


def _log_fraction(v: Fraction) -> float:
    v = as_fraction(v)
    return math.log(v.numerator) - math.log(v.denominator)


def _pochhammer(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


# Family builders ---------------------------------------------------------

def _hermite(p):
    def moment(k):
        if k % 2:
            return Fraction(0)
        out = Fraction(1)
        for j in range(1, k, 2):
            out *= j
        return out / 2 ** (k // 2)

    return dict(
        kind="continuous",
        sigma=Poly(1),
        tau=-2 * S,
        support=(-math.inf, math.inf),
        max_degree=None,
        lambda_fn=lambda n: Fraction(2 * n),
        alpha_fn=lambda n: Fraction(1, 2),
        beta_fn=lambda n: Fraction(0),
        gamma_fn=lambda n: Fraction(n),
        norm_ratio_fn=lambda n: Fraction(2 * (n + 1)),
        d0_rational=Fraction(1),
        d0_tag="sqrt(pi)",
        log_d0_sq=0.5 * math.log(math.pi),
        log_weight_fn=lambda s: -s * s,
        moment_fn=moment,
        probes=_PROBES["hermite"],
    )


def _laguerre(p):
    a = p["alpha"]
    _require(a > -1, "laguerre", f"alpha must be > -1, got {a}")
    fa = float(a)

    def log_weight(s):
        return fa * math.log(s) - s

    return dict(
        kind="continuous",
        sigma=S,
        tau=a + 1 - S,
        support=(Fraction(0), math.inf),
        max_degree=None,
        lambda_fn=lambda n: Fraction(n),
        alpha_fn=lambda n: Fraction(-(n + 1)),
        beta_fn=lambda n: 2 * n + a + 1,
        gamma_fn=lambda n: -(n + a) if n else Fraction(0),
        norm_ratio_fn=lambda n: (n + a + 1) / (n + 1),
        d0_rational=Fraction(1),
        d0_tag="Gamma(alpha+1)",
        log_d0_sq=_lgamma_q(a + 1),
        log_weight_fn=log_weight,
        moment_fn=lambda k: _pochhammer(a + 1, k),
        probes=_PROBES["laguerre"],
    )


def _jacobi_moment(a: Fraction, b: Fraction):
    # s = 2t - 1 with t ~ Beta(b+1, a+1)
    def moment(k):
        total = Fraction(0)
        et = Fraction(1)
        for j in range(k + 1):
            if j:
                et *= (b + j) / (a + b + 1 + j)
            total += math.comb(k, j) * 2 ** j * (-1) ** (k - j) * et
        return total

    return moment


def _jacobi(p, name="jacobi"):
    a, b = p["alpha"], p["beta"]
    _require(a > -1, name, f"alpha must be > -1, got {a}")
    _require(b > -1, name, f"beta must be > -1, got {b}")
    A = a + b
    _require(A != -1, name, "alpha + beta = -1 makes the n = 0 raising relation degenerate")
    fa, fb = float(a), float(b)

    def alpha_fn(n):
        return 2 * (n + 1) * (n + A + 1) / ((2 * n + A + 1) * (2 * n + A + 2))

    def beta_fn(n):
        if n == 0:
            return (b - a) / (A + 2)
        return (b * b - a * a) / ((2 * n + A) * (2 * n + A + 2))

    def gamma_fn(n):
        if n == 0:
            return Fraction(0)
        return 2 * (n + a) * (n + b) / ((2 * n + A) * (2 * n + A + 1))

    def norm_ratio_fn(n):
        return (n + a + 1) * (n + b + 1) * (2 * n + A + 1) / ((n + 1) * (2 * n + A + 3) * (n + A + 1))

    def log_weight(s):
        return fa * math.log1p(-s) + fb * math.log1p(s)

    log_d0 = (float(A) + 1) * math.log(2) + _lgamma_q(a + 1) + _lgamma_q(b + 1) - _lgamma_q(A + 2)
    legendre = a == 0 and b == 0
    return dict(
        kind="continuous",
        sigma=1 - S * S,
        tau=(b - a) - (A + 2) * S,
        support=(Fraction(-1), Fraction(1)),
        max_degree=None,
        lambda_fn=lambda n: n * (n + A + 1),
        alpha_fn=alpha_fn,
        beta_fn=beta_fn,
        gamma_fn=gamma_fn,
        norm_ratio_fn=norm_ratio_fn,
        d0_rational=Fraction(2) if legendre else Fraction(1),
        d0_tag="1" if legendre else "2^(alpha+beta+1)*B(alpha+1,beta+1)",
        log_d0_sq=log_d0,
        log_weight_fn=log_weight,
        moment_fn=_jacobi_moment(a, b),
        probes=_PROBES["interval"],
    )


def _legendre(p):
    return _jacobi({"alpha": Fraction(0), "beta": Fraction(0)}, "legendre")


def _kravchuk(p):
    pp, N = p["p"], p["N"]
    _require(0 < pp < 1, "kravchuk", f"p must satisfy 0 < p < 1, got {pp}")
    _require(N >= 1, "kravchuk", f"N must be a positive integer, got {N}")
    q = 1 - pp
    lp, lq = math.log(pp), math.log(q)

    def log_weight(x):
        return x * lp + (N - x) * lq - math.lgamma(x + 1) - math.lgamma(N - x + 1)

    return dict(
        kind="discrete",
        sigma=S,
        tau=(N * pp - S) / q,
        support=(0, N + 1),
        max_degree=N,
        lambda_fn=lambda n: n / q,
        alpha_fn=lambda n: Fraction(n + 1),
        beta_fn=lambda n: n + pp * (N - 2 * n),
        gamma_fn=lambda n: pp * q * (N - n + 1) if n else Fraction(0),
        norm_ratio_fn=lambda n: pp * q * (N - n) / (n + 1),
        d0_rational=Fraction(1, math.factorial(N)),
        d0_tag="1",
        log_d0_sq=-math.lgamma(N + 1),
        log_weight_fn=log_weight,
    )


def _meixner(p):
    g, mu = p["gamma"], p["mu"]
    _require(g > 0, "meixner", f"gamma must be > 0, got {g}")
    _require(0 < mu < 1, "meixner", f"mu must satisfy 0 < mu < 1, got {mu}")
    fg, lmu = float(g), math.log(mu)
    lg0 = math.lgamma(fg)

    def log_weight(x):
        return x * lmu + math.lgamma(x + fg) - math.lgamma(x + 1) - lg0

    return dict(
        kind="discrete",
        sigma=S,
        tau=mu * (S + g) - S,
        support=(0, math.inf),
        max_degree=None,
        lambda_fn=lambda n: n * (1 - mu),
        alpha_fn=lambda n: -mu / (1 - mu),
        beta_fn=lambda n: (n + mu * (n + g)) / (1 - mu),
        gamma_fn=lambda n: -n * (n + g - 1) / (1 - mu),
        norm_ratio_fn=lambda n: (n + 1) * (n + g) / mu,
        d0_rational=Fraction(1),
        d0_tag="(1-mu)^(-gamma)",
        log_d0_sq=-fg * math.log1p(-float(mu)),
        log_weight_fn=log_weight,
        weight_total=math.exp(-fg * math.log1p(-float(mu))),
    )


def _charlier(p):
    mu = p["mu"]
    _require(mu > 0, "charlier", f"mu must be > 0, got {mu}")
    fmu = float(mu)
    lmu = math.log(fmu)

    def log_weight(x):
        return -fmu + x * lmu - math.lgamma(x + 1)

    return dict(
        kind="discrete",
        sigma=S,
        tau=mu - S,
        support=(0, math.inf),
        max_degree=None,
        lambda_fn=lambda n: Fraction(n),
        alpha_fn=lambda n: -mu,
        beta_fn=lambda n: n + mu,
        gamma_fn=lambda n: Fraction(-n),
        norm_ratio_fn=lambda n: (n + 1) / mu,
        d0_rational=Fraction(1),
        d0_tag="1",
        log_d0_sq=0.0,
        log_weight_fn=log_weight,
        weight_total=math.exp(fmu),
    )


def _hahn(p, name="hahn"):
    a, b, N = p["alpha"], p["beta"], p["N"]
    _require(a > -1, name, f"alpha must be > -1, got {a}")
    _require(b > -1, name, f"beta must be > -1, got {b}")
    _require(N >= 1, name, f"N must be a positive integer, got {N}")
    A = a + b
    _require(A != -1, name, "alpha + beta = -1 makes the n = 0 raising relation degenerate")
    fa, fb = float(a), float(b)

    def alpha_fn(n):
        return (n + 1) * (n + A + 1) / ((2 * n + A + 1) * (2 * n + A + 2))

    def beta_fn(n):
        head = (a - b + 2 * N - 2) / 4
        if n == 0:
            return head + (b - a) * (A + 2 * N) / (4 * (A + 2))
        return head + (b * b - a * a) * (A + 2 * N) / (4 * (2 * n + A) * (2 * n + A + 2))

    def gamma_fn(n):
        if n == 0:
            return Fraction(0)
        return (n + a) * (n + b) * (N + n + A) * (N - n) / ((2 * n + A) * (2 * n + A + 1))

    def norm_ratio_fn(n):
        return (
            (n + a + 1) * (n + b + 1) * (N + n + A + 1) * (2 * n + A + 1) * (N - n - 1)
            / ((2 * n + A + 3) * (n + 1) * (n + A + 1))
        )

    def log_weight(x):
        return (
            math.lgamma(N + fa - x) + math.lgamma(x + fb + 1)
            - math.lgamma(N - x) - math.lgamma(x + 1)
        )

    d0_rat = _pochhammer(A + 1, N) / ((A + 1) * math.factorial(N - 1))
    plain = a == 0 and b == 0
    return dict(
        kind="discrete",
        sigma=S * (N + a - S),
        tau=(b + 1) * (N - 1) - (A + 2) * S,
        support=(0, N),
        max_degree=N - 1,
        lambda_fn=lambda n: n * (n + A + 1),
        alpha_fn=alpha_fn,
        beta_fn=beta_fn,
        gamma_fn=gamma_fn,
        norm_ratio_fn=norm_ratio_fn,
        d0_rational=d0_rat,
        d0_tag="1" if plain else "Gamma(alpha+1)*Gamma(beta+1)",
        log_d0_sq=_log_fraction(d0_rat) + _lgamma_q(a + 1) + _lgamma_q(b + 1),
        log_weight_fn=log_weight,
    )


def _chebyshev(p):
    return _hahn({"alpha": Fraction(0), "beta": Fraction(0), "N": p["N"]}, "chebyshev")


_BUILDERS = {
    "hermite": _hermite,
    "laguerre": _laguerre,
    "legendre": _legendre,
    "jacobi": _jacobi,
    "kravchuk": _kravchuk,
    "meixner": _meixner,
    "charlier": _charlier,
    "chebyshev": _chebyshev,
    "hahn": _hahn,
}


def canonical_name(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in _BUILDERS:
        raise ParameterError(f"unknown family {name!r}; choose one of {', '.join(FAMILY_NAMES)}")
    return key


def make_family(name: str, params=None) -> FamilySpec:
    """Build a family from its name and a mapping of rational parameters."""
    key = canonical_name(name)
    clean = _normalize_params(key, params)
    data = _BUILDERS[key](clean)
    spec = FamilySpec(name=key, params=tuple(clean.items()), **data)
    _check_structure(spec)
    return spec


def default_family(name: str, **overrides) -> FamilySpec:
    key = canonical_name(name)
    params = dict(DEFAULT_PARAMS[key])
    params.update(overrides)
    return make_family(key, params)


def _check_structure(F: FamilySpec):
    if F.sigma.degree > 2 or F.tau.degree != 1:
        raise InvariantError(f"{F.label()}: expects deg sigma <= 2 and deg tau = 1")
    for n in range(0, 4):
        if lambda_n(F, n) != -n * (F.tau.leading + Fraction(n - 1, 2) * F.sigma.coeff(2) * 2):
            raise InvariantError(f"{F.label()}: closed-form eigenvalue disagrees at n={n}")
    if F.is_discrete:
        a, b = F.support
        if F.sigma(Fraction(a)) != 0:
            raise InvariantError(f"{F.label()}: sigma(a) != 0")
        if F.is_finite and (F.sigma + F.tau)(Fraction(b - 1)) != 0:
            raise InvariantError(f"{F.label()}: sigma + tau does not vanish at the last lattice point")


# Closed-form data --------------------------------------------------------

def check_degree(F: FamilySpec, n: int, what: str = "degree"):
    if n < 0:
        raise DegreeError(f"{F.label()}: negative {what} {n}")
    if F.max_degree is not None and n > F.max_degree:
        raise DegreeError(f"{F.label()}: {what} {n} exceeds the largest admissible degree {F.max_degree}")


def lambda_n(F: FamilySpec, n: int) -> Fraction:
    if n < 0:
        raise DegreeError(f"negative degree {n}")
    return Fraction(F.lambda_fn(n))


def lambda_slope(F: FamilySpec, m: int) -> Fraction:
    """The closed form -(tau' + (m-1)/2 sigma''), i.e. lambda_m / m."""
    return -(F.tau.leading + Fraction(m - 1, 2) * 2 * F.sigma.coeff(2))


def tau_n(F: FamilySpec, n: int) -> Poly:
    if F.is_discrete:
        return F.tau.shift(n) + F.sigma.shift(n) - F.sigma
    return F.tau + n * F.sigma.derivative()


def recurrence_coeffs(F: FamilySpec, n: int) -> tuple[Fraction, Fraction, Fraction]:
    check_degree(F, n)
    return Fraction(F.alpha_fn(n)), Fraction(F.beta_fn(n)), Fraction(F.gamma_fn(n)) if n else Fraction(0)


def norm_ratio(F: FamilySpec, n: int) -> Fraction:
    """r_n = d_{n+1}^2 / d_n^2.  Zero at the top degree of a finite family."""
    check_degree(F, n)
    return Fraction(F.norm_ratio_fn(n))


def family_key(F: FamilySpec) -> tuple:
    """Cheap hashable identity of a family (name and parameters)."""
    return (F.name, F.params)


_NORMS: dict = {}


def norm_product(F: FamilySpec, n: int) -> Fraction:
    """d_n^2 / d_0^2 as an exact rational."""
    key = (family_key(F), n)
    out = _NORMS.get(key)
    if out is None:
        check_degree(F, n)
        out = Fraction(1)
        for k in range(n):
            out *= norm_ratio(F, k)
        _NORMS[key] = out
    return out


_LOG_NORMS: dict = {}


def log_norm_sq(F: FamilySpec, n: int) -> float:
    key = (family_key(F), n)
    out = _LOG_NORMS.get(key)
    if out is None:
        out = _LOG_NORMS[key] = F.log_d0_sq + _log_fraction(norm_product(F, n))
    return out


def pearson_ratio(F: FamilySpec) -> RationalFn:
    """rho(x+1)/rho(x) = (sigma(x) + tau(x)) / sigma(x+1)."""
    if not F.is_discrete:
        raise KindError(f"{F.label()} is continuous; the Pearson ratio is a lattice quantity")
    return RationalFn(F.sigma + F.tau, F.sigma.shift(1))


def weight_ratio(F: FamilySpec, k: int) -> RationalFn:
    """rho(x+k)/rho(x) for an integer shift k, as a rational function."""
    base = pearson_ratio(F)
    out = RationalFn(Poly(1))
    if k >= 0:
        for j in range(k):
            out = out * base.shift(j)
    else:
        for j in range(1, -k + 1):
            out = out / base.shift(-j)
    return out


def lattice_points(F: FamilySpec, cutoff: int = 40) -> range:
    """Every lattice point of a finite family, or 0..cutoff for an infinite one."""
    if not F.is_discrete:
        raise KindError(f"{F.label()} has no lattice")
    a, b = F.support
    return range(a, b if F.is_finite else a + cutoff + 1)


def _check_point(F: FamilySpec, at):
    try:
        v = float(at)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{at!r} is not a number") from exc
    if not math.isfinite(v):
        raise DomainError(f"point {at} is not finite")
    a, b = F.support
    if F.is_discrete:
        if v != int(v):
            raise DomainError(f"point {at} is not on the lattice of {F.label()}")
        if v < a or v > b - 1:
            raise DomainError(f"point {at} is outside the lattice {a}..{b - 1} of {F.label()}")
        return int(v)
    if not (float(a) < v < float(b)):
        raise DomainError(f"point {at} is outside the open support ({a}, {b}) of {F.label()}")
    return v


def log_weight(F: FamilySpec, at) -> float:
    return F.log_weight_fn(_check_point(F, at))


def weight_eval(F: FamilySpec, at) -> float:
    return math.exp(log_weight(F, at))
