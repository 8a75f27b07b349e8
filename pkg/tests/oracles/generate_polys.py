"""Regenerate tests/data/oracle_polys.json from sympy's closed forms.

Independent of the package: continuous families use sympy's builtin
polynomials, discrete families their terminating hypergeometric series.
Run by hand (needs sympy); the tests only read the frozen JSON.
"""

import json
from pathlib import Path

import sympy as sp
from sympy import Rational as R, binomial, factorial, rf

s, x = sp.symbols("s x")

CASES = [
    ("hermite", {}),
    ("laguerre", {"alpha": R(2)}),
    ("laguerre", {"alpha": R(-1, 3)}),
    ("legendre", {}),
    ("jacobi", {"alpha": R(1, 2), "beta": R(1, 2)}),
    ("jacobi", {"alpha": R(3, 2), "beta": R(-1, 3)}),
    ("kravchuk", {"p": R(1, 2), "N": 8}),
    ("kravchuk", {"p": R(1, 3), "N": 5}),
    ("meixner", {"gamma": R(2), "mu": R(1, 3)}),
    ("meixner", {"gamma": R(3, 2), "mu": R(2, 5)}),
    ("charlier", {"mu": R(1, 2)}),
    ("charlier", {"mu": R(3)}),
    ("chebyshev", {"N": 8}),
    ("hahn", {"alpha": R(1), "beta": R(2), "N": 8}),
    ("hahn", {"alpha": R(1, 2), "beta": R(3, 2), "N": 6}),
]
N_MAX = 8


def hyp(num, den, z, nterms):
    total = 0
    for k in range(nterms + 1):
        t = sp.Integer(1)
        for a in num:
            t *= rf(a, k)
        for b in den:
            t /= rf(b, k)
        total += t * z**k / factorial(k)
    return sp.expand(total)


def truth(name, p, n):
    if name == "hermite":
        return sp.hermite(n, s), s
    if name == "laguerre":
        return sp.assoc_laguerre(n, p["alpha"], s), s
    if name == "legendre":
        return sp.legendre(n, s), s
    if name == "jacobi":
        return sp.jacobi(n, p["alpha"], p["beta"], s), s
    if name == "charlier":
        return hyp([-n, -x], [], -1 / p["mu"], n), x
    if name == "meixner":
        g, mu = p["gamma"], p["mu"]
        return rf(g, n) * hyp([-n, -x], [g], 1 - 1 / mu, n), x
    if name == "kravchuk":
        pp, N = p["p"], p["N"]
        return (-pp) ** n * binomial(N, n) * hyp([-n, -x], [-N], 1 / pp, n), x
    a, b, N = (p["alpha"], p["beta"], p["N"]) if name == "hahn" else (0, 0, p["N"])
    Q = hyp([-n, n + a + b + 1, -x], [b + 1, -(N - 1)], 1, n)
    lead = sp.Poly(Q, x).LC() if n > 0 else Q
    return Q * rf(n + a + b + 1, n) / factorial(n) / lead, x


def top_degree(name, p):
    if name == "kravchuk":
        return min(N_MAX, p["N"])
    if name in ("hahn", "chebyshev"):
        return min(N_MAX, p["N"] - 1)
    return N_MAX


def main():
    out = []
    for name, p in CASES:
        polys = []
        for n in range(top_degree(name, p) + 1):
            expr, var = truth(name, p, n)
            coeffs = sp.Poly(sp.expand(expr), var).all_coeffs()[::-1]
            polys.append([str(sp.Rational(sp.simplify(c))) for c in coeffs])
        out.append({"family": name, "params": {k: str(v) for k, v in p.items()}, "polys": polys})
    path = Path(__file__).resolve().parents[1] / "data" / "oracle_polys.json"
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
