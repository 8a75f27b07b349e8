"""Regenerate tests/data/oracle_norms.json: d_n^2 by direct integration/summation.

Uses mpmath quadrature (continuous) and plain summation (lattices) against
the polynomials frozen in oracle_polys.json, with the weights written out
from their textbook definitions.  Run by hand; needs mpmath.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
DATA = Path(__file__).resolve().parents[1] / "data"


def weight(name, p):
    f = {k: mp.mpf(mp.fraction(*map(int, v.split("/")))) if "/" in v else mp.mpf(v) for k, v in p.items()}
    if name == "hermite":
        return lambda t: mp.e ** (-t * t), (-mp.inf, mp.inf)
    if name == "laguerre":
        return lambda t: t ** f["alpha"] * mp.e ** (-t), (0, mp.inf)
    if name == "legendre":
        return lambda t: 1, (-1, 1)
    if name == "jacobi":
        return lambda t: (1 - t) ** f["alpha"] * (1 + t) ** f["beta"], (-1, 1)
    if name == "kravchuk":
        P, N = f["p"], int(f["N"])
        Q = 1 - P
        return lambda t: P**t * Q ** (N - t) / (mp.factorial(t) * mp.factorial(N - t)), range(N + 1)
    if name == "meixner":
        g, mu = f["gamma"], f["mu"]
        return lambda t: mu**t * mp.gamma(t + g) / (mp.gamma(t + 1) * mp.gamma(g)), range(400)
    if name == "charlier":
        mu = f["mu"]
        return lambda t: mp.e ** (-mu) * mu**t / mp.factorial(t), range(200)
    a, b, N = (f["alpha"], f["beta"], int(f["N"])) if name == "hahn" else (0, 0, int(f["N"]))
    return lambda t: mp.gamma(N + a - t) * mp.gamma(t + b + 1) / (mp.gamma(N - t) * mp.gamma(t + 1)), range(N)


def main():
    cases = json.loads((DATA / "oracle_polys.json").read_text())
    out = []
    for case in cases:
        rho, dom = weight(case["family"], case["params"])
        norms = []
        for coeffs in case["polys"][:6]:
            c = [mp.mpf(mp.fraction(*map(int, v.split("/")))) if "/" in v else mp.mpf(v) for v in coeffs]
            y = lambda t: mp.polyval(c[::-1], t)
            if isinstance(dom, range):
                val = mp.fsum(y(t) ** 2 * rho(t) for t in dom)
            else:
                val = mp.quad(lambda t: y(t) ** 2 * rho(t), [dom[0], 0, dom[1]] if dom[0] < 0 else [dom[0], 1, dom[1]])
            norms.append(mp.nstr(val, 25))
        out.append({"family": case["family"], "params": case["params"], "norm_sq": norms})
    (DATA / "oracle_norms.json").write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
