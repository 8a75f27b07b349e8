"""Displayed L-L+ and L+L- eigenvalues of the two family tables, written out
by hand so they serve as an oracle independent of the engine."""

from fractions import Fraction as Q


def lmlp(name, p, n):
    """Eigenvalue of L-(n+1) L+(n) on psi_n."""
    if name == "hermite":
        return Q(2 * (n + 1))
    if name == "laguerre":
        return (n + 1) * (n + p["alpha"] + 1)
    if name == "legendre":
        return Q((n + 1) ** 2)
    if name == "jacobi":
        a, b = p["alpha"], p["beta"]
        return 4 * (n + 1) * (n + a + 1) * (n + b + 1) * (n + a + b + 1) / (2 * n + a + b + 2) ** 2
    if name == "kravchuk":
        P, N = p["p"], p["N"]
        return P / (1 - P) * (N - n) * (n + 1)
    if name == "meixner":
        return p["mu"] * (n + p["gamma"]) * (n + 1)
    if name == "charlier":
        return p["mu"] * (n + 1)
    if name == "chebyshev":
        N = p["N"]
        return Q((n + 1) ** 2, 4) * (N + n + 1) * (N - n - 1)
    if name == "hahn":
        a, b, N = p["alpha"], p["beta"], p["N"]
        return ((n + 1) * (n + a + 1) * (n + b + 1) * (n + a + b + 1) * (N + n + a + b + 1) * (N - n - 1)
                / (2 * n + a + b + 2) ** 2)
    raise KeyError(name)


def lplm(name, p, n):
    """Eigenvalue of L+(n-1) L-(n) on psi_n (zero at n = 0)."""
    if name == "hermite":
        return Q(2 * n)
    if name == "laguerre":
        return n * (n + p["alpha"])
    if name == "legendre":
        return Q(n * n)
    if name == "jacobi":
        a, b = p["alpha"], p["beta"]
        if n == 0:
            return Q(0)
        return 4 * n * (n + a) * (n + b) * (n + a + b) / (2 * n + a + b) ** 2
    if name == "kravchuk":
        P, N = p["p"], p["N"]
        return P / (1 - P) * (N - n + 1) * n
    if name == "meixner":
        return p["mu"] * (n + p["gamma"] - 1) * n
    if name == "charlier":
        return p["mu"] * n
    if name == "chebyshev":
        N = p["N"]
        return Q(n * n, 4) * (N + n) * (N - n)
    if name == "hahn":
        a, b, N = p["alpha"], p["beta"], p["N"]
        if n == 0:
            return Q(0)
        return n * (n + a) * (n + b) * (n + a + b) * (N + n + a + b) * (N - n) / (2 * n + a + b) ** 2
    raise KeyError(name)
