"""Dense-grid reference values for the boundary coefficients.

lambda_0 comes from erfc; higher levels and Gram matrices from scipy quadrature
of explicit Hermite functions. The xi integral is a trapezoid sum on a fine
grid, independent of the Gauss-Legendre panels used by the library.
"""
import numpy as np
from scipy import integrate, special


def psi(n, t):
    h = special.eval_hermite(n, t)
    return h * np.exp(-t * t / 2) / np.sqrt(np.sqrt(np.pi) * 2.0 ** n * special.factorial(n))


def overlap(a, b, xi):
    v, _ = integrate.quad(lambda t: psi(a, t) * psi(b, t), xi, np.inf, epsabs=1e-14, epsrel=1e-13, limit=200)
    return v


def h(alpha, t):
    t = np.clip(t, 0.0, 1.0)
    if alpha == 1:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.nan_to_num(-t * np.log(t)) + np.nan_to_num(-(1 - t) * np.log1p(-t))
    return np.log(t ** alpha + (1 - t) ** alpha) / (1 - alpha)


def coeff(fvals, lam, f1, xi):
    return np.trapz(fvals - f1 * lam, xi) / (2 * np.pi)


if __name__ == "__main__":
    xi = np.linspace(-12, 12, 240001)
    lam0 = 0.5 * special.erfc(xi)
    for alpha in (0.5, 1, 2):
        print("M0(h_%s)" % alpha, repr(coeff(h(alpha, lam0), lam0, 0.0, xi)))
    print("M0(t^2)", repr(coeff(lam0 ** 2, lam0, 1.0, xi)))
    print("M0(gtilde)", repr(coeff(lam0 * (1 - lam0), lam0, 0.0, xi)))

    xs = np.linspace(-12, 12, 4801)
    lam1 = np.array([overlap(1, 1, x) for x in xs])
    print("M1(t^4)", repr(coeff(lam1 ** 4, lam1, 1.0, xs)))
    for alpha in (1, 2):
        print("M1(h_%s)" % alpha, repr(coeff(h(alpha, lam1), lam1, 0.0, xs)))

    # M_{<=1}(h_1) from the 2x2 Gram spectrum.
    vals = []
    for x in xs:
        g = np.array([[overlap(0, 0, x), overlap(0, 1, x)], [overlap(0, 1, x), overlap(1, 1, x)]])
        vals.append(np.linalg.eigvalsh(g))
    vals = np.array(vals)
    for alpha in (0.5, 1, 2):
        print("M<=1(h_%s)" % alpha, repr(np.trapz(h(alpha, vals).sum(axis=1), xs) / (2 * np.pi)))
    print("M<=1(t^2)", repr(np.trapz((vals ** 2 - vals).sum(axis=1), xs) / (2 * np.pi)))

    g = np.array([[overlap(a, b, 0.7) for b in range(3)] for a in range(3)])
    mu = np.linalg.eigvalsh(g)
    print("tr K(2,0.7)^3", repr((mu ** 3).sum()), "chain", repr(np.trace(g @ g @ g)))
    g = np.array([[overlap(a, b, 0.3) for b in range(3)] for a in range(3)])
    print("eig G(2,0.3)", repr(np.linalg.eigvalsh(g)))
