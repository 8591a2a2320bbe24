"""Extended-precision reference values for the special-function tests."""
import mpmath as mp

mp.mp.dps = 40


def hermite_explicit(n, t):
    t = mp.mpf(t)
    return sum((-1) ** m * mp.factorial(n) / (mp.factorial(m) * mp.factorial(n - 2 * m)) * (2 * t) ** (n - 2 * m)
               for m in range(n // 2 + 1))


def laguerre_explicit(n, k, z):
    return sum((-1) ** j * mp.binomial(n + k, n - j) * z ** j / mp.factorial(j) for j in range(n + 1))


def psi(n, t):
    return hermite_explicit(n, t) * mp.e ** (-mp.mpf(t) ** 2 / 2) / mp.sqrt(mp.sqrt(mp.pi) * 2 ** n * mp.factorial(n))


def overlap(a, b, xi):
    return mp.quad(lambda t: psi(a, t) * psi(b, t), [xi, 0 if xi < 0 else xi + 1, mp.inf])


if __name__ == "__main__":
    print("H5(0.7)", mp.nstr(hermite_explicit(5, mp.mpf("0.7")), 20))
    print("H12(-2.3)", mp.nstr(hermite_explicit(12, mp.mpf("-2.3")), 20))
    z = mp.mpc("0.5", "0.25")
    print("L3^1(0.5+0.25i)", mp.nstr(laguerre_explicit(3, 1, z), 20))
    print("L4^-2(1.7)", mp.nstr(laguerre_explicit(4, -2, mp.mpf("1.7")), 20))
    print("lambda0(1)", mp.nstr(mp.erfc(1) / 2, 20))
    print("overlap(0,2,0.5)", mp.nstr(overlap(0, 2, mp.mpf("0.5")), 20))
    print("lambda3(0.8)", mp.nstr(overlap(3, 3, mp.mpf("0.8")), 20))
    print("overlap(1,4,-1.2)", mp.nstr(overlap(1, 4, mp.mpf("-1.2")), 20))
    print("int_0^3 exp(-t^2)", mp.nstr(mp.sqrt(mp.pi) / 2 * mp.erf(3), 20))
    print("psi4(1.3)", mp.nstr(psi(4, mp.mpf("1.3")), 20))
    print("psi40(2.5)", mp.nstr(psi(40, mp.mpf("2.5")), 20))
