"""Reference values for the disk sector solver (mpmath, 30 digits)."""
import mpmath as mp

mp.mp.dps = 30


def phi(l, a, t):
    return mp.sqrt(mp.factorial(l) / mp.factorial(l + a)) * t ** (mp.mpf(a) / 2) * mp.e ** (-t / 2) * mp.laguerre(l, a, t)


def sector(levels, k, T):
    # levels: list of l with l + k >= 0, radial functions phi_{l',|k|}
    a = abs(k)
    idx = [l if k >= 0 else l + k for l in levels if (l if k >= 0 else l + k) >= 0]
    d = len(idx)
    G = mp.matrix(d, d)
    for i in range(d):
        for j in range(d):
            G[i, j] = mp.quad(lambda t: phi(idx[i], a, t) * phi(idx[j], a, t), [0, T])
    ev = mp.eigsy(G)[0]
    return sorted(ev[i] for i in range(d))


def kernel_direct(B, sel, k, r, s):
    # (1/2pi) int p(x_r, y_{s,phi}) e^{-ik phi} dphi for p = sum over levels in sel
    def p(phi_):
        d2 = r * r + s * s - 2 * r * s * mp.cos(phi_)
        sym = r * s * mp.sin(phi_)
        tot = 0
        for l in sel:
            tot += mp.laguerre(l, 0, B * d2 / 2)
        return B / (2 * mp.pi) * mp.e ** (-B * d2 / 4) * tot * mp.e ** (1j * B * sym / 2) * mp.e ** (-1j * k * phi_)
    return mp.quad(p, [0, mp.pi, 2 * mp.pi]) / (2 * mp.pi)


if __name__ == "__main__":
    print("k0 l0 B1 R=sqrt2", sector([0], 0, mp.mpf(1)))
    print("upto1 k=0 T=3", sector([0, 1], 0, mp.mpf(3)))
    print("upto1 k=2 T=3", sector([0, 1], 2, mp.mpf(3)))
    print("upto1 k=-1 T=3", sector([0, 1], -1, mp.mpf(3)))
    print("single1 k=3 T=5", sector([1], 3, mp.mpf(5)))
    print("kernel l0 k1 r1 s2", kernel_direct(1, [0], 1, mp.mpf(1), mp.mpf(2)))
    print("kernel upto1 k-1 B2 r0.7 s1.3", kernel_direct(2, [0, 1], -1, mp.mpf('0.7'), mp.mpf('1.3')))
    print("kernel single2 k3 B1.5 r2 s2.5", kernel_direct(mp.mpf('1.5'), [2], 3, mp.mpf(2), mp.mpf('2.5')))
