"""High-precision reference values frozen into the C++ tests.

Run with `python3 reference_values.py`; requires mpmath. Nothing here is
imported by the build: the printed numbers are pasted into test sources.
"""
from math import gcd

import mpmath as mp

mp.mp.dps = 40


def zeta_points():
    pts = [mp.mpf(2), mp.mpf("0.5"), mp.mpc("0.5", "14.134725141"),
           mp.mpc("0.3", "2"), mp.mpc("0.5", "100"), mp.mpc("0.5", "1000"),
           mp.mpc("0.5", "10000"), mp.mpc("0.5", "99999"), mp.mpc("-1", "5"),
           mp.mpc("2", "100"), mp.mpc("0.75", "-37.5"), mp.mpf("0.25"),
           mp.mpc("0.1", "50000")]
    for s in pts:
        z = mp.zeta(s)
        print(f"zeta({mp.nstr(s, 15)}) = {mp.nstr(mp.re(z), 20)} {mp.nstr(mp.im(z), 20)}")


def loggamma_points():
    for z in [mp.mpc("0.25", "5"), mp.mpc("0.25", "-250"), mp.mpc("3.5", "0"),
              mp.mpc("-2.5", "1"), mp.mpc("0.01", "0.01")]:
        v = mp.loggamma(z)
        print(f"loggamma({mp.nstr(z, 10)}) = {mp.nstr(mp.re(v), 20)} {mp.nstr(mp.im(v), 20)}")


def piece_integral(q2, q1, q0, v0, v1, c):
    # integral of (q2 v^2 + q1 v + q0) / (v + c)^2 over [v0, v1]
    y0, y1 = v0 + c, v1 + c
    d2 = q2
    d1 = q1 - 2 * q2 * c
    d0 = q0 - q1 * c + q2 * c * c
    total = d2 * (y1 - y0)
    if d1 != 0:
        total += d1 * mp.log(y1 / y0)
    if d0 != 0:
        total += d0 * (1 / y0 - 1 / y1)
    return total


def rho_rho(a, b):
    """<rho_a, rho_b> = int_0^inf {u/a}{u/b} u^-2 du, summed period by period."""
    L = a * b // gcd(a, b)
    cuts = sorted(set([k * a for k in range(L // a + 1)] + [k * b for k in range(L // b + 1)]))
    pieces = []
    for v0, v1 in zip(cuts[:-1], cuts[1:]):
        i, k = v0 // a, v0 // b
        # (v/a - i)(v/b - k)
        q2 = mp.mpf(1) / (a * b)
        q1 = -mp.mpf(i) / b - mp.mpf(k) / a
        q0 = mp.mpf(i * k)
        pieces.append((q2, q1, q0, mp.mpf(v0), mp.mpf(v1)))

    def period(j):
        c = j * L
        return sum(piece_integral(*p, c) for p in pieces)

    first = mp.mpf(0)
    for q2, q1, q0, v0, v1 in pieces:
        if v0 == 0:
            first += (v1 - v0) / (a * b)  # q(v)/v^2 = 1/(ab) near the origin
        else:
            first += piece_integral(q2, q1, q0, v0, v1, 0)
    return first + mp.nsum(period, [1, mp.inf])


def main():
    zeta_points()
    loggamma_points()
    g = mp.euler
    print("euler_gamma =", mp.nstr(g, 25))
    print("log(2pi)-gamma =", mp.nstr(mp.log(2 * mp.pi) - g, 25))
    for a, b in [(1, 1), (1, 2), (2, 3), (3, 5), (4, 6), (17, 17), (7, 10)]:
        print(f"rho_rho({a},{b}) = {mp.nstr(rho_rho(a, b), 25)}")
    for a in [1, 2, 17]:
        print(f"chi_rho({a}) = {mp.nstr((mp.log(a) + 1 - g) / a, 25)}")
    # natural n=1 distance^2: |chi + rho_1|^2
    d = 1 + 2 * (1 - g) + rho_rho(1, 1)
    print("natural_n1_distance_sq =", mp.nstr(d, 25))
    print("zeta(0.5)*(-2) =", mp.nstr(-mp.zeta(0.5) / mp.mpf(0.5), 25))
    s = mp.mpc("0.3", "2")
    v = -mp.zeta(s) / s
    print("-zeta(s)/s at 0.3+2i =", mp.nstr(mp.re(v), 20), mp.nstr(mp.im(v), 20))

    # natural n=10 through the Gram expansion
    # ||chi + sum c_a rho_a||^2 = 1 + 2 sum c_a <chi,rho_a> + sum c_a c_b <rho_a,rho_b>
    mu = [0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    n = 10
    gram = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            if mu[a] and mu[b]:
                gram[(a, b)] = rho_rho(a, b)
    d = mp.mpf(1)
    for a in range(1, n + 1):
        d += 2 * mu[a] * (mp.log(a) + 1 - g) / a
        for b in range(1, n + 1):
            if mu[a] and mu[b]:
                d += mu[a] * mu[b] * gram[(min(a, b), max(a, b))]
    print("natural_n10_distance_sq =", mp.nstr(d, 25))

    # best approximation on {1, 2}
    G = mp.matrix([[rho_rho(1, 1), rho_rho(1, 2)], [rho_rho(1, 2), rho_rho(2, 2)]])
    bvec = mp.matrix([(mp.log(a) + 1 - g) / a for a in (1, 2)])
    x = mp.lu_solve(G, bvec)
    print("best_n2_solution =", mp.nstr(x[0], 25), mp.nstr(x[1], 25))
    print("best_n2_residual =", mp.nstr(1 - (bvec[0] * x[0] + bvec[1] * x[1]), 25))


if __name__ == "__main__":
    main()
