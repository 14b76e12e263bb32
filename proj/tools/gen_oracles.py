"""Reference values for the unit tests, computed with mpmath at 30 digits.

Run: python3 tools/gen_oracles.py
The numbers printed here are frozen into tests/unit/*.cpp.
"""

from mpmath import mp, mpf, gamma, rgamma, hyp2f1, betainc, digamma, quad, sqrt, pi, log, findroot, diff

mp.dps = 30


def show(tag, v):
    print(f"{tag} = {mp.nstr(v, 20)}")


def gd(d):
    d = mpf(d)
    return gamma((d + 1) / 2) / (sqrt(pi) * gamma(d / 2))


def W(d, s):
    d, s = mpf(d), mpf(s)
    return 2 ** (d - 1 - s) * gamma((d + 1) / 2) * gamma((d - s) / 2) / (sqrt(pi) * gamma(d - s / 2))


def sphere_int(d, f, pts=(-1, 1)):
    d = mpf(d)
    return gd(d) * quad(lambda u: f(u) * (1 - u * u) ** (d / 2 - 1), list(pts))


def specfun():
    print("# specfun")
    for x in ["0.5", "-1.5", "5", "0.1", "-2.5", "20.3"]:
        show(f"gamma({x})", gamma(mpf(x)))
    show("digamma(0.3)", digamma(mpf("0.3")))
    show("digamma(7.5)", digamma(mpf("7.5")))
    cases = [
        ("1", "1", "2", "0.5"),
        ("0.5", "0.5", "1", "0.9"),
        ("1.5", "2", "3.5", "-3"),
        ("1", "1.5", "2.5", "0.99"),
        ("0.25", "1.5", "1.75", "0.999999"),
        ("0.3", "0.7", "1.5", "-20"),
        ("-3", "2.5", "1.5", "0.7"),
        ("2", "1", "3.5", "1"),
        ("1", "1.5", "0.5", "0.75"),
        ("0.5", "1", "3.00001", "0.95"),
    ]
    # evaluated at the double nearest each input: near z = 1 the rounding of z alone moves the value
    for a, b, c, z in cases:
        show(f"hyp2f1({a},{b},{c},{z})", hyp2f1(*(mpf(float(x)) for x in (a, b, c, z))))
    for a, b, c, z in [("1.5", "2.5", "-2", "0.3"), ("1", "1.5", "0.00005", "0.9"), ("1", "1", "-1", "0.6")]:
        # regularized: limit in c
        cc = mpf(c)
        v = hyp2f1(mpf(a), mpf(b), cc, mpf(z), maxterms=10**6) * rgamma(cc) if cc > 0 else None
        if v is None:
            m = int(-cc)
            a_, b_ = mpf(a), mpf(b)
            v = (mp.rf(a_, m + 1) * mp.rf(b_, m + 1) * mpf(z) ** (m + 1) / gamma(m + 2)
                 * hyp2f1(a_ + m + 1, b_ + m + 1, m + 2, mpf(z)))
        show(f"hyp2f1_regularized({a},{b},{c},{z})", v)
    for x, a, b in [("0.3", "2", "3"), ("0.9", "0.5", "0.5"), ("0.01", "1.5", "1.5"), ("0.7", "10", "0.5")]:
        show(f"inc_beta({x},{a},{b})", betainc(mpf(a), mpf(b), 0, mpf(x), regularized=True))


def sphere_core():
    print("# sphere_core")
    for d, s in [(2, 1), (3, 1), (2, "0.5"), (4, "2.5"), (3, "1.5"), (5, "3")]:
        show(f"W({d},{s})", W(d, s))
    show("log_energy(2)", sphere_int(2, lambda u: -log(sqrt(2 - 2 * u))))
    show("log_energy(3)", sphere_int(3, lambda u: -log(sqrt(2 - 2 * u))))
    for d, s, R in [(2, "0.5", "1.5"), (3, "1.5", "1.2"), (4, "2.5", "3"), (2, "3", "1.5"), (3, "4.5", "2")]:
        d_, s_, R_ = mpf(d), mpf(s), mpf(R)
        v = sphere_int(d, lambda u: (R_ * R_ - 2 * R_ * u + 1) ** (-s_ / 2))
        show(f"U_ext({d},{s},{R})", v)
    R_ = mpf(2)
    show("U_ext_log(2,2)", sphere_int(2, lambda u: -log(sqrt(R_ * R_ - 2 * R_ * u + 1))))
    for d, r in [(2, "0.5"), (3, "1.2"), (4, "0.3")]:
        r_ = mpf(r)
        show(f"cap_area({d},{r})", sphere_int(d, lambda u: 1, (1 - r_ * r_ / 2, 1)))
    for d, s, r in [(3, "1.5", "0.4"), (4, "1", "1.1"), (2, "5", "0.1"), (3, "7", "0.2")]:
        s_, r_ = mpf(s), mpf(r)
        v = sphere_int(d, lambda u: (2 - 2 * u) ** (-s_ / 2), (-1, 1 - r_ * r_ / 2))
        show(f"deleted_cap({d},{s},{r})", v)


def cap_parts(d, s, q, R, t):
    d, s, q, R, t = map(mpf, (d, s, q, R, t))
    Wv = W(d, s)
    c = 1 - (d - s) / 2
    r2 = R * R + 2 * R * t + 1

    # all pieces take dt = t - u exactly; recomputing it by subtraction cancels near u = t
    def pre(u, dt):
        return (gamma(d / 2) / gamma(d - s / 2) / Wv * ((1 - t) / (1 - u)) ** (d / 2)
                * (dt / (1 - t)) ** ((s - d) / 2))

    def gA(u, dt):
        return pre(u, dt) * hyp2f1(1, d / 2, c, dt / (1 - u)) * rgamma(c)

    def gB(u, dt):
        z = (R + 1) ** 2 / r2 * dt / (1 - u)
        return pre(u, dt) * (R - 1) ** (d - s) / r2 ** (d / 2) * hyp2f1(1, d / 2, c, z) * rgamma(c)

    # u = t - (1+t) w^8 flattens the (t-u)^alpha endpoint; plain quad loses digits there
    def cap_int(g):
        def f(w):
            dt = (1 + t) * w ** 8
            u = t - dt
            return g(u, dt) * (1 - u * u) ** (d / 2 - 1) * (1 + t) * 8 * w ** 7
        return gd(d) * quad(f, [0, mpf(1) / 4, mpf(1) / 2, 1])

    IA = cap_int(gA)
    IB = cap_int(gB)
    phi = (1 + q * IB) / IA
    return phi, (lambda u: phi * gA(u, t - u) - q * gB(u, t - u))


def rhs(d, s, q, R, t):
    d, s, q, R, t = map(mpf, (d, s, q, R, t))
    return q * (R - 1) ** (d - s) / (R * R + 2 * R * t + 1) ** (d / 2)


def equilibrium():
    print("# equilibrium (canonical frame, source below the south pole)")
    for args in [(2, 1, -5, 2, 0), (2, 1, -5, 2, "-0.5"), (3, "1.5", -2, "1.5", "0.3"), (2, "0.5", 1, 3, "0.2"),
                 (4, "2.5", -1, 2, "-0.2")]:
        phi, dens = cap_parts(*args, )
        show(f"phi{args}", phi)
        if args == (2, 1, -5, 2, 0):
            show("density(-0.5)", dens(mpf("-0.5")))
    d, s, q, R = 2, 1, -5, 2
    tc = findroot(lambda t: cap_parts(d, s, q, R, t)[0] - rhs(d, s, q, R, t), mpf("-0.55"))
    show("t_c(2,1,-5,2)", tc)
    show("F(2,1,-5,2)", cap_parts(d, s, q, R, tc)[0])
    d, s, q, R = 3, "1.5", -2, "1.5"
    tc = findroot(lambda t: cap_parts(d, s, q, R, t)[0] - rhs(d, s, q, R, t), mpf("0.0"))
    show("t_c(3,1.5,-2,1.5)", tc)


def three_four():
    print("# fekete")
    s = mpf(1)

    def E3(t, q, R):
        return 6 * (3 * (1 - t * t)) ** (-s / 2) + 12 * q * (1 - 2 * R * t + R * R) ** (-s / 2)

    t0 = findroot(lambda t: diff(lambda x: E3(x, 1, 2), t), mpf("-0.3"))
    show("t0(q=1,R=2,s=1)", t0)
    show("E3(q=1,R=2,s=1)", E3(t0, 1, 2))

    def f13(t, q, R):
        return 6 * (2 ** (-s / 2) / (1 + t) ** (s / 2) + 3 ** (-s / 2) / (1 - t * t) ** (s / 2)
                    + q * (1 / (1 + R) ** s + 3 / (1 - 2 * R * t + R * R) ** (s / 2)))

    def f04(t, q, R):
        return 2 ** (2 - s) * (1 + 2 ** (1 + s / 2)) / (1 - t * t) ** (s / 2) + 24 * q / (1 - 2 * R * t + R * R) ** (s / 2)

    def f22(t, u, q, R):
        return (2 ** (1 - s) / (1 - t * t) ** (s / 2) + 2 ** (1 - s) / (1 - u * u) ** (s / 2)
                + 2 ** (3 - s / 2) * (1 - t * u) ** (-s / 2)
                + 12 * q * ((1 - 2 * R * t + R * R) ** (-s / 2) + (1 - 2 * R * u + R * R) ** (-s / 2)))

    q, R = mpf(1) / 3, mpf(2)
    ta = findroot(lambda t: diff(lambda x: f13(x, q, R), t), mpf("0.1"))
    show("A(q=1/3,R=2) t", ta)
    show("A(q=1/3,R=2) E", f13(ta, q, R))
    q, R = mpf(1), mpf(2)
    tb = findroot([lambda t, u: diff(lambda x: f22(x, u, q, R), t), lambda t, u: diff(lambda y: f22(t, y, q, R), u)],
                  (mpf("-0.17"), mpf("-0.5")))
    show("B(q=1,R=2) t", tb[0])
    show("B(q=1,R=2) tau", tb[1])
    show("B(q=1,R=2) E", f22(tb[0], tb[1], q, R))
    q, R = mpf(1), mpf("1.5")
    tcc = findroot(lambda t: diff(lambda x: f04(x, q, R), t), mpf("-0.39"))
    show("C(q=1,R=1.5) t", tcc)
    show("C(q=1,R=1.5) E", f04(tcc, q, R))


if __name__ == "__main__":
    specfun()
    sphere_core()
    equilibrium()
    three_four()
