"""Multiprecision reference values for the lbcft test-suite.

Everything here is computed with mpmath, independently of the Rust code:
the double Gamma values come from direct quadrature of its defining
integral, the hypergeometric values from the raw power series summed at
high precision, and the Gamma ratios from mpmath's own gamma.

Run from this directory:  python3 gen_oracle.py > oracle_values.json
"""

import json

import mpmath as mp

mp.mp.dps = 80


def log_double_gamma(x, gamma):
    """log Gamma_{gamma/2}(x) by quadrature of the integral representation (Re x > 0)."""
    x = mp.mpc(x)
    g = mp.mpf(gamma)
    q = g / 2 + 2 / g
    u = x - q / 2

    def bracket(t):
        return ((mp.exp(-x * t) - mp.exp(-q * t / 2))
                / ((1 - mp.exp(-g * t / 2)) * (1 - mp.exp(-2 * t / g)))
                - u * u / 2 * mp.exp(-t) + u / t)

    def integrand(t):
        # the bracket is O(t); below 1e-20 the integrand is constant to ~1e-20
        t = max(t, mp.mpf("1e-20"))
        return bracket(t) / t

    pts = [0, mp.mpf("0.25"), 1, 4, 12, 30, 60, 120, mp.inf]
    return mp.quad(integrand, pts, maxdegree=10)


def log_double_sine(x, gamma):
    """log S_{gamma/2}(x) = log Gamma(x) - log Gamma(Q - x) as one integral (0 < Re x < Q)."""
    x = mp.mpc(x)
    g = mp.mpf(gamma)
    u = x - (g / 2 + 2 / g) / 2

    def integrand(t):
        # the bracket cancels to O(t); extra digits absorb the cancellation
        with mp.extradps(25):
            t = max(mp.mpf(t), mp.mpf("1e-20"))
            return (-mp.sinh(u * t) / (2 * mp.sinh(g * t / 4) * mp.sinh(t / g)) + 2 * u / t) / t

    # slowly decaying and oscillating for Re u near ±Q/2 or large Im u: short panels
    return mp.quad(integrand, mp.linspace(0, 60, 121) + [mp.inf])


def hyp_series(a, b, c, t, terms=4000):
    """Raw Gauss series; only used for |t| < 1 where it converges geometrically."""
    a, b, c, t = mp.mpc(a), mp.mpc(b), mp.mpc(c), mp.mpf(t)
    s = mp.mpc(1)
    term = mp.mpc(1)
    for n in range(terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * t
        s += term
        if abs(term) < mp.mpf(10) ** (-60) * abs(s):
            break
    return s


def cplx(z):
    z = mp.mpc(z)
    return {"re": float(z.real), "im": float(z.imag)}


def main():
    out = {}

    dg_points = [
        (1.0, (0.8, 0.3)),
        (1.0, (1.25, 0.0)),
        (1.0, (0.3, -0.4)),
        (1.0, (2.6, 1.1)),
        (0.7, (1.0, 0.5)),
        (0.7, (0.4, -1.2)),
        (0.7, (3.1, 0.2)),
        (0.7, (1.9, -2.0)),
        (1.3, (0.9, 0.0)),
        (1.3, (1.5, 0.7)),
        (1.3, (0.25, 1.5)),
        (1.3, (2.2, -0.9)),
        (1.7, (0.6, 0.1)),
        (1.7, (1.1, -0.6)),
        (1.7, (2.8, 1.7)),
        (1.7, (0.35, 2.3)),
        (0.45, (2.4, 0.3)),
        (0.45, (5.0, -1.0)),
        (1.95, (1.0, 0.4)),
        (1.95, (0.5, -0.8)),
    ]
    recs = []
    for gamma, (re, im) in dg_points:
        v = log_double_gamma(mp.mpc(re, im), gamma)
        recs.append({"gamma": gamma, "x": {"re": re, "im": im},
                     "log": cplx(v), "value": cplx(mp.exp(v))})
    out["double_gamma"] = recs

    hyp_sets = [
        ((0.3, 0.1), (0.7, -0.2), (1.4, 0.05)),
        ((0.45, 0.0), (1.15, 0.0), (1.8, 0.0)),
        ((-0.35, 0.4), (0.6, 0.3), (0.55, -0.25)),
        ((1.2, -0.3), (-0.7, 0.2), (2.3, 0.4)),
        ((0.15, 0.5), (0.25, -0.5), (1.35, 0.0)),
    ]
    hyp = []
    for a, b, c in hyp_sets:
        a, b, c = mp.mpc(*a), mp.mpc(*b), mp.mpc(*c)
        for t in (0.3, 0.7, 0.9, -0.8):
            hyp.append({"a": cplx(a), "b": cplx(b), "c": cplx(c), "t": t,
                        "value": cplx(hyp_series(a, b, c, t))})
        for t in (-3.0, -1.6):
            hyp.append({"a": cplx(a), "b": cplx(b), "c": cplx(c), "t": t,
                        "value": cplx(mp.hyp2f1(a, b, c, t))})
    out["hyp2f1"] = hyp

    a, b, c = mp.mpf("0.3"), mp.mpf("0.7"), mp.mpf("1.4")
    G = mp.gamma
    m01 = [[G(c) * G(c - a - b) / (G(c - a) * G(c - b)),
            G(2 - c) * G(c - a - b) / (G(1 - a) * G(1 - b))],
           [G(c) * G(a + b - c) / (G(a) * G(b)),
            G(2 - c) * G(a + b - c) / (G(a - c + 1) * G(b - c + 1))]]
    m0inf = [[G(1 - c) * G(a - b + 1) / (G(a - c + 1) * G(1 - b)),
              G(1 - c) * G(b - a + 1) / (G(b - c + 1) * G(1 - a))],
             [G(c - 1) * G(a - b + 1) / (G(a) * G(c - b)),
              G(c - 1) * G(b - a + 1) / (G(b) * G(c - a))]]
    out["connection"] = {"a": 0.3, "b": 0.7, "c": 1.4,
                         "m01": [[cplx(z) for z in row] for row in m01],
                         "m0inf": [[cplx(z) for z in row] for row in m0inf]}

    uv = []
    for gamma in (0.7, 1.0, 1.7):
        g = mp.mpf(gamma)
        val = mp.pi * (g / 2) ** (2 - g * g / 2) * G(g * g / 4) / G(1 - g * g / 4)
        uv.append({"gamma": gamma, "value": float(val)})
    out["unit_volume"] = uv

    mg = []
    for gamma, p in ((1.2, 0.8), (0.9, -1.3), (1.6, 2.1)):
        z = 2j * mp.mpf(p) / mp.mpf(gamma)
        mg.append({"gamma": gamma, "p": p, "value": cplx(G(z))})
    out["gamma_imag"] = mg

    ds = []
    for gamma, (re, im) in ((1.2, (0.8, 0.3)), (1.2, (0.2, -1.5)), (0.7, (2.9, 0.4)),
                            (1.7, (1.0, 2.0)), (1.0, (1.9, -0.6)), (0.45, (0.05, 0.1))):
        ds.append({"gamma": gamma, "x": {"re": re, "im": im},
                   "log": cplx(log_double_sine(mp.mpc(re, im), gamma))})
    out["double_sine"] = ds

    lg = []
    for re, im in ((0.5, 0.0), (3.7, -2.2), (-2.4, 0.6), (0.02, 15.0), (25.0, 3.0), (-7.5, -0.1)):
        lg.append({"z": {"re": re, "im": im}, "value": cplx(mp.loggamma(mp.mpc(re, im)))})
    out["lngamma"] = lg

    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
