"""Independent reference values, computed without the library's quadrature.

Run ``python tests/oracles/brute_force.py`` to regenerate
``tests/golden_values.json``.  Everything here is deliberately naive:

* Au permittivity at imaginary frequency: scipy.integrate.quad on the raw
  Kramers-Kronig integral.
* Water: the oscillator formula written out again from the material file
  numbers (parsed by hand, not by the library).
* Pressure: a 2000 x 2000 midpoint grid in (kappa, Q), each mapped from (0, 1)
  by v -> v / (1 - v) / (2 d), with the textbook Fresnel quotients.
"""
import json
import math
import pathlib
import sys

import numpy as np
from scipy.integrate import quad

HBAR_C = 197.3269804
PA = 1.602176634e8
ROOT = pathlib.Path(__file__).resolve().parents[2]
MAT = ROOT / "src" / "wetcasimir" / "data" / "materials"

AU_DRY = (7.76, 71.53, 0.0041, 0.0123)
AU_WATER = (8.71, 79.97, 0.0049, 0.0153)


def au_eps(params, zeta):
    eps_inf, wp2, g0, beta = params

    def f(w):
        g = g0 + beta * w * w
        return wp2 * g / ((w * w + g * g) * (w * w + zeta * zeta))

    pts = sorted({g0, zeta, math.sqrt(g0 / beta), 1 / beta})
    total = 0.0
    edges = [0.0] + pts
    for a, b in zip(edges, edges[1:]):
        total += quad(f, a, b, epsabs=0, epsrel=1e-12, limit=500)[0]
    total += quad(f, edges[-1], np.inf, epsabs=0, epsrel=1e-12, limit=500)[0]
    return eps_inf + 2 / math.pi * total


def water_numbers():
    B = tau = None
    terms = []
    for line in (MAT / "water.mat").read_text().splitlines():
        if line.startswith("B ="):
            B = float(line.split("=")[1])
        elif line.startswith("tau ="):
            tau = float(line.split("=")[1])
        elif line.startswith("term ="):
            terms.append([float(t) for t in line.split("=")[1].split(",")])
    return B, tau, terms


def water_eps(zeta):
    B, tau, terms = water_numbers()
    out = 1 + B / (1 + zeta * tau)
    for c, w, g in terms:
        out = out + c / (1 + (zeta / w) ** 2 + g * zeta / w ** 2)
    return out


def brute_pressure(metal, d, n=2000):
    v = (np.arange(n) + 0.5) / n
    scale = 1 / (2 * d)
    t = v / (1 - v) * scale
    jac = scale / (1 - v) ** 2
    kappa, Q = t[:, None], t[None, :]
    wk, wq = (jac / n)[:, None], (jac / n)[None, :]
    zeta = t * HBAR_C
    e1 = np.array([au_eps(metal, z) for z in zeta])[:, None]
    e3 = water_eps(zeta)[:, None]
    k1 = np.sqrt(e1 * kappa ** 2 + Q ** 2)
    k3 = np.sqrt(e3 * kappa ** 2 + Q ** 2)
    rs = (k1 - k3) / (k1 + k3)
    rp = (e3 * k1 - e1 * k3) / (e3 * k1 + e1 * k3)
    damp = np.exp(-2 * k3 * d)
    total = 0.0
    for r in (rs, rp):
        total += np.sum(wk * wq * Q * k3 * r * r * damp / (1 - r * r * damp))
    return HBAR_C / (2 * math.pi ** 2) * total * PA


def main():
    golden = {
        "kk_table1_n1_zeta1": au_eps(AU_DRY, 1.0),
        "au_water_au": {str(d): brute_pressure(AU_WATER, float(d))
                        for d in (10, 50, 100)},
    }
    out = ROOT / "tests" / "golden_values.json"
    out.write_text(json.dumps(golden, indent=2) + "\n")
    json.dump(golden, sys.stdout, indent=2)


if __name__ == "__main__":
    main()
