"""Zero-temperature Lifshitz pressure between two slabs across a fluid gap.

With kappa = zeta/(hbar c) the imaginary wavenumber, the pressure is

    F = hbar c / (2 pi^2) sum_{s,p} int dkappa int dQ Q k3 R e^{-2 k3 d} / (1 - R e^{-2 k3 d})

where R = r13 r23 and k_m = sqrt(eps_m kappa^2 + Q^2).  Attraction is
positive.  Internally both integration variables are scaled by 2d:
x = 2 d kappa and y = 2 d k3, so Q dQ k3 becomes y^2 dy / (2d)^3 and the
inner integral runs over y >= x sqrt(eps3) with weight exp(-y).  The inner
integral is tanh-sinh in s = exp(-(y - y0)) on (0, 1), batched over all
outer nodes; the outer one is exp-sinh in x.
"""
from __future__ import annotations

import concurrent.futures
import dataclasses
import enum
import math
from typing import Iterable, Sequence

import numpy as np

from .constants import EV_PER_NM3_IN_PA, HBAR_C
from .dielectric import DielectricModel, Drude, DrudeParams
from .errors import ConvergenceError, DomainError, SeparationError
from .quadrature import QuadratureSpec, exp_sinh, tanh_sinh

DEFAULT_QUAD = QuadratureSpec()

# 2 * zeta(3): bound on int_0^inf y^2 e^-y / (1 - e^-y) dy, per polarization
_TWO_ZETA3 = 2.0 * 1.2020569031595942

PRESSURE = "pressure_Pa"
DELTA = "delta_percent"


class Polarization(enum.Enum):
    S = "s"
    P = "p"


@dataclasses.dataclass(frozen=True)
class LayerStack:
    """Slab 1 | gap | slab 2, with the gap width in nm."""

    eps1: DielectricModel
    eps2: DielectricModel
    eps3: DielectricModel
    separation: float

    def __post_init__(self):
        if not self.separation > 0:
            raise DomainError(f"separation must be > 0 nm, got {self.separation}")

    def at(self, separation: float) -> "LayerStack":
        return dataclasses.replace(self, separation=separation)

    def describe(self) -> str:
        return (f"{self.eps1.describe()} | {self.eps3.describe()} | "
                f"{self.eps2.describe()}")


@dataclasses.dataclass(frozen=True)
class ForceCurve:
    """Ordered (separation, value) records of one kind."""

    separations: tuple
    values: tuple
    value_kind: str = PRESSURE
    metadata: dict = dataclasses.field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "separations",
                           tuple(float(d) for d in self.separations))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.separations) != len(self.values):
            raise ValueError("separations and values differ in length")
        if self.value_kind not in (PRESSURE, DELTA):
            raise ValueError(f"unknown value kind {self.value_kind!r}")
        if any(b <= a for a, b in zip(self.separations, self.separations[1:])):
            raise ValueError("separations must be strictly increasing")

    def __len__(self):
        return len(self.separations)

    @property
    def records(self):
        return list(zip(self.separations, self.values))


# --- building blocks ------------------------------------------------------

def kz(eps, zeta, Q):
    """Normal wavenumber sqrt(eps (zeta/hbar c)^2 + Q^2) in 1/nm."""
    kappa = np.asarray(zeta, dtype=float) / HBAR_C
    return np.sqrt(eps * kappa * kappa + np.asarray(Q, dtype=float) ** 2)


def _reflection(pol, eps_i, eps_j, kappa, k_j):
    """Reflection coefficient written so that eps_i == eps_j gives exactly 0.

    Uses k_i^2 - k_j^2 = (eps_i - eps_j) kappa^2; any consistent length
    scale for ``kappa`` and ``k_j`` works.
    """
    de = eps_i - eps_j
    # exact value is >= eps_i kappa^2; rounding can dip below 0 when eps_j >> eps_i
    k_i = np.sqrt(np.maximum(k_j * k_j + de * kappa * kappa, 0.0))
    if pol is Polarization.S:
        return de * kappa * kappa / (k_i + k_j) ** 2
    return (de * (eps_j * eps_j * kappa * kappa - (eps_i + eps_j) * k_j * k_j)
            / (eps_j * k_i + eps_i * k_j) ** 2)


def fresnel(pol: Polarization, eps_i, eps_j, zeta, Q):
    """Imaginary-axis Fresnel coefficient between media i and j.

    r_s = (k_i - k_j)/(k_i + k_j), r_p = (eps_j k_i - eps_i k_j)/(eps_j k_i + eps_i k_j).
    """
    kappa = np.asarray(zeta, dtype=float) / HBAR_C
    if np.any((kappa == 0) & (np.asarray(Q) == 0)):
        raise DomainError("reflection undefined at zeta = 0 and Q = 0")
    return _reflection(pol, eps_i, eps_j, kappa, kz(eps_j, zeta, Q))


def integrand(stack: LayerStack, pol: Polarization, zeta, Q,
              quad: QuadratureSpec = DEFAULT_QUAD):
    """Q k3 R e^{-2 k3 d} / (1 - R e^{-2 k3 d}) in 1/nm^2."""
    e1 = stack.eps1.eval(zeta, quad)
    e2 = stack.eps2.eval(zeta, quad)
    e3 = stack.eps3.eval(zeta, quad)
    k3 = kz(e3, zeta, Q)
    kappa = np.asarray(zeta, dtype=float) / HBAR_C
    rr = _reflection(pol, e1, e3, kappa, k3) * _reflection(pol, e2, e3, kappa, k3)
    damp = np.exp(-2.0 * k3 * stack.separation)
    return Q * k3 * rr * damp / (1.0 - rr * damp)


def _inner(x, e1, e2, e3, rel_tol, max_evals):
    """Sum over polarizations of int_{y0}^inf y^2 R e^-y/(1 - R e^-y) dy.

    Returned without the factor exp(-y0), which the caller applies.
    """
    y0 = (x * np.sqrt(e3))[:, None]
    xx = x[:, None]
    a1, a2, a3 = e1[:, None], e2[:, None], e3[:, None]

    def h(s):
        y = y0 - np.log(s)
        damp = s * np.exp(-y0)
        acc = 0.0
        for pol in Polarization:
            rr = _reflection(pol, a1, a3, xx, y) * _reflection(pol, a2, a3, xx, y)
            acc = acc + rr / (1.0 - rr * damp)
        return y * y * acc

    return tanh_sinh(h, np.zeros_like(x), np.ones_like(x), rel_tol=rel_tol,
                     max_evals=max_evals).value


def _prefactor_pa(d):
    return HBAR_C / (2.0 * math.pi ** 2) / (2.0 * d) ** 4 * EV_PER_NM3_IN_PA


def force_per_area(stack: LayerStack, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Lifshitz pressure between the slabs, in Pa (attraction positive).

    Parameters
    ----------
    stack : LayerStack
        The three media and the gap width.
    quad : QuadratureSpec
        ``rel_tol`` / ``abs_tol`` (Pa) are the outer convergence targets;
        the outer rule is refined by step halving until two successive
        levels agree.

    Raises
    ------
    ConvergenceError
        If either the outer or the inner integral fails to converge.
    """
    d = stack.separation
    pref = _prefactor_pa(d)
    abs_dimless = quad.abs_tol / pref
    x_max = quad.kappa_cutoff
    x_min = min(max(0.01 * abs_dimless / (2 * _TWO_ZETA3), 1e-30),
                1e-3 * quad.rel_tol)
    inner_tol = 0.1 * quad.rel_tol

    def outer(x):
        x = x[0]
        zeta = HBAR_C * x / (2.0 * d)
        e1 = np.asarray(stack.eps1.eval(zeta, quad), dtype=float)
        e2 = np.asarray(stack.eps2.eval(zeta, quad), dtype=float)
        e3 = np.asarray(stack.eps3.eval(zeta, quad), dtype=float)
        inner = _inner(x, e1, e2, e3, inner_tol, quad.max_evals)
        return (np.exp(-x * np.sqrt(e3)) * inner)[None, :]

    res = exp_sinh(outer, x_min, x_max, rel_tol=quad.rel_tol,
                   abs_tol=abs_dimless, max_evals=quad.max_evals)
    # |R| <= 1 bounds for the parts of the x axis left out
    left = x_min * 2 * _TWO_ZETA3
    right = (2 * math.exp(-x_max) * (x_max ** 2 + 4 * x_max + 6)
             / (1 - math.exp(-x_max)))
    if left + right > max(quad.rel_tol * abs(res.value), abs_dimless):
        raise ConvergenceError(
            f"truncation bound {left + right:.3g} exceeds tolerance")
    return float(res.value) * pref


def ideal_mirror_force(d) -> float:
    """Perfect-conductor Casimir pressure pi^2 hbar c / (240 d^4) in Pa."""
    if not d > 0:
        raise DomainError("separation must be > 0")
    return math.pi ** 2 * HBAR_C / (240.0 * d ** 4) * EV_PER_NM3_IN_PA


def percent_difference(f_dry: float, f_wet: float) -> float:
    """|(F_dry - F_wet) / F_dry| * 100."""
    if f_dry == 0:
        raise ZeroDivisionError("reference force is zero")
    return abs((f_dry - f_wet) / f_dry) * 100.0


def _check_grid(separations):
    seps = [float(d) for d in separations]
    if any(not d > 0 for d in seps):
        raise DomainError("separations must be > 0")
    if any(b <= a for a, b in zip(seps, seps[1:])):
        raise DomainError("separations must be strictly increasing")
    return seps


def _map_points(fn, seps, workers):
    def guarded(d):
        try:
            return fn(d)
        except Exception as exc:
            raise SeparationError(d, exc) from exc

    if workers <= 1 or len(seps) <= 1:
        return [guarded(d) for d in seps]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(guarded, seps))


def force_curve(template: LayerStack, separations: Iterable[float],
                quad: QuadratureSpec = DEFAULT_QUAD, workers: int = 1) -> ForceCurve:
    """Pressure at each separation, keeping the media of ``template``.

    Points are independent, so ``workers > 1`` evaluates them on a thread
    pool; output order and values do not depend on ``workers``.
    """
    seps = _check_grid(separations)
    values = _map_points(lambda d: force_per_area(template.at(d), quad),
                         seps, workers)
    return ForceCurve(seps, values, PRESSURE,
                      {"stack": template.describe(), "quad": quad.digest()})


def delta_curve(liquid: DielectricModel, dry_params: DrudeParams,
                wet_params: DrudeParams, separations: Sequence[float],
                quad: QuadratureSpec = DEFAULT_QUAD,
                workers: int = 1) -> ForceCurve:
    """Percent change in pressure when dry Drude parameters become wet ones.

    Both forces use symmetric metal slabs across the same ``liquid`` gap.
    """
    seps = _check_grid(separations)
    dry = Drude(dry_params)
    wet = Drude(wet_params)

    def point(d):
        f_dry = force_per_area(LayerStack(dry, dry, liquid, d), quad)
        if wet_params == dry_params:
            return 0.0
        f_wet = force_per_area(LayerStack(wet, wet, liquid, d), quad)
        return percent_difference(f_dry, f_wet)

    values = _map_points(point, seps, workers)
    desc = (f"metal n={dry_params.ambient_index:g} vs "
            f"n={wet_params.ambient_index:g} in {liquid.describe()}")
    return ForceCurve(seps, values, DELTA, {"stack": desc, "quad": quad.digest()})
