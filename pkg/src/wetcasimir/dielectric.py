"""Dielectric response on the imaginary frequency axis.

Every model here is evaluated at omega = i*zeta with zeta in eV, where a
causal permittivity is real, >= 1 and non-increasing.  Metals use a Drude
model with frequency-dependent damping, rotated to the imaginary axis by a
numerical Kramers-Kronig integral; liquids use closed-form oscillator or
relaxation models; composites use the Bruggeman mixing rule.

Functions accept scalars or numpy arrays for ``zeta`` / ``omega`` and return
the same shape.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .quadrature import QuadratureSpec, tanh_sinh

DEFAULT_QUAD = QuadratureSpec()


def _out(value, like):
    """Return a Python float for scalar input, an array otherwise."""
    if np.ndim(like) == 0:
        return float(np.asarray(value).reshape(()))
    return value


@dataclasses.dataclass(frozen=True)
class DrudeParams:
    """Drude parameters of a metal measured in a given ambient medium.

    ``omega_p_sq`` in eV^2, ``gamma0`` in eV, ``beta`` in 1/eV; the damping
    is gamma(omega) = gamma0 + beta*omega**2.  ``ambient_index`` is metadata.
    """

    eps_inf: float
    omega_p_sq: float
    gamma0: float
    beta: float
    ambient_index: float = 1.0

    def __post_init__(self):
        if not self.eps_inf >= 1:
            raise DomainError(f"eps_inf must be >= 1, got {self.eps_inf}")
        if not self.omega_p_sq >= 0:
            raise DomainError(f"omega_p_sq must be >= 0, got {self.omega_p_sq}")
        if not self.gamma0 > 0:
            raise DomainError(f"gamma0 must be > 0, got {self.gamma0}")
        if not self.beta >= 0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")
        if not self.ambient_index >= 1:
            raise DomainError(
                f"ambient_index must be >= 1, got {self.ambient_index}")

    def breakpoints(self):
        """Frequencies (eV) where eps'' changes regime."""
        pts = [self.gamma0]
        if self.beta > 0:
            pts += [math.sqrt(self.gamma0 / self.beta), 1.0 / self.beta]
        return tuple(pts)


@dataclasses.dataclass(frozen=True)
class NinhamParams:
    """Microwave relaxation plus Lorentz-type oscillators.

    ``tau`` in 1/eV; ``terms`` holds ``(C, omega, g)`` triples with the
    resonance ``omega`` and damping ``g`` in eV.
    """

    B: float
    tau: float
    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms",
                           tuple(tuple(float(v) for v in t) for t in self.terms))
        if not self.B >= 0:
            raise DomainError(f"B must be >= 0, got {self.B}")
        if not self.tau > 0:
            raise DomainError(f"tau must be > 0, got {self.tau}")
        for i, term in enumerate(self.terms):
            if len(term) != 3:
                raise DomainError(f"term {i} must be (C, omega, g)")
            c, w, g = term
            if not (c >= 0 and w > 0 and g >= 0):
                raise DomainError(
                    f"term {i} needs C >= 0, omega > 0, g >= 0, got {term}")


@dataclasses.dataclass(frozen=True)
class ColeColeParams:
    eps_static: float
    eps_high: float
    tau: float
    alpha: float

    def __post_init__(self):
        if not self.eps_high >= 1:
            raise DomainError(f"eps_high must be >= 1, got {self.eps_high}")
        if not self.eps_static >= self.eps_high:
            raise DomainError(
                f"eps_static must be >= eps_high, got {self.eps_static}")
        if not self.tau > 0:
            raise DomainError(f"tau must be > 0, got {self.tau}")
        if not 0 <= self.alpha < 1:
            raise DomainError(f"alpha must lie in [0, 1), got {self.alpha}")


# --- closed forms and the Kramers-Kronig rotation -------------------------

def drude_damping(p: DrudeParams, omega):
    """gamma(omega) = gamma0 + beta * omega**2, in eV."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise DomainError("omega must be >= 0")
    return _out(p.gamma0 + p.beta * omega * omega, omega)


def drude_eps_imag(p: DrudeParams, omega):
    """Imaginary part of the Drude permittivity on the real axis.

    eps''(omega) = omega_p^2 gamma / (omega (omega^2 + gamma^2)) with the
    frequency-dependent damping.  Undefined at omega = 0.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise DomainError("eps'' of a Drude metal is singular at omega = 0")
    gamma = p.gamma0 + p.beta * omega * omega
    return _out(p.omega_p_sq * gamma / (omega * (omega * omega + gamma * gamma)),
                omega)


def kk_rotate(eps_imag: Callable, eps_inf: float, zeta,
              quad: QuadratureSpec = DEFAULT_QUAD,
              breakpoints: Sequence[float] = ()):
    r"""Rotate a permittivity to the imaginary axis.

    Computes

    .. math::
        \epsilon(i\zeta) = \epsilon_\infty + \frac{2}{\pi}\int_0^\infty
            \frac{\omega\,\epsilon''(\omega)}{\omega^2 + \zeta^2}\,d\omega

    The half-line is cut at ``zeta`` and at every entry of ``breakpoints``.
    The first piece uses tanh-sinh in omega, the interior pieces tanh-sinh
    in log(omega), and the unbounded piece tanh-sinh in u = 1/omega, so the
    integrand is never evaluated at 0 or infinity.

    Parameters
    ----------
    eps_imag : callable
        Vectorised eps''(omega) for omega > 0.
    eps_inf : float
        High-frequency offset.
    zeta : float or ndarray
        Imaginary frequencies, eV, all > 0.
    quad : QuadratureSpec
        ``rel_tol`` applies to each piece; ``max_evals`` is the per-piece
        node budget.
    breakpoints : sequence of float
        Extra cut points (eV) where eps'' changes scale.

    Raises
    ------
    DomainError
        If any ``zeta <= 0``.
    ConvergenceError
        If a piece exhausts its node budget.
    """
    z = np.atleast_1d(np.asarray(zeta, dtype=float))
    if np.any(~(z > 0)) or np.any(~np.isfinite(z)):
        raise DomainError("Kramers-Kronig rotation needs finite zeta > 0")
    hints = [b for b in breakpoints if b > 0 and math.isfinite(b)]
    cuts = np.sort(np.column_stack([z] + [np.full_like(z, b) for b in hints]),
                   axis=1)
    zz = z[:, None]

    def g(w):
        return w * eps_imag(w) / (w * w + zz * zz)

    kw = dict(rel_tol=quad.rel_tol, max_evals=quad.max_evals)
    total = tanh_sinh(g, 0.0, cuts[:, 0], **kw).value
    for i in range(cuts.shape[1] - 1):
        lo, hi = np.log(cuts[:, i]), np.log(cuts[:, i + 1])

        def g_log(v):
            w = np.exp(v)
            return g(w) * w

        total = total + tanh_sinh(g_log, lo, hi, **kw).value

    def g_tail(u):
        return g(1.0 / u) / (u * u)

    total = total + tanh_sinh(g_tail, 0.0, 1.0 / cuts[:, -1], **kw).value
    return _out(eps_inf + (2.0 / math.pi) * total, zeta)


def drude_eps_izeta(p: DrudeParams, zeta, quad: QuadratureSpec = DEFAULT_QUAD):
    """Drude permittivity at imaginary frequency ``zeta`` (eV, > 0)."""
    return kk_rotate(lambda w: drude_eps_imag(p, w), p.eps_inf, zeta, quad,
                     breakpoints=p.breakpoints())


def drude_eps_izeta_closed(p: DrudeParams, zeta):
    """Exact rotation for constant damping; ignores ``beta``."""
    zeta = np.asarray(zeta, dtype=float)
    return _out(p.eps_inf + p.omega_p_sq / (zeta * (zeta + p.gamma0)), zeta)


def ninham_eps_izeta(p: NinhamParams, zeta):
    zeta = np.asarray(zeta, dtype=float)
    if np.any(zeta < 0):
        raise DomainError("zeta must be >= 0")
    eps = 1.0 + p.B / (1.0 + zeta * p.tau)
    for c, w, g in p.terms:
        eps = eps + c / (1.0 + (zeta / w) ** 2 + g * zeta / (w * w))
    return _out(eps, zeta)


def cole_cole_eps_izeta(p: ColeColeParams, zeta, paper_literal: bool = False):
    """Single-relaxation Cole-Cole permittivity at imaginary frequency.

    By default eps(i*0) = eps_static and eps(i*inf) = eps_high.  With
    ``paper_literal`` the two permittivities swap roles, which gives
    eps(i*0) = eps_high and a response that grows with zeta.
    """
    zeta = np.asarray(zeta, dtype=float)
    if np.any(zeta < 0):
        raise DomainError("zeta must be >= 0")
    lo, hi = p.eps_high, p.eps_static
    if paper_literal:
        lo, hi = hi, lo
    return _out(lo + (hi - lo) / (1.0 + (zeta * p.tau) ** (1.0 - p.alpha)),
                zeta)


def bruggeman_mix(eps_metal, eps_fluid, f_metal):
    """Bruggeman effective permittivity of a two-phase composite.

    Returns the positive root of
    2e^2 + e[eps_M(1 - 3f) + eps_F(3f - 2)] - eps_M eps_F = 0.
    The product of the roots is negative, so exactly one is positive.
    """
    em = np.asarray(eps_metal, dtype=float)
    ef = np.asarray(eps_fluid, dtype=float)
    f = np.asarray(f_metal, dtype=float)
    if np.any(~(em > 0)) or np.any(~(ef > 0)):
        raise DomainError("Bruggeman mixing needs positive permittivities")
    if np.any(~((f >= 0) & (f <= 1))):
        raise DomainError("volume fraction must lie in [0, 1]")
    b = em * (1 - 3 * f) + ef * (3 * f - 2)
    prod = em * ef
    root = np.sqrt(b * b + 8 * prod)
    # pick the cancellation-free form of the positive root
    with np.errstate(divide="ignore", invalid="ignore"):
        e = np.where(b <= 0, (root - b) / 4, 2 * prod / (b + root))
    # one Newton step on the quadratic
    e = e - (2 * e * e + b * e - prod) / (4 * e + b)
    return _out(e, e)


def bruggeman_residual(eps_eff, eps_metal, eps_fluid, f_metal):
    """Left-hand side of the Bruggeman condition at ``eps_eff``."""
    return (f_metal * (eps_metal - eps_eff) / (eps_metal + 2 * eps_eff)
            + (1 - f_metal) * (eps_fluid - eps_eff) / (eps_fluid + 2 * eps_eff))


# --- model variants --------------------------------------------------------

class DielectricModel:
    """Base for permittivity models evaluable at imaginary frequency."""

    def eval(self, zeta, quad: QuadratureSpec = DEFAULT_QUAD):
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__.lower()


def _check_closed_zeta(zeta):
    zeta = np.asarray(zeta, dtype=float)
    if np.any(~(zeta >= 0)):
        raise DomainError("zeta must be >= 0")
    return zeta


@dataclasses.dataclass(frozen=True)
class Vacuum(DielectricModel):
    def eval(self, zeta, quad=DEFAULT_QUAD):
        zeta = _check_closed_zeta(zeta)
        return _out(np.ones_like(zeta), zeta)


@dataclasses.dataclass(frozen=True)
class Constant(DielectricModel):
    value: float

    def __post_init__(self):
        if not self.value >= 1:
            raise DomainError(f"constant permittivity must be >= 1, got {self.value}")

    def eval(self, zeta, quad=DEFAULT_QUAD):
        zeta = _check_closed_zeta(zeta)
        return _out(np.full_like(zeta, self.value), zeta)

    def describe(self):
        return f"constant({self.value:g})"


@dataclasses.dataclass(frozen=True)
class Drude(DielectricModel):
    params: DrudeParams

    def eval(self, zeta, quad=DEFAULT_QUAD):
        return drude_eps_izeta(self.params, zeta, quad)

    def describe(self):
        return f"drude(n={self.params.ambient_index:g})"


@dataclasses.dataclass(frozen=True)
class Ninham(DielectricModel):
    params: NinhamParams

    def eval(self, zeta, quad=DEFAULT_QUAD):
        return ninham_eps_izeta(self.params, zeta)


@dataclasses.dataclass(frozen=True)
class ColeCole(DielectricModel):
    params: ColeColeParams
    paper_literal: bool = False

    def eval(self, zeta, quad=DEFAULT_QUAD):
        return cole_cole_eps_izeta(self.params, zeta, self.paper_literal)


@dataclasses.dataclass(frozen=True)
class BruggemanComposite(DielectricModel):
    metal: DielectricModel
    fluid: DielectricModel
    f_metal: float

    def __post_init__(self):
        if not 0 <= self.f_metal <= 1:
            raise DomainError(f"f_metal must lie in [0, 1], got {self.f_metal}")

    def eval(self, zeta, quad=DEFAULT_QUAD):
        em = self.metal.eval(zeta, quad)
        ef = self.fluid.eval(zeta, quad)
        return _out(bruggeman_mix(em, ef, self.f_metal), zeta)

    def describe(self):
        return (f"bruggeman({self.metal.describe()}, {self.fluid.describe()}, "
                f"f={self.f_metal:g})")


@dataclasses.dataclass(frozen=True)
class Tabulated(DielectricModel):
    """Samples of eps(i*zeta), interpolated linearly or in log-log space.

    Evaluation outside the sampled range raises ``DomainError``.
    """

    points: tuple
    interpolation: str = "linear"

    def __post_init__(self):
        pts = tuple((float(z), float(e)) for z, e in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise DomainError("tabulated model needs at least two samples")
        z = np.array([p[0] for p in pts])
        e = np.array([p[1] for p in pts])
        if np.any(np.diff(z) <= 0):
            raise DomainError("tabulated zeta must be strictly increasing")
        if np.any(e < 1):
            raise DomainError("tabulated permittivities must be >= 1")
        if self.interpolation not in ("linear", "loglog"):
            raise DomainError(f"unknown interpolation {self.interpolation!r}")
        if self.interpolation == "loglog" and z[0] <= 0:
            raise DomainError("log-log interpolation needs zeta > 0")

    def eval(self, zeta, quad=DEFAULT_QUAD):
        zq = np.asarray(zeta, dtype=float)
        z = np.array([p[0] for p in self.points])
        e = np.array([p[1] for p in self.points])
        if np.any(zq < z[0]) or np.any(zq > z[-1]):
            raise DomainError(
                f"zeta outside tabulated range [{z[0]:g}, {z[-1]:g}] eV")
        if self.interpolation == "linear":
            out = np.interp(zq, z, e)
        else:
            out = np.exp(np.interp(np.log(zq), np.log(z), np.log(e)))
        return _out(out, zeta)


def eval_model(m: DielectricModel, zeta, quad: QuadratureSpec = DEFAULT_QUAD):
    """Evaluate any model at imaginary frequency ``zeta`` (eV)."""
    return m.eval(zeta, quad)
