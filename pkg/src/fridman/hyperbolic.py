"""Poincaré metrics, Möbius isometries and displacement formulas.

Points are plain Python ``complex`` numbers.  The disk model uses the metric
with density ``2/(1-|z|^2)``, the half-plane model density ``1/Im w``; both
have curvature -1 and the Cayley map ``w -> (w-i)/(w+i)`` is an isometry
between them.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import InitVar, dataclass

from .errors import EllipticUnsupported, ModelMismatch, OutOfDomain, PoleHit

__all__ = [
    "Model",
    "Kind",
    "MobiusMap",
    "rho_disk",
    "rho_halfplane",
    "rho",
    "sinh_half_rho",
    "cayley_to_disk",
    "cayley_to_halfplane",
    "apply",
    "compose",
    "inverse",
    "classify",
    "fixed_points",
    "to_disk_map",
    "translation_half_length",
    "sinh_half_displacement",
    "sinh_half_displacement_closed_form",
    "tanh_quarter",
    "tanh_quarter_from_sinh_half",
]

DISK_EDGE = 1e-15
HALFPLANE_EDGE = 1e-300
POLE_EPS = 1e-300
PARABOLIC_BAND = 1e-10
IDENTITY_EPS = 1e-12
_REAL_EPS = 1e-12
_BOUNDARY_EPS = 1e-10


class Model(enum.Enum):
    DISK = "disk"
    HALFPLANE = "halfplane"


class Kind(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def _check_disk(z):
    if not abs(z) < 1.0 - DISK_EDGE:
        raise OutOfDomain(f"{z!r} is not inside the unit disk")


def _check_halfplane(w):
    if not w.imag > HALFPLANE_EDGE:
        raise OutOfDomain(f"{w!r} is not in the upper half-plane")


def _one_minus_sq(z):
    # 1 - |z|^2 without the cancellation of the naive form near |z| = 1
    m = abs(z)
    return (1.0 - m) * (1.0 + m)


def check_point(model: Model, p: complex) -> complex:
    p = complex(p)
    if model is Model.DISK:
        _check_disk(p)
    else:
        _check_halfplane(p)
    return p


# -- metrics -----------------------------------------------------------------

def rho_disk(z1: complex, z2: complex) -> float:
    """Poincaré distance in the unit disk.

    Uses ``arccosh(1 + 2|z1-z2|^2 / ((1-|z1|^2)(1-|z2|^2)))``, evaluated as
    ``log1p(x + sqrt(x(x+2)))`` so that short distances keep full precision.
    """
    z1, z2 = complex(z1), complex(z2)
    _check_disk(z1)
    _check_disk(z2)
    x = 2.0 * abs(z1 - z2) ** 2 / (_one_minus_sq(z1) * _one_minus_sq(z2))
    return math.log1p(x + math.sqrt(x * (x + 2.0)))


def rho_halfplane(w1: complex, w2: complex) -> float:
    w1, w2 = complex(w1), complex(w2)
    _check_halfplane(w1)
    _check_halfplane(w2)
    return 2.0 * math.asinh(abs(w1 - w2) / (2.0 * math.sqrt(w1.imag * w2.imag)))


def rho(model: Model, p: complex, q: complex) -> float:
    return rho_disk(p, q) if model is Model.DISK else rho_halfplane(p, q)


def sinh_half_rho(model: Model, p: complex, q: complex) -> float:
    """``sinh(rho(p, q)/2)`` computed without going through ``rho``."""
    p, q = check_point(model, p), check_point(model, q)
    if model is Model.DISK:
        return abs(p - q) / math.sqrt(_one_minus_sq(p) * _one_minus_sq(q))
    return abs(p - q) / (2.0 * math.sqrt(p.imag * q.imag))


def cayley_to_disk(w: complex) -> complex:
    w = complex(w)
    _check_halfplane(w)
    return (w - 1j) / (w + 1j)


def cayley_to_halfplane(z: complex) -> complex:
    z = complex(z)
    _check_disk(z)
    return 1j * (1.0 + z) / (1.0 - z)


# -- Möbius maps -------------------------------------------------------------

@dataclass(frozen=True)
class MobiusMap:
    """``p -> (a p + b)/(c p + d)`` acting isometrically on one model.

    Coefficients are rescaled on construction so that ``ad - bc = 1``.  For
    the half-plane the normalized coefficients must be real; for the disk the
    map must send the disk onto itself.  ``validate=False`` skips the model
    checks (used internally for products of already-validated maps, whose
    coefficients can be too large for the boundary test to be meaningful).
    """

    a: complex
    b: complex
    c: complex
    d: complex
    model: Model = Model.DISK
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if det == 0 or not cmath.isfinite(det):
            raise ValueError(f"degenerate Möbius coefficients (det = {det!r})")
        s = cmath.sqrt(det)
        a, b, c, d = a / s, b / s, c / s, d / s
        if self.model is Model.HALFPLANE:
            if validate and max(abs(x.imag) for x in (a, b, c, d)) >= _REAL_EPS:
                raise ValueError(
                    "half-plane maps need real coefficients with positive determinant"
                )
            a, b, c, d = (complex(x.real) for x in (a, b, c, d))
        elif validate:
            if abs(d) == 0 or not abs(b / d) < 1.0:
                raise ValueError("map does not send 0 inside the unit disk")
            for p in (1.0, 1j, -1.0):
                den = c * p + d
                if abs(den) < POLE_EPS or abs(abs((a * p + b) / den) - 1.0) > _BOUNDARY_EPS:
                    raise ValueError("map does not preserve the unit circle")
        for name, value in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls, model: Model = Model.DISK) -> "MobiusMap":
        return cls(1, 0, 0, 1, model)

    @classmethod
    def disk_automorphism(cls, center: complex, angle: float = 0.0) -> "MobiusMap":
        """``z -> e^{i angle} (z - center)/(1 - conj(center) z)``."""
        center = complex(center)
        _check_disk(center)
        u = cmath.exp(1j * angle)
        return cls(u, -u * center, -center.conjugate(), 1, Model.DISK)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def coefficients(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self, eps: float = IDENTITY_EPS) -> bool:
        return abs(self.b) < eps and abs(self.c) < eps and abs(self.a - self.d) < eps

    def __call__(self, p: complex) -> complex:
        return apply(self, p)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return compose(self, other)


def apply(m: MobiusMap, p: complex) -> complex:
    p = complex(p)
    den = m.c * p + m.d
    if abs(den) < POLE_EPS:
        raise PoleHit(f"{p!r} is a pole of the map")
    return (m.a * p + m.b) / den


def compose(m1: MobiusMap, m2: MobiusMap) -> MobiusMap:
    """The map ``p -> m1(m2(p))``."""
    if m1.model is not m2.model:
        raise ModelMismatch(f"cannot compose {m1.model.value} and {m2.model.value} maps")
    return MobiusMap(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
        m1.model,
        validate=False,
    )


def inverse(m: MobiusMap) -> MobiusMap:
    return MobiusMap(m.d, -m.b, -m.c, m.a, m.model, validate=False)


def classify(m: MobiusMap) -> Kind:
    if m.is_identity():
        return Kind.IDENTITY
    t = abs(m.trace)
    if abs(t - 2.0) <= PARABOLIC_BAND:
        return Kind.PARABOLIC
    return Kind.ELLIPTIC if t < 2.0 else Kind.HYPERBOLIC


def fixed_points(m: MobiusMap) -> tuple:
    """Fixed points in the extended plane (``math.inf`` stands for infinity).

    Returns one point for parabolic maps, two otherwise.
    """
    a, b, c, d = m.coefficients()
    parabolic = classify(m) is Kind.PARABOLIC
    if abs(c) < IDENTITY_EPS * max(1.0, abs(a), abs(d)):
        if parabolic:
            return (math.inf,)
        return (-b / (a - d), math.inf)
    disc = cmath.sqrt(m.trace ** 2 - 4.0)
    if parabolic:
        return ((a - d) / (2 * c),)
    return (((a - d) - disc) / (2 * c), ((a - d) + disc) / (2 * c))


_CAYLEY = MobiusMap(1, -1j, 1, 1j, Model.DISK, validate=False)


def to_disk_map(m: MobiusMap) -> MobiusMap:
    """Conjugate a half-plane map by the Cayley transform."""
    if m.model is Model.DISK:
        return m
    c_inv = inverse(_CAYLEY)
    return compose(_CAYLEY, compose(MobiusMap(*m.coefficients(), Model.DISK, validate=False), c_inv))


def translation_half_length(m: MobiusMap) -> float:
    """Half of the translation length of a hyperbolic map."""
    return math.acosh(abs(m.trace) / 2.0)


# -- displacement ------------------------------------------------------------

def _require_non_elliptic(m):
    kind = classify(m)
    if kind is Kind.ELLIPTIC:
        raise EllipticUnsupported("displacement formulas need a parabolic or hyperbolic map")
    return kind


def sinh_half_displacement(m: MobiusMap, w: complex) -> float:
    """``sinh(rho(w, m(w))/2)`` straight from the metric."""
    _require_non_elliptic(m)
    w = check_point(m.model, w)
    return sinh_half_rho(m.model, w, apply(m, w))


def _axis_foot(t1, t2, w):
    """Nearest point to ``w`` on the disk geodesic with endpoints t1, t2."""
    phi = MobiusMap(1, -t1, 1, -t2, Model.DISK, validate=False)
    p = -(t1 + t2)
    p = p / abs(p) if abs(p) > 1e-8 else 1j * t1
    u = abs(apply(phi, p)) / apply(phi, p)
    if (apply(phi, 0) * u).imag < 0:
        u = -u
    wh = apply(phi, w) * u
    foot_h = 1j * abs(wh)
    return apply(inverse(phi), foot_h / u)


def sinh_half_displacement_closed_form(m: MobiusMap, w: complex) -> float:
    """The same quantity from the classical closed forms in the disk model.

    Parabolic: ``c |w - t|^2 / (1 - |w|^2)`` with ``t`` the fixed point.
    Hyperbolic: ``cosh rho(w, axis) * sinh T`` with ``T`` the half
    translation length; the distance to the axis goes through the foot point
    ``a`` and ``cosh rho(w, a) = 1 + 2|w-a|^2 / ((1-|w|^2)(1-|a|^2))``.
    Half-plane inputs are transported by the Cayley map first.
    """
    kind = _require_non_elliptic(m)
    w = check_point(m.model, w)
    if m.model is Model.HALFPLANE:
        m, w = to_disk_map(m), cayley_to_disk(w)
    if kind is Kind.IDENTITY:
        return 0.0
    if kind is Kind.PARABOLIC:
        (t,) = fixed_points(m)
        return abs(m.c) * abs(w - t) ** 2 / _one_minus_sq(w)
    t1, t2 = fixed_points(m)
    foot = _axis_foot(t1, t2, w)
    cosh_dist = 1.0 + 2.0 * abs(w - foot) ** 2 / (_one_minus_sq(w) * _one_minus_sq(foot))
    return cosh_dist * math.sinh(translation_half_length(m))


def tanh_quarter_from_sinh_half(s: float) -> float:
    """``tanh(d/4)`` given ``s = sinh(d/2)``.

    Half-angle identity ``tanh(x/2) = (sqrt(1+sinh^2 x) - 1)/sinh x`` with the
    subtraction removed: ``s / (1 + sqrt(1 + s^2))``.
    """
    if s < 0:
        raise ValueError("sinh of a distance cannot be negative")
    return s / (1.0 + math.hypot(1.0, s))


def tanh_quarter(d: float, sinh_half: float | None = None) -> float:
    if d < 0:
        raise ValueError("distance must be non-negative")
    if sinh_half is not None:
        return tanh_quarter_from_sinh_half(sinh_half)
    return math.tanh(d / 4.0)
