"""Closed-form invariants of the annulus and of punctured disks.

Conventions: ``A_r = {r < |z| < 1}`` and ``λ = exp(π² / ln r)``.  All
Fridman functions are reported on the ``tanh(radius/2)`` scale, so every
invariant lies in ``(0, 1]``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import InvalidArgument, NumericalConsistencyError, OutOfDomain, UnsupportedDomain
from .numerics import DEFAULT_TOLERANCE, Tolerance, eval_product

__all__ = [
    "Annulus",
    "PuncturedDisk",
    "MetricKind",
    "InvariantSample",
    "squeezing_annulus",
    "fridman_k_annulus",
    "fridman_k_annulus_literal",
    "injectivity_radius_annulus",
    "annulus_covering_point",
    "sk_prime",
    "fridman_c_annulus_product",
    "fridman_c_annulus_prime",
    "simha_F",
    "simha_F_prime",
    "cara_distance_annulus",
    "slit_disk_map",
    "squeezing_punctured",
    "fridman_c_punctured",
    "fridman_k_punctured",
    "punctured_covering_point",
    "quotient_invariant",
    "sample",
    "radial_grid",
]

EDGE = 1e-12
IMAG_RESIDUE = 1e-10


@dataclass(frozen=True)
class Annulus:
    r: float

    def __post_init__(self):
        r = float(self.r)
        if not EDGE < r < 1.0 - EDGE:
            raise InvalidArgument(f"annulus radius must lie in (1e-12, 1 - 1e-12), got {r!r}")
        object.__setattr__(self, "r", r)

    @property
    def lam(self) -> float:
        return math.exp(math.pi ** 2 / math.log(self.r))

    def contains(self, z: complex) -> bool:
        m = abs(z)
        return self.r * (1.0 + EDGE) < m < 1.0 - EDGE

    def check(self, z: complex) -> complex:
        z = complex(z)
        if not self.contains(z):
            raise OutOfDomain(f"|z| = {abs(z)!r} is not inside the annulus ({self.r!r}, 1)")
        return z


@dataclass(frozen=True)
class PuncturedDisk:
    punctures: tuple = (0j,)

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.punctures)
        if not pts:
            raise InvalidArgument("at least one puncture is required")
        for p in pts:
            if not abs(p) < 1.0 - EDGE:
                raise InvalidArgument(f"puncture {p!r} is not inside the unit disk")
        for i in range(len(pts)):
            for j in range(i):
                if abs(pts[i] - pts[j]) <= EDGE:
                    raise InvalidArgument(f"punctures {pts[j]!r} and {pts[i]!r} coincide")
        object.__setattr__(self, "punctures", pts)

    def check(self, z: complex) -> complex:
        z = complex(z)
        if not abs(z) < 1.0:
            raise OutOfDomain(f"{z!r} is not inside the unit disk")
        if any(z == p for p in self.punctures):
            raise OutOfDomain(f"{z!r} is a puncture")
        return z


class MetricKind(enum.Enum):
    KOBAYASHI = "k"
    CARATHEODORY = "c"


@dataclass(frozen=True)
class InvariantSample:
    z: complex
    S: Optional[float] = None
    Hk: Optional[float] = None
    Hc: Optional[float] = None
    mk: Optional[float] = None
    mc: Optional[float] = None


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_RESIDUE * max(1.0, abs(value.real)):
        raise NumericalConsistencyError(f"{what} has imaginary residue {value.imag:.3e}")
    return value.real


# -- annulus -----------------------------------------------------------------

def squeezing_annulus(A: Annulus, z: complex) -> float:
    m = abs(A.check(z))
    return max(m, A.r / m)


def _theta(A, z):
    return math.pi * math.log(abs(z)) / math.log(A.r)


def fridman_k_annulus(A: Annulus, z: complex) -> float:
    """Kobayashi Fridman function of ``A_r``.

    Evaluated as ``(1 - λ²) / (sqrt((1-λ²)² + 4λ² sin²θ) + 2λ sinθ)`` with
    ``θ = π ln|z| / ln r``; this is the textbook expression with the
    numerator rationalized, so no cancellation occurs when λ is near 1.
    """
    z = A.check(z)
    lam = A.lam
    s = math.sin(_theta(A, z))
    one_m = -math.expm1(2.0 * math.log(lam))  # 1 - λ²
    return one_m / (math.hypot(one_m, 2.0 * lam * s) + 2.0 * lam * s)


def fridman_k_annulus_literal(A: Annulus, z: complex) -> float:
    z = A.check(z)
    lam = A.lam
    s = math.sin(_theta(A, z))
    return (math.sqrt((1 - lam ** 2) ** 2 + 4 * lam ** 2 * s ** 2) - 2 * lam * s) / (1 - lam ** 2)


def injectivity_radius_annulus(A: Annulus) -> float:
    lam = A.lam
    return (1.0 - lam) / (1.0 + lam)


def annulus_covering_point(A: Annulus, z: complex) -> complex:
    """A preimage ``exp(iπ ln z / ln r)`` in the upper half-plane.

    The deck group of this covering is generated by ``w -> λ² w``.
    """
    z = A.check(z)
    return cmath.exp(1j * math.pi * cmath.log(z) / math.log(A.r))


def sk_prime(A: Annulus, z: complex, zeta: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> complex:
    """Schottky-Klein prime function of the annulus.

    ``ω(z, ζ) = (z - ζ) Π_{n≥1} (q_n z - ζ)(q_n ζ - z) / ((q_n z - z)(q_n ζ - ζ))``
    with ``q_n = r^{2n}``.  The arguments may lie outside the annulus.
    """
    z, zeta = complex(z), complex(zeta)
    if z == 0 or zeta == 0:
        raise InvalidArgument("the prime function is not defined at 0")
    r2 = A.r * A.r

    def term(n):
        q = r2 ** n
        return (q * z - zeta) * (q * zeta - z) / ((q * z - z) * (q * zeta - zeta))

    return (z - zeta) * eval_product(term, tol).value


def _hc_check(A, z):
    return abs(A.check(z))


def fridman_c_annulus_product(A: Annulus, z: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Carathéodory Fridman function of ``A_r`` from its infinite product."""
    x = _hc_check(A, z)
    r = A.r
    sr = math.sqrt(r)

    def term(n):
        return ((1 + x * r ** (2 * n - 0.5)) * (x + r ** (2 * n + 0.5))
                / ((1 + x * r ** (2 * n - 1.5)) * (x + r ** (2 * n - 0.5))))

    p = eval_product(term, tol).value
    return _real(sr * (1 + sr / x) * (1 + x / sr) * p * p, "H^c product")


def fridman_c_annulus_prime(A: Annulus, z: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """The same function written through the prime function:
    ``(ω(|z|, -√r) / ω(|z|, -1/√r))² / (r|z|)``."""
    x = _hc_check(A, z)
    sr = math.sqrt(A.r)
    ratio = sk_prime(A, x, -sr, tol) / sk_prime(A, x, -1.0 / sr, tol)
    return _real(ratio * ratio / (A.r * x), "H^c prime-function form")


def _check_pair(A, z1, z2):
    z1, z2 = float(z1), float(z2)
    if not A.r < z1 < 1.0:
        raise OutOfDomain(f"z1 = {z1!r} must lie in (r, 1)")
    if not -1.0 < z2 < -A.r:
        raise OutOfDomain(f"z2 = {z2!r} must lie in (-1, -r)")
    return z1, z2


def simha_F(A: Annulus, z1: float, z2: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """``tanh(c(z1, z2)/2)`` for ``z1 > 0 > z2`` via Simha's product ``Q``."""
    z1, z2 = _check_pair(A, z1, z2)
    r = A.r
    u, v, p, ip = z2 / z1, z1 / z2, z1 * z2, 1.0 / (z1 * z2)

    def term(n):
        num = (1 - u * r ** (2 * n)) * (1 - v * r ** (2 * n)) * (1 - p * r ** (2 * n - 1)) * (1 - ip * r ** (2 * n + 1))
        den = (1 - u * r ** (2 * n - 1)) * (1 - v * r ** (2 * n - 1)) * (1 - p * r ** (2 * n - 2)) * (1 - ip * r ** (2 * n))
        return num / den

    q = eval_product(term, tol).value
    return _real((-r / z2) * (1 - z2 / z1) * (1 - z1 * z2 / r) * q, "Simha F")


def simha_F_prime(A: Annulus, z1: float, z2: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """``F`` through four prime-function values (independent route to ``simha_F``)."""
    z1, z2 = _check_pair(A, z1, z2)
    r = A.r
    w = lambda zeta: sk_prime(A, z1, zeta, tol)
    val = w(z2) * w(r / z2) / (w(1.0 / z2) * w(z2 / r)) / (r * z1)
    return _real(val, "Simha F (prime form)")


def cara_distance_annulus(A: Annulus, z1: float, z2: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Carathéodory distance ``2 atanh F`` (``inf`` once ``F`` rounds to 1)."""
    f = simha_F(A, z1, z2, tol)
    if f >= 1.0:
        return math.inf
    return 2.0 * math.atanh(f)


def slit_disk_map(A: Annulus, z: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> complex:
    """Conformal map of ``A_r`` onto a circularly slit disk, ``-√r -> 0``."""
    z = complex(z)
    if z == 0:
        raise InvalidArgument("the slit map is not defined at 0")
    if not A.r * (1 - EDGE) <= abs(z) <= 1.0 + EDGE:
        raise OutOfDomain(f"{z!r} is outside the closed annulus")
    sr = math.sqrt(A.r)
    return sk_prime(A, z, -sr, tol) / (sr * sk_prime(A, z, -1.0 / sr, tol))


# -- punctured disks ----------------------------------------------------------

def squeezing_punctured(P: PuncturedDisk, z: complex) -> float:
    """``min_i |(z - p_i)/(1 - z conj(p_i))|``.

    For finitely punctured disks this is both the squeezing function and
    the Carathéodory Fridman function.
    """
    z = P.check(z)
    return min(abs((z - p) / (1 - z * p.conjugate())) for p in P.punctures)


fridman_c_punctured = squeezing_punctured


def fridman_k_punctured(z: complex) -> float:
    """Kobayashi Fridman function of the disk punctured at the origin.

    ``(ln|z| + sqrt(ln²|z| + π²)) / π``, evaluated in the equivalent form
    ``π / (sqrt(ln²|z| + π²) - ln|z|)``.
    """
    z = complex(z)
    m = abs(z)
    if not 0.0 < m < 1.0:
        raise OutOfDomain(f"{z!r} is not in the punctured unit disk")
    t = math.log(m)
    return math.pi / (math.hypot(t, math.pi) - t)


def punctured_covering_point(z: complex) -> complex:
    """``-i ln z`` in the upper half-plane; deck group ``w -> w + 2π``."""
    z = complex(z)
    if not 0.0 < abs(z) < 1.0:
        raise OutOfDomain(f"{z!r} is not in the punctured unit disk")
    return -1j * cmath.log(z)


# -- quotient invariant -------------------------------------------------------

Domain = Union[Annulus, PuncturedDisk]


def _fridman(domain, kind, z, tol):
    if isinstance(domain, Annulus):
        if kind is MetricKind.KOBAYASHI:
            return fridman_k_annulus(domain, z)
        return fridman_c_annulus_product(domain, z, tol)
    if kind is MetricKind.CARATHEODORY:
        return fridman_c_punctured(domain, z)
    if len(domain.punctures) != 1:
        raise UnsupportedDomain("no closed form for H^k of a disk with several punctures")
    p = domain.punctures[0]
    z = domain.check(z)
    # a disk automorphism moves the puncture to the origin
    return fridman_k_punctured((z - p) / (1 - z * p.conjugate()))


def _squeezing(domain, z):
    if isinstance(domain, Annulus):
        return squeezing_annulus(domain, z)
    return squeezing_punctured(domain, z)


def quotient_invariant(domain: Domain, kind: MetricKind, z: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """``S(z) / H^d(z)``; at most 1 by the ordering of the invariants."""
    return _squeezing(domain, z) / _fridman(domain, kind, z, tol)


def sample(domain: Domain, z: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> InvariantSample:
    """All available invariants at ``z``; unavailable ones are ``None``."""
    S = _squeezing(domain, z)
    Hc = _fridman(domain, MetricKind.CARATHEODORY, z, tol)
    try:
        Hk = _fridman(domain, MetricKind.KOBAYASHI, z, tol)
    except UnsupportedDomain:
        Hk = None
    return InvariantSample(
        z=complex(z), S=S, Hk=Hk, Hc=Hc,
        mk=None if Hk is None else S / Hk,
        mc=S / Hc,
    )


def radial_grid(domain: Domain, n: int, lo: float | None = None, hi: float | None = None,
                pad: float = 1e-6) -> np.ndarray:
    """``n`` log-spaced radii on ``[lo, hi]`` (default: the domain padded by ``pad``).

    On the annulus the node closest to ``sqrt(r)`` is moved onto it, so the
    grid always contains the radius where ``H^k`` is smallest.
    """
    if isinstance(domain, Annulus):
        lo = domain.r * (1 + pad) if lo is None else lo
    else:
        lo = pad if lo is None else lo
    hi = 1 - pad if hi is None else hi
    if n == 1:
        return np.array([math.sqrt(lo * hi)])
    xs = np.geomspace(lo, hi, n)
    if isinstance(domain, Annulus):
        centre = math.sqrt(domain.r)
        if lo < centre < hi:
            xs[int(np.argmin(np.abs(np.log(xs / centre))))] = centre
    return xs
