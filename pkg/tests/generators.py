"""Seeded random instances shared by the property tests and the acceptance run."""
import cmath
import math

from fridman.hyperbolic import MobiusMap, Model, compose, inverse


def disk_point(rng, rmax=0.95):
    return math.sqrt(rng.uniform(0, rmax ** 2)) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))


def halfplane_point(rng, rmax=0.95):
    z = disk_point(rng, rmax)
    return 1j * (1 + z) / (1 - z)


def disk_map(rng, rmax=0.9):
    return MobiusMap.disk_automorphism(disk_point(rng, rmax), rng.uniform(-math.pi, math.pi))


def sl2r(rng, spread=1.5):
    a = math.exp(rng.uniform(-spread, spread)) * rng.choice([-1, 1])
    b, c = rng.uniform(-2, 2), rng.uniform(-2, 2)
    return MobiusMap(a, b, c, (1 + b * c) / a, Model.HALFPLANE)


def conjugate(sigma, m):
    return compose(sigma, compose(m, inverse(sigma)))


def hyperbolic_halfplane(rng):
    lam = rng.uniform(0.2, 0.95)
    return conjugate(sl2r(rng), MobiusMap(lam, 0, 0, 1 / lam, Model.HALFPLANE))


def parabolic_halfplane(rng):
    t = rng.uniform(0.2, 5) * rng.choice([-1, 1])
    return conjugate(sl2r(rng), MobiusMap(1, t, 0, 1, Model.HALFPLANE))


def elliptic_halfplane(rng):
    th = rng.uniform(0.1, 3.0)
    rot = MobiusMap(math.cos(th), math.sin(th), -math.sin(th), math.cos(th), Model.HALFPLANE)
    return conjugate(sl2r(rng), rot)


# -- property sweeps returning the largest observed error ----------------------

def isometry_error(rng, n):
    from fridman.hyperbolic import apply, rho_disk, rho_halfplane
    err = 0.0
    for _ in range(n):
        m, z1, z2 = disk_map(rng), disk_point(rng), disk_point(rng)
        err = max(err, abs(rho_disk(apply(m, z1), apply(m, z2)) - rho_disk(z1, z2)))
        m, w1, w2 = sl2r(rng, 1.0), halfplane_point(rng, 0.9), halfplane_point(rng, 0.9)
        err = max(err, abs(rho_halfplane(apply(m, w1), apply(m, w2)) - rho_halfplane(w1, w2)))
    return err


def cayley_error(rng, n):
    from fridman.hyperbolic import cayley_to_disk, rho_disk, rho_halfplane
    err = 0.0
    for _ in range(n):
        w1, w2 = halfplane_point(rng), halfplane_point(rng)
        err = max(err, abs(rho_halfplane(w1, w2) - rho_disk(cayley_to_disk(w1), cayley_to_disk(w2))))
    return err


def triangle_violation(rng, n):
    from fridman.hyperbolic import rho_disk
    worst = -math.inf
    for _ in range(n):
        a, b, c = disk_point(rng), disk_point(rng), disk_point(rng)
        worst = max(worst, rho_disk(a, c) - rho_disk(a, b) - rho_disk(b, c))
    return worst


def half_angle_error(ds):
    from fridman.hyperbolic import tanh_quarter
    err = 0.0
    for d in ds:
        x = d / 2
        direct = math.tanh(d / 4)
        err = max(err, abs(tanh_quarter(d, sinh_half=math.sinh(x)) - direct),
                  abs(math.sinh(x) / (math.cosh(x) + 1) - direct))
    return err


def disk_translation(t, angle):
    """Hyperbolic disk map translating along the diameter through ``e^{i angle}``."""
    u = cmath.exp(1j * angle)
    return MobiusMap(math.cosh(t), u * math.sinh(t), u.conjugate() * math.sinh(t), math.cosh(t))


def schottky_pair(t=1.5):
    """Two translations with disjoint isometric circles once ``cosh t > sqrt 2``."""
    return disk_translation(t, 0.0), disk_translation(t, math.pi / 2)
