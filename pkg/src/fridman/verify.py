"""Property suites run by ``fridman verify``.

Each suite evaluates one family of identities or limits over a fixed,
seeded sample and reports the largest observed error next to the threshold
it is judged against.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import domains as dm
from . import fuchsian as fx
from .hyperbolic import MobiusMap, Model
from .numerics import DEFAULT_TOLERANCE, Tolerance

__all__ = ["SuiteResult", "SUITES", "run_suites", "annulus_engine_group", "punctured_engine_group"]

SEED = 20210705
INEQUALITY_SLACK = 1e-10


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_error: float
    threshold: float
    passed: bool
    detail: str = ""


def annulus_engine_group(A: dm.Annulus) -> fx.FuchsianGroup:
    lam = A.lam
    return fx.FuchsianGroup((MobiusMap(lam, 0, 0, 1 / lam, Model.HALFPLANE),), label=f"dilation r={A.r}")


def punctured_engine_group() -> fx.FuchsianGroup:
    return fx.FuchsianGroup((MobiusMap(1, 2 * math.pi, 0, 1, Model.HALFPLANE),), label="translation 2pi")


def annulus_radii(r: float, n: int, pad: float = 1e-6) -> np.ndarray:
    return dm.radial_grid(dm.Annulus(r), n, pad=pad)


def suite_inequality(tol: Tolerance) -> SuiteResult:
    A = dm.Annulus(0.01)
    worst = -math.inf
    margin = math.inf
    for x in annulus_radii(A.r, 1000):
        S, Hc, Hk = dm.squeezing_annulus(A, x), dm.fridman_c_annulus_product(A, x, tol), dm.fridman_k_annulus(A, x)
        worst = max(worst, S - Hc, Hc - Hk)
        margin = min(margin, Hc - S)
    P = dm.PuncturedDisk()
    for x in np.linspace(1e-4, 1 - 1e-4, 200):
        S, Hc, Hk = dm.squeezing_punctured(P, x), dm.fridman_c_punctured(P, x), dm.fridman_k_punctured(x)
        worst = max(worst, S - Hc, Hc - Hk)
    ok = worst <= INEQUALITY_SLACK and margin > 0
    return SuiteResult("inequality", worst, INEQUALITY_SLACK, ok,
                       f"max violation of S <= Hc <= Hk; min annulus Hc - S = {margin:.3e}")


def suite_cross_representation(tol: Tolerance) -> SuiteResult:
    err = 0.0
    for r in (0.01, 0.1, 0.3, 0.6):
        A = dm.Annulus(r)
        for x in annulus_radii(r, 20, 1e-3):
            err = max(err, abs(dm.fridman_c_annulus_product(A, x, tol) - dm.fridman_c_annulus_prime(A, x, tol)))
    rng = np.random.default_rng(SEED)
    for _ in range(100):
        r = rng.uniform(0.05, 0.6)
        A = dm.Annulus(r)
        z1 = rng.uniform(r, 1) * (1 - 1e-3) + r * 1e-3
        z2 = -(rng.uniform(r, 1) * (1 - 1e-3) + r * 1e-3)
        err = max(err, abs(dm.simha_F(A, z1, z2, tol) - dm.simha_F_prime(A, z1, z2, tol)))
    return SuiteResult("cross_representation", err, tol.eps_compare, err <= tol.eps_compare,
                       "product vs prime-function forms of H^c and of Simha's F")


def suite_engine_equivalence(tol: Tolerance) -> SuiteResult:
    err = 0.0
    for r in (0.01, 0.1, 0.5):
        A = dm.Annulus(r)
        g = annulus_engine_group(A)
        for x in annulus_radii(r, 25, 1e-4):
            for phi in np.linspace(-math.pi, math.pi, 8, endpoint=False) + 0.1:
                z = x * cmath.exp(1j * phi)
                w = dm.annulus_covering_point(A, z)
                err = max(err, abs(fx.fridman_k(g, w, tol).value - dm.fridman_k_annulus(A, z)))
    g = punctured_engine_group()
    for x in np.linspace(1e-4, 1 - 1e-4, 50):
        w = dm.punctured_covering_point(x)
        err = max(err, abs(fx.fridman_k(g, w, tol).value - dm.fridman_k_punctured(x)))
    return SuiteResult("engine_equivalence", err, tol.eps_compare, err <= tol.eps_compare,
                       "orbit engine vs closed forms on the covering groups")


def suite_boundary_limits(tol: Tolerance) -> SuiteResult:
    A = dm.Annulus(0.01)
    ok = True
    worst = 0.0
    prev = None
    for j in range(1, 9):
        x = 1 - 10.0 ** -j
        vals = (dm.fridman_k_annulus(A, x), dm.fridman_c_annulus_product(A, x, tol),
                dm.quotient_invariant(A, dm.MetricKind.KOBAYASHI, x, tol),
                dm.quotient_invariant(A, dm.MetricKind.CARATHEODORY, x, tol))
        floor = 1 - 5 * 10.0 ** (-j + 1)
        ok &= all(v > floor for v in vals)
        if prev is not None:
            ok &= all(v > p for v, p in zip(vals, prev))
        prev = vals
        worst = max(worst, max(1 - v for v in vals) / (5 * 10.0 ** (-j + 1)))
    P = dm.PuncturedDisk()
    prev = None
    for j in range(1, 9):
        x = 10.0 ** -j
        hk = dm.fridman_k_punctured(x)
        # H^k ~ π / (2 ln(1/|z|)) at the puncture
        ok &= hk < math.pi / (2 * j * math.log(10)) * 1.1
        if prev is not None:
            ok &= hk < prev
        prev = hk
        ok &= dm.quotient_invariant(P, dm.MetricKind.CARATHEODORY, x) == 1.0
        if j >= 6:
            ok &= dm.quotient_invariant(P, dm.MetricKind.KOBAYASHI, x) < 1e-4
    return SuiteResult("boundary_limits", worst, 1.0, bool(ok),
                       "approach to 1 at the annulus edge (ratio to allowed gap), decay at the puncture")


def suite_reflection_argmin(tol: Tolerance) -> SuiteResult:
    rng = np.random.default_rng(SEED + 1)
    refl = 0.0
    for _ in range(100):
        r = rng.uniform(0.05, 0.6)
        A = dm.Annulus(r)
        z1 = rng.uniform(r, 1) * (1 - 1e-3) + r * 1e-3
        z2 = -(rng.uniform(r, 1) * (1 - 1e-3) + r * 1e-3)
        refl = max(refl, abs(dm.simha_F(A, z1, z2, tol) - dm.simha_F(A, z1, A.r / z2, tol)))
    cells = 0.0
    for r in (0.1, 0.3):
        A = dm.Annulus(r)
        grid = np.linspace(-1, -r, 10_002)[1:-1]
        h = grid[1] - grid[0]
        for z1 in np.linspace(r, 1, 7)[1:-1]:
            vals = [dm.cara_distance_annulus(A, z1, z2, tol) for z2 in grid]
            arg = grid[int(np.argmin(vals))]
            cells = max(cells, abs(arg + math.sqrt(r)) / h)
    ok = refl <= 1e-10 and cells <= 1.0
    return SuiteResult("reflection_argmin", cells, 1.0, ok,
                       f"argmin distance to -sqrt(r) in grid cells; reflection error {refl:.2e}")


def suite_quotient_limits(tol: Tolerance) -> SuiteResult:
    A = dm.Annulus(0.01)
    P = dm.PuncturedDisk()
    ok = True
    top = 0.0
    for x in annulus_radii(A.r, 200):
        for kind in dm.MetricKind:
            m = dm.quotient_invariant(A, kind, x, tol)
            top = max(top, m)
            ok &= m < 1
    for kind in dm.MetricKind:
        ok &= abs(dm.quotient_invariant(A, kind, 0.999, tol) - 1) < 0.01
    for x in np.linspace(1e-6, 1 - 1e-6, 100):
        ok &= dm.quotient_invariant(P, dm.MetricKind.CARATHEODORY, x) == 1.0
        ok &= dm.quotient_invariant(P, dm.MetricKind.KOBAYASHI, x) < 1.0
    ok &= dm.quotient_invariant(P, dm.MetricKind.KOBAYASHI, 1e-6) < 1e-5
    return SuiteResult("quotient_limits", top, 1.0, bool(ok),
                       "largest annulus m^d (must stay < 1); limits at boundary and puncture")


def suite_injectivity(tol: Tolerance) -> SuiteResult:
    A = dm.Annulus(0.01)
    xs = annulus_radii(A.r, 400)
    vals = np.array([dm.fridman_k_annulus(A, x) for x in xs])
    i = int(np.argmin(vals))
    err = abs(vals[i] - dm.injectivity_radius_annulus(A))
    near = abs(math.log(xs[i]) - 0.5 * math.log(A.r)) <= abs(math.log(xs[1] / xs[0]))
    return SuiteResult("injectivity", err, 1e-6, err <= 1e-6 and near,
                       "grid minimum of H^k on A_0.01 vs (1-λ)/(1+λ)")


def suite_slit_map(tol: Tolerance) -> SuiteResult:
    err = 0.0
    for r in (0.1, 0.3):
        A = dm.Annulus(r)
        for phi in np.linspace(0, 2 * math.pi, 32, endpoint=False):
            err = max(err, abs(abs(dm.slit_disk_map(A, cmath.exp(1j * phi), tol)) - 1))
        err = max(err, abs(dm.slit_disk_map(A, -math.sqrt(r), tol)))
        for z in (0.5 + 0.3j, -0.4 + 0.6j, 0.2j + 0.5):
            err = max(err, abs(dm.slit_disk_map(A, z.conjugate(), tol) - dm.slit_disk_map(A, z, tol).conjugate()))
    return SuiteResult("slit_map", err, 1e-8, err <= 1e-8, "|g| = 1 on the unit circle, g(-sqrt r) = 0, g(conj z) = conj g(z)")


SUITES: dict = {
    "inequality": suite_inequality,
    "cross_representation": suite_cross_representation,
    "engine_equivalence": suite_engine_equivalence,
    "boundary_limits": suite_boundary_limits,
    "reflection_argmin": suite_reflection_argmin,
    "quotient_limits": suite_quotient_limits,
    "injectivity": suite_injectivity,
    "slit_map": suite_slit_map,
}


def run_suites(names=None, tol: Tolerance = DEFAULT_TOLERANCE,
               on_result: Callable[[SuiteResult], None] | None = None) -> list:
    results = []
    for name in names or SUITES:
        res = SUITES[name](tol)
        results.append(res)
        if on_result is not None:
            on_result(res)
    return results
