import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fridman import domains as dm
from fridman.domains import Annulus, MetricKind, PuncturedDisk
from fridman.errors import InvalidArgument, OutOfDomain, UnsupportedDomain

mpmath.mp.dps = 40
A01 = Annulus(0.01)
KINDS = list(MetricKind)


def mp_lambda(r):
    return mpmath.exp(mpmath.pi ** 2 / mpmath.log(mpmath.mpf(r)))


def mp_fridman_k(r, x):
    lam = mp_lambda(r)
    th = mpmath.pi * mpmath.log(mpmath.mpf(x)) / mpmath.log(mpmath.mpf(r))
    num = mpmath.sqrt((1 - lam ** 2) ** 2 + 4 * lam ** 2 * mpmath.sin(th) ** 2) - 2 * lam * mpmath.sin(th)
    return float(num / (1 - lam ** 2))


def mp_fridman_c(r, x, terms=200):
    r, x = mpmath.mpf(r), mpmath.mpf(x)
    sr = mpmath.sqrt(r)
    prod = mpmath.mpf(1)
    for n in range(1, terms + 1):
        prod *= ((1 + x * r ** (2 * n - 0.5)) * (x + r ** (2 * n + 0.5))
                 / ((1 + x * r ** (2 * n - 1.5)) * (x + r ** (2 * n - 0.5))))
    return float(sr * (1 + sr / x) * (1 + x / sr) * prod ** 2)


def partial_prime(r, z, zeta, terms=500):
    value = z - zeta
    for n in range(1, terms + 1):
        q = r ** (2 * n)
        value *= (q * z - zeta) * (q * zeta - z) / ((q * z - z) * (q * zeta - zeta))
    return value


# -- domain objects ---------------------------------------------------------------------

def test_annulus_lambda():
    assert A01.lam == pytest.approx(float(mp_lambda(0.01)), rel=1e-14)
    assert 0 < A01.lam < 1


@pytest.mark.parametrize("r", [0, 1, -0.5, 1e-13, 1 - 1e-13])
def test_annulus_radius_range(r):
    with pytest.raises(InvalidArgument):
        Annulus(r)


@pytest.mark.parametrize("punctures", [(), (1.0,), (0.2, 0.2)])
def test_punctured_disk_validation(punctures):
    with pytest.raises(InvalidArgument):
        PuncturedDisk(punctures)


@pytest.mark.parametrize("z", [0.01, 0.005, 1.0, 1.5j, 0])
def test_annulus_rejects_outside_points(z):
    with pytest.raises(OutOfDomain):
        dm.fridman_k_annulus(A01, z)
    with pytest.raises(OutOfDomain):
        dm.squeezing_annulus(A01, z)


# -- squeezing ----------------------------------------------------------------------------

def test_squeezing_annulus_examples():
    assert dm.squeezing_annulus(A01, 0.5) == 0.5
    assert dm.squeezing_annulus(A01, 0.1) == pytest.approx(0.1, abs=1e-16)
    assert dm.squeezing_annulus(A01, 0.02j) == pytest.approx(0.5, abs=1e-15)


@given(st.floats(0.0101, 0.99), st.floats(-math.pi, math.pi))
def test_squeezing_reflection(x, phi):
    z = x * cmath.exp(1j * phi)
    assert dm.squeezing_annulus(A01, z) == pytest.approx(dm.squeezing_annulus(A01, 0.01 / x), abs=1e-14)


def test_squeezing_punctured_examples():
    P = PuncturedDisk()
    assert dm.squeezing_punctured(P, 0.3) == pytest.approx(0.3)
    assert dm.fridman_c_punctured(P, 0.3) == pytest.approx(0.3)
    two = PuncturedDisk((0, 0.5))
    assert dm.squeezing_punctured(two, 0.25) == pytest.approx(0.25, abs=1e-16)
    assert dm.squeezing_punctured(two, 0.5 + 1e-9) < 2e-9
    with pytest.raises(OutOfDomain):
        dm.squeezing_punctured(two, 0.5)
    with pytest.raises(OutOfDomain):
        dm.squeezing_punctured(P, 1.0)


# -- Kobayashi Fridman function on the annulus ---------------------------------------------------

def test_fridman_k_at_symmetry_circle():
    lam = float(mp_lambda(0.01))
    want = (1 - lam) / (1 + lam)
    assert dm.fridman_k_annulus(A01, 0.1) == pytest.approx(want, abs=1e-14)
    assert dm.fridman_k_annulus(A01, 0.1) == pytest.approx(0.790055250293901, abs=1e-14)
    assert dm.injectivity_radius_annulus(A01) == pytest.approx(want, abs=1e-15)


@pytest.mark.parametrize("r", [1e-6, 0.01, 0.3, 0.9])
def test_fridman_k_against_high_precision(r):
    for x in np.geomspace(r * 1.001, 0.999, 40):
        assert dm.fridman_k_annulus(Annulus(r), x) == pytest.approx(mp_fridman_k(r, x), abs=1e-13)


def test_literal_and_stable_forms_agree():
    for r in (0.01, 0.3):
        for x in np.geomspace(r * 1.01, 0.99, 30):
            assert dm.fridman_k_annulus_literal(Annulus(r), x) == pytest.approx(dm.fridman_k_annulus(Annulus(r), x), abs=1e-12)


def test_fridman_k_near_outer_edge():
    assert dm.fridman_k_annulus(A01, 1 - 1e-10) == pytest.approx(mp_fridman_k(0.01, 1 - 1e-10), abs=1e-15)
    assert dm.fridman_k_annulus(A01, 1 - 1e-10) > 1 - 1e-8


@given(st.floats(0.0101, 0.99), st.floats(-math.pi, math.pi))
def test_fridman_k_rotation_and_reflection(x, phi):
    v = dm.fridman_k_annulus(A01, x)
    assert dm.fridman_k_annulus(A01, x * cmath.exp(1j * phi)) == pytest.approx(v, abs=1e-14)
    assert dm.fridman_k_annulus(A01, 0.01 / x) == pytest.approx(v, abs=1e-10)


def test_injectivity_radius_limits():
    assert dm.injectivity_radius_annulus(Annulus(0.999)) > 0.999
    assert dm.injectivity_radius_annulus(Annulus(1e-11)) < 0.25


def test_injectivity_radius_is_the_minimum():
    for r in (0.01, 0.2):
        A = Annulus(r)
        xs = np.geomspace(r * 1.0001, 0.9999, 4001)
        assert min(dm.fridman_k_annulus(A, x) for x in xs) >= dm.injectivity_radius_annulus(A) - 1e-15


@pytest.mark.parametrize("x", [0.1, 0.5, 0.9])
def test_degeneration_is_monotone(x):
    gaps = [dm.fridman_k_annulus(Annulus(r), x) - dm.fridman_k_punctured(x) for r in (1e-2, 1e-4, 1e-6)]
    assert gaps[0] > gaps[1] > gaps[2] > 0


@pytest.mark.parametrize("x", [0.99, 0.999])
def test_degeneration_gap_near_rim(x):
    gaps = [dm.fridman_k_annulus(Annulus(r), x) - dm.fridman_k_punctured(x) for r in (1e-2, 1e-4, 1e-6)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert abs(gaps[2]) < 1e-3


def test_covering_points():
    w = dm.annulus_covering_point(A01, 0.1)
    assert w == pytest.approx(1j, abs=1e-15)
    assert dm.punctured_covering_point(math.exp(-math.pi)) == pytest.approx(math.pi * 1j, abs=1e-15)


# -- prime function ---------------------------------------------------------------------------------

def test_prime_function_against_partial_product():
    A = Annulus(0.3)
    assert dm.sk_prime(A, 0.6, -0.5) == pytest.approx(partial_prime(0.3, 0.6, -0.5), abs=1e-12)


def test_prime_function_vanishes_on_diagonal():
    assert dm.sk_prime(Annulus(0.3), 0.4 + 0.2j, 0.4 + 0.2j) == 0


@given(st.complex_numbers(min_magnitude=0.3, max_magnitude=1), st.complex_numbers(min_magnitude=0.3, max_magnitude=1))
@settings(max_examples=200)
def test_prime_function_antisymmetric(z, zeta):
    A = Annulus(0.3)
    assert abs(dm.sk_prime(A, z, zeta) + dm.sk_prime(A, zeta, z)) < 1e-12


def test_prime_function_rejects_origin():
    with pytest.raises(InvalidArgument):
        dm.sk_prime(Annulus(0.3), 0, 0.5)
    with pytest.raises(InvalidArgument):
        dm.sk_prime(Annulus(0.3), 0.5, 0)


# -- Caratheodory Fridman function on the annulus -------------------------------------------------------

@pytest.mark.parametrize("r", [0.01, 0.1, 0.6])
def test_fridman_c_against_high_precision(r):
    for x in np.geomspace(r * 1.001, 0.999, 15):
        assert dm.fridman_c_annulus_product(Annulus(r), x) == pytest.approx(mp_fridman_c(r, x), abs=1e-13)


@pytest.mark.parametrize("r", [0.01, 0.1, 0.3, 0.6])
def test_fridman_c_representations_agree(r):
    A = Annulus(r)
    for x in np.geomspace(r * 1.001, 0.999, 20):
        assert dm.fridman_c_annulus_prime(A, x) == pytest.approx(dm.fridman_c_annulus_product(A, x), abs=1e-8)


def test_fridman_c_depends_on_modulus_only():
    for phi in np.linspace(0, 2 * math.pi, 7):
        for f in (dm.fridman_c_annulus_product, dm.fridman_c_annulus_prime):
            assert f(A01, 0.3 * cmath.exp(1j * phi)) == pytest.approx(f(A01, 0.3), abs=1e-14)


def test_fridman_c_reflection():
    for x in np.geomspace(0.0101, 0.99, 40):
        assert dm.fridman_c_annulus_product(A01, 0.01 / x) == pytest.approx(dm.fridman_c_annulus_product(A01, x), abs=1e-10)


def test_fridman_c_between_squeezing_and_kobayashi():
    for x in np.geomspace(0.0101, 0.99, 50):
        S, Hc, Hk = dm.squeezing_annulus(A01, x), dm.fridman_c_annulus_product(A01, x), dm.fridman_k_annulus(A01, x)
        assert S < Hc < Hk


def test_fridman_c_tends_to_one():
    assert dm.fridman_c_annulus_prime(A01, 1 - 1e-9) > 1 - 1e-7


# -- Simha's function and the Caratheodory distance --------------------------------------------------------

def test_simha_reflection_and_prime_form():
    rng = np.random.default_rng(5)
    for _ in range(100):
        r = rng.uniform(0.05, 0.6)
        A = Annulus(r)
        z1 = rng.uniform(r * 1.001, 0.999)
        z2 = -rng.uniform(r * 1.001, 0.999)
        F = dm.simha_F(A, z1, z2)
        assert 0 <= F < 1
        assert dm.simha_F(A, z1, r / z2) == pytest.approx(F, abs=1e-10)
        assert dm.simha_F_prime(A, z1, z2) == pytest.approx(F, abs=1e-8)


@pytest.mark.parametrize("r", [0.1, 0.3])
def test_distance_to_symmetric_point_gives_fridman_c(r):
    A = Annulus(r)
    for z1 in np.linspace(r, 1, 7)[1:-1]:
        c = dm.cara_distance_annulus(A, z1, -math.sqrt(r))
        assert math.tanh(c / 2) == pytest.approx(dm.fridman_c_annulus_product(A, z1), abs=1e-8)


def test_distance_blows_up_at_inner_circle():
    A = Annulus(0.1)
    ds = [dm.cara_distance_annulus(A, 0.5, -0.1 * (1 + 10.0 ** -k)) for k in range(1, 9)]
    assert all(b > a for a, b in zip(ds, ds[1:]))
    assert ds[-1] > 10


def test_simha_sign_configuration():
    with pytest.raises(OutOfDomain):
        dm.simha_F(A01, -0.5, -0.5)
    with pytest.raises(OutOfDomain):
        dm.simha_F(A01, 0.5, 0.5)


# -- slit map -------------------------------------------------------------------------------------------

@pytest.mark.parametrize("r", [0.1, 0.3])
def test_slit_map(r):
    A = Annulus(r)
    assert abs(dm.slit_disk_map(A, -math.sqrt(r))) < 1e-10
    for phi in np.linspace(0, 2 * math.pi, 32, endpoint=False):
        assert abs(dm.slit_disk_map(A, cmath.exp(1j * phi))) == pytest.approx(1, abs=1e-8)
    for z in (0.5 + 0.3j, -0.4 + 0.6j, 0.7j):
        assert dm.slit_disk_map(A, z.conjugate()) == pytest.approx(dm.slit_disk_map(A, z).conjugate(), abs=1e-10)


def test_slit_map_maps_inner_circle_to_a_slit():
    A = Annulus(0.3)
    radii = [abs(dm.slit_disk_map(A, 0.3 * cmath.exp(1j * phi))) for phi in np.linspace(0, 2 * math.pi, 16)]
    assert max(radii) - min(radii) < 1e-8
    assert radii[0] < 1


# -- punctured disk ---------------------------------------------------------------------------------------

def test_fridman_k_punctured_examples():
    assert dm.fridman_k_punctured(math.exp(-math.pi)) == pytest.approx(math.sqrt(2) - 1, abs=1e-15)
    assert dm.fridman_k_punctured(1 - 1e-12) > 1 - 1e-11
    assert dm.fridman_k_punctured(1e-300) < 0.003


def test_fridman_k_punctured_against_literal_formula():
    for x in np.geomspace(1e-6, 0.9, 50):
        t = mpmath.log(mpmath.mpf(x))
        want = float((t + mpmath.sqrt(t ** 2 + mpmath.pi ** 2)) / mpmath.pi)
        assert dm.fridman_k_punctured(x) == pytest.approx(want, rel=1e-13)


def test_fridman_k_punctured_increasing():
    vals = [dm.fridman_k_punctured(x) for x in np.linspace(1e-4, 1 - 1e-4, 100)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


# -- quotient invariant and samples ---------------------------------------------------------------------

def test_quotient_on_punctured_disk():
    P = PuncturedDisk()
    for x in (1e-6, 0.3, 0.9):
        assert dm.quotient_invariant(P, MetricKind.CARATHEODORY, x) == 1.0
    assert dm.quotient_invariant(P, MetricKind.KOBAYASHI, 1e-6) < 1e-5


@pytest.mark.parametrize("kind", KINDS)
def test_quotient_on_annulus(kind):
    assert dm.quotient_invariant(A01, kind, 0.999) == pytest.approx(1, abs=0.01)
    for x in np.geomspace(0.0101, 0.99, 60):
        assert 0 < dm.quotient_invariant(A01, kind, x) < 1


def test_quotient_off_centre_puncture():
    P = PuncturedDisk((0.4,))
    z = 0.1 + 0.2j
    b = abs((z - 0.4) / (1 - 0.4 * z))
    assert dm.quotient_invariant(P, MetricKind.KOBAYASHI, z) == pytest.approx(b / dm.fridman_k_punctured(b), rel=1e-14)


def test_several_punctures_have_no_kobayashi_closed_form():
    two = PuncturedDisk((0, 0.5))
    with pytest.raises(UnsupportedDomain):
        dm.quotient_invariant(two, MetricKind.KOBAYASHI, 0.25)
    s = dm.sample(two, 0.25)
    assert s.Hk is None and s.mk is None
    assert s.S == s.Hc == pytest.approx(0.25) and s.mc == 1.0


@given(st.floats(0.0101, 0.99), st.floats(-math.pi, math.pi))
@settings(max_examples=100, deadline=None)
def test_sample_ordering(x, phi):
    s = dm.sample(A01, x * cmath.exp(1j * phi))
    assert 0 < s.S <= s.Hc + 1e-10
    assert s.Hc <= s.Hk + 1e-10 and s.Hk < 1
    assert s.mk == pytest.approx(s.S / s.Hk) and 0 < s.mk <= 1 and 0 < s.mc <= 1


# -- radial grid ------------------------------------------------------------------------------------------

def test_radial_grid_hits_symmetry_radius():
    xs = dm.radial_grid(A01, 400)
    assert len(xs) == 400 and np.all(np.diff(xs) > 0)
    assert 0.1 in xs
    assert xs[0] == pytest.approx(0.01 * (1 + 1e-6)) and xs[-1] == pytest.approx(1 - 1e-6)
    assert dm.radial_grid(PuncturedDisk(), 3)[0] == pytest.approx(1e-6)
