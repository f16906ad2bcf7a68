"""Orbit search in finitely generated Fuchsian groups.

For ``X = D/Γ`` with ``D`` the disk or half-plane and ``Γ`` torsion-free and
discrete, the Kobayashi Fridman function at ``z = π(w)`` equals
``min over γ ≠ Id of tanh(ρ(w, γw)/4)``.  The minimum is searched over
reduced words in the generators by breadth-first enumeration.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import hyperbolic as hyp
from .errors import EllipticUnsupported, EmptyGroup, InvalidArgument
from .hyperbolic import Kind, MobiusMap, Model
from .numerics import DEFAULT_TOLERANCE, Tolerance

__all__ = [
    "FuchsianGroup",
    "OrbitSearchResult",
    "FridmanResult",
    "orbit_min_displacement",
    "fridman_k",
    "injectivity_radius_fn",
    "boundary_probe",
    "word_to_map",
    "format_word",
]

MAX_GENERATORS = 64
MAX_ELEMENTS = 2_000_000
KEY_QUANTUM = 1e-12
SMALL_DISPLACEMENT = 1e-8


@dataclass(frozen=True)
class FuchsianGroup:
    """A group given by generators; torsion-freeness is checked per generator.

    Discreteness is the caller's responsibility.
    """

    generators: tuple
    label: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise EmptyGroup("a group needs at least one generator")
        if len(gens) > MAX_GENERATORS:
            raise InvalidArgument(f"at most {MAX_GENERATORS} generators are supported")
        model = gens[0].model
        for i, g in enumerate(gens):
            if g.model is not model:
                raise hyp.ModelMismatch(f"generator {i} lives in the {g.model.value} model, "
                                        f"generator 0 in the {model.value} model")
            kind = hyp.classify(g)
            if kind is Kind.IDENTITY:
                raise InvalidArgument(f"generator {i} is the identity")
            if kind is Kind.ELLIPTIC:
                raise EllipticUnsupported(
                    f"generator {i} is elliptic (|trace| = {abs(g.trace):.6g} < 2); "
                    "the group must be torsion-free, i.e. contain no elliptic elements"
                )

    @property
    def model(self) -> Model:
        return self.generators[0].model

    @property
    def is_cyclic(self) -> bool:
        return len(self.generators) == 1

    def letters(self) -> list:
        """Generators and inverses; letter ``2i`` is ``g_i``, ``2i+1`` is ``g_i^-1``."""
        out = []
        for g in self.generators:
            out.extend((g, hyp.inverse(g)))
        return out


@dataclass(frozen=True)
class OrbitSearchResult:
    min_displacement: float
    witness: tuple  # ((generator index, +1 or -1), ...)
    exact: bool
    explored: int
    depth_reached: int = 0
    level_minima: tuple = field(default=(), repr=False)


@dataclass(frozen=True)
class FridmanResult:
    value: float
    exact: bool
    search: OrbitSearchResult

    def __float__(self):
        return self.value


def word_to_map(g: FuchsianGroup, word) -> MobiusMap:
    m = MobiusMap.identity(g.model)
    for idx, exp in word:
        gen = g.generators[idx]
        m = hyp.compose(m, gen if exp > 0 else hyp.inverse(gen))
    return m


def format_word(word) -> str:
    return ".".join(f"g{i}" if e > 0 else f"g{i}^-1" for i, e in word)


def _sinh_half(model, w, A, B, C, D):
    # images that rounding pushes onto the boundary are infinitely far away
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        p = (A * w + B) / (C * w + D)
        if model is Model.DISK:
            om = lambda z: (1.0 - np.abs(z)) * (1.0 + np.abs(z))
            s = np.abs(p - w) / np.sqrt(om(w) * om(p))
        else:
            s = np.abs(p - w) / (2.0 * np.sqrt(w.imag * p.imag))
    return np.where(np.isnan(s), np.inf, s)


def _keys(A, B, C, D):
    M = np.stack([A, B, C, D], axis=1)
    big = np.abs(M) > KEY_QUANTUM
    first = np.argmax(big, axis=1)
    pivot = M[np.arange(len(M)), first]
    flip = (pivot.real < -KEY_QUANTUM) | ((np.abs(pivot.real) <= KEY_QUANTUM) & (pivot.imag < 0))
    M = np.where(flip[:, None], -M, M)
    R = np.rint(np.concatenate([M.real, M.imag], axis=1) / KEY_QUANTUM) + 0.0
    return np.ascontiguousarray(R).view(np.dtype((np.void, R.dtype.itemsize * 8))).ravel()


def _is_identity(A, B, C, D):
    return (np.abs(B) < hyp.IDENTITY_EPS) & (np.abs(C) < hyp.IDENTITY_EPS) & (np.abs(A - D) < hyp.IDENTITY_EPS)


def orbit_min_displacement(g: FuchsianGroup, w: complex, tol: Tolerance = DEFAULT_TOLERANCE,
                           max_elements: int = MAX_ELEMENTS) -> OrbitSearchResult:
    """Minimal displacement ``ρ(w, γw)`` over reduced words of length ≤ ``tol.orbit_depth``.

    Elements reached by different words are merged by their sign-canonical
    coefficients rounded to 1e-12.  ``exact`` is set only when the minimum is
    certified: always for cyclic groups (the displacement of ``γ^n`` grows
    with ``|n|`` for parabolic and hyperbolic ``γ``), otherwise when the best
    value was unchanged over the last three depths and every element of the
    last depth is displaced by more than three times the best value.  The
    search also stops (uncertified) once ``max_elements`` have been visited.
    """
    w = hyp.check_point(g.model, w)
    letters = g.letters()
    LA = np.array([m.a for m in letters])
    LB = np.array([m.b for m in letters])
    LC = np.array([m.c for m in letters])
    LD = np.array([m.d for m in letters])
    nl = len(letters)
    inv_letter = np.arange(nl) ^ 1

    A, B, C, D = LA.copy(), LB.copy(), LC.copy(), LD.copy()
    last = np.arange(nl)
    keys = _keys(A, B, C, D)
    keys, first = np.unique(keys, return_index=True)
    first.sort()
    A, B, C, D, last = A[first], B[first], C[first], D[first], last[first]
    seen = np.union1d(keys, _keys(np.ones(1, complex), np.zeros(1, complex),
                                  np.zeros(1, complex), np.ones(1, complex)))
    parents = [np.full(len(A), -1)]
    lasts = [last]

    best = math.inf
    best_at = None
    explored = 0
    level_minima = []
    frontier_s = None
    depth = 0
    for depth in range(1, tol.orbit_depth + 1):
        s = _sinh_half(g.model, w, A, B, C, D)
        s = np.where(_is_identity(A, B, C, D), np.inf, s)
        explored += len(A)
        if len(s):
            j = int(np.argmin(s))
            if s[j] < best:
                best, best_at = float(s[j]), (depth, j)
            if np.min(s) < SMALL_DISPLACEMENT:
                warnings.warn(
                    f"group element with displacement {np.min(s):.3e} at depth {depth}: "
                    "generators are probably not discrete or not torsion-free",
                    RuntimeWarning, stacklevel=2,
                )
        level_minima.append(best)
        frontier_s = s
        if depth == tol.orbit_depth or explored >= max_elements or not len(A):
            break

        # extend every word by each letter that does not cancel its last one
        n = len(A)
        par = np.repeat(np.arange(n), nl)
        let = np.tile(np.arange(nl), n)
        keep = let != inv_letter[last[par]]
        par, let = par[keep], let[keep]
        nA = A[par] * LA[let] + B[par] * LC[let]
        nB = A[par] * LB[let] + B[par] * LD[let]
        nC = C[par] * LA[let] + D[par] * LC[let]
        nD = C[par] * LB[let] + D[par] * LD[let]
        k = _keys(nA, nB, nC, nD)
        k, first = np.unique(k, return_index=True)
        fresh = ~np.isin(k, seen, assume_unique=True)
        k, first = k[fresh], np.sort(first[fresh])
        seen = np.union1d(seen, k)
        A, B, C, D = nA[first], nB[first], nC[first], nD[first]
        last = let[first]
        parents.append(par[first])
        lasts.append(last)

    if best_at is None:
        raise EmptyGroup("no non-identity element was reached")

    level, idx = best_at
    word = []
    while level >= 1:
        letter = int(lasts[level - 1][idx])
        word.append((letter // 2, -1 if letter & 1 else 1))
        idx = int(parents[level - 1][idx])
        level -= 1
    word.reverse()

    best_rho = 2.0 * math.asinh(best)
    if g.is_cyclic:
        exact = True
    elif depth >= 3 and len(level_minima) >= 3 and level_minima[-1] == level_minima[-3]:
        finite = frontier_s[np.isfinite(frontier_s)]
        exact = bool(np.all(2.0 * np.arcsinh(finite) > 3.0 * best_rho))
    else:
        exact = False
    return OrbitSearchResult(best_rho, tuple(word), exact, explored, depth,
                             tuple(2.0 * math.asinh(x) for x in level_minima))


def fridman_k(g: FuchsianGroup, w: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> FridmanResult:
    """Kobayashi Fridman function of ``D/Γ`` at the image of ``w``."""
    res = orbit_min_displacement(g, w, tol)
    gamma = word_to_map(g, res.witness)
    s = hyp.sinh_half_rho(g.model, w, hyp.apply(gamma, w))
    return FridmanResult(hyp.tanh_quarter(res.min_displacement, sinh_half=s), res.exact, res)


def injectivity_radius_fn(g: FuchsianGroup, w: complex, tol: Tolerance = DEFAULT_TOLERANCE) -> FridmanResult:
    # on Riemann surfaces the injectivity radius function and H^k coincide
    return fridman_k(g, w, tol)


def boundary_probe(g: FuchsianGroup, path: Sequence[complex], tol: Tolerance = DEFAULT_TOLERANCE) -> list:
    return [(complex(p), fridman_k(g, p, tol).value) for p in path]
