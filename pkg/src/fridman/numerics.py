"""Tolerance policy and the adaptive infinite-product evaluator.

Every product in the package has factors that approach 1 geometrically
(``|term(n) - 1| = O(r**(2n))`` with ``0 < r < 1``), so truncation stops at
the first factor that is within ``eps_product`` of 1.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidArgument, InvalidFactor, NonConvergent

__all__ = ["Tolerance", "ProductResult", "eval_product", "DEFAULT_TOLERANCE"]

_MAX_RATIO = 0.99


@dataclass(frozen=True)
class Tolerance:
    eps_product: float = 1e-14
    eps_compare: float = 1e-8
    max_terms: int = 10_000
    orbit_depth: int = 12

    def __post_init__(self):
        for name in ("eps_product", "eps_compare"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise InvalidArgument(f"{name} must lie in (0, 1), got {value!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise InvalidArgument(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if int(self.orbit_depth) != self.orbit_depth or self.orbit_depth < 1:
            raise InvalidArgument(f"orbit_depth must be a positive integer, got {self.orbit_depth!r}")


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class ProductResult:
    value: complex
    terms_used: int
    tail_bound: float


def eval_product(term: Callable[[int], complex], tol: Tolerance = DEFAULT_TOLERANCE) -> ProductResult:
    """Evaluate ``prod_{n>=1} term(n)`` with adaptive truncation.

    Stops at the least ``N`` with ``|term(N) - 1| < tol.eps_product``.  The
    reported ``tail_bound`` is the geometric-tail estimate
    ``|value| * |term(N) - 1| / (1 - q)`` where ``q`` is the observed decay
    ratio of the last two deviations, clamped to ``[0, 0.99]``.

    A factor exactly equal to zero makes the whole product zero; evaluation
    stops there with ``tail_bound = 0``.
    """
    value = complex(1.0)
    prev_dev = None
    for n in range(1, tol.max_terms + 1):
        factor = complex(term(n))
        if not cmath.isfinite(factor):
            raise InvalidFactor(f"factor {n} is not finite: {factor!r}")
        if factor == 0:
            return ProductResult(0j, n, 0.0)
        value *= factor
        dev = abs(factor - 1.0)
        if dev < tol.eps_product:
            if prev_dev is None or prev_dev == 0.0:
                ratio = 0.0
            else:
                ratio = min(max(dev / prev_dev, 0.0), _MAX_RATIO)
            return ProductResult(value, n, abs(value) * dev / (1.0 - ratio))
        prev_dev = dev
    raise NonConvergent(
        f"product not converged after {tol.max_terms} terms "
        f"(last |factor - 1| = {prev_dev:.3e} >= {tol.eps_product:.1e})"
    )
