"""Upper bounds on the repeated-row multiplicity and the quadruple calculus.

Everything here is exact rational arithmetic; no floats.  The main bound is
m <= lambda*n^2 / (k(n-1)+1); the refined family counts rows by how many
zeros they carry (either alpha or alpha+1 at equality) and sometimes beats
the floor of the main bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .designs import InfeasibleError, Quadruple


class BoundNotApplicableError(ValueError):
    """The refined bound's denominator is non-positive for this alpha."""


def _check_domain(k: int, n: int, lam: int) -> None:
    if k < 2 or n < 2 or lam < 1:
        raise InfeasibleError(f"need k >= 2, n >= 2, lambda >= 1, got ({k}, {n}, {lam})")


def rao_repeat_bound(k: int, n: int, lam: int) -> Fraction:
    """Exact upper bound lambda*n^2 / (k(n-1)+1) on the multiplicity."""
    _check_domain(k, n, lam)
    return Fraction(lam * n * n, k * (n - 1) + 1)


def floor_bound(k: int, n: int, lam: int) -> int:
    """Integer part of the multiplicity bound; equality defines m-optimal."""
    _check_domain(k, n, lam)
    return (lam * n * n) // (k * (n - 1) + 1)


def refined_bound(k: int, n: int, lam: int, alpha: int) -> Fraction:
    """Zero-count refinement of the multiplicity bound for a given alpha >= 1.

    Returns lambda*(k(k-1) - 2*alpha*k*n + (alpha^2+alpha)*n^2) over
    k(k-1) - 2*alpha*k + alpha^2 + alpha, exactly.  Raises
    BoundNotApplicableError when that denominator is not positive, in which
    case the underlying counting argument constrains nothing.
    """
    _check_domain(k, n, lam)
    if alpha < 1:
        raise InfeasibleError(f"alpha must be a positive integer, got {alpha}")
    den = k * (k - 1) - 2 * alpha * k + alpha * alpha + alpha
    if den <= 0:
        raise BoundNotApplicableError(f"bound not applicable for this alpha ({alpha})")
    num = lam * (k * (k - 1) - 2 * alpha * k * n + (alpha * alpha + alpha) * n * n)
    return Fraction(num, den)


@dataclass(frozen=True)
class BoundReport:
    """All multiplicity bounds for one parameter triple.

    ``refined`` maps each applicable alpha in 1..k to its exact bound;
    ``vacuous`` lists the alphas whose bound is >= lambda*n^2 (true but
    useless); ``not_applicable`` the alphas with non-positive denominator.
    ``best_refined`` is the minimum over the applicable, non-vacuous alphas.
    """

    k: int
    n: int
    lam: int
    rao_bound: Fraction
    floor: int
    refined: dict[int, Fraction]
    vacuous: tuple[int, ...]
    not_applicable: tuple[int, ...]
    best_alpha: int | None
    best_refined: Fraction | None


def make_bound_report(k: int, n: int, lam: int) -> BoundReport:
    """Evaluate every bound; alpha is searched over 1..k (zeros per row
    cannot exceed k, and beyond that the denominator shrinks to zero)."""
    _check_domain(k, n, lam)
    rao = rao_repeat_bound(k, n, lam)
    total = lam * n * n
    refined: dict[int, Fraction] = {}
    vacuous: list[int] = []
    dead: list[int] = []
    best_alpha, best = None, None
    for alpha in range(1, k + 1):
        try:
            val = refined_bound(k, n, lam, alpha)
        except BoundNotApplicableError:
            dead.append(alpha)
            continue
        refined[alpha] = val
        if val >= total:
            vacuous.append(alpha)
            continue
        if best is None or val < best:
            best_alpha, best = alpha, val
    return BoundReport(k=k, n=n, lam=lam, rao_bound=rao, floor=floor_bound(k, n, lam),
                       refined=refined, vacuous=tuple(vacuous),
                       not_applicable=tuple(dead), best_alpha=best_alpha,
                       best_refined=best)


def feasible_quadruples(k: int, n: int, lambda_max: int) -> list[Quadruple]:
    """All feasible (m, lambda, k, n) with lambda <= lambda_max, ascending in
    lambda.  Empty whenever (k-1)/n is not a positive integer."""
    if k < 2 or n < 2:
        raise InfeasibleError(f"need k >= 2 and n >= 2, got ({k}, {n})")
    if (k - 1) % n != 0 or (k - 1) // n < 1:
        return []
    denom = k * (n - 1) + 1
    out = []
    for lam in range(1, lambda_max + 1):
        if (lam * n * n) % denom == 0:
            out.append(Quadruple(m=(lam * n * n) // denom, lam=lam, k=k, n=n))
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    x = 2
    while x * x <= n:
        if n % x == 0:
            return False
        x += 1
    return True


def basic_quadruple(k: int, n: int) -> Quadruple | None:
    """The unique basic quadruple with m > 1 for these (k, n), if any.

    The minimal feasible (m, lambda) is the reduced form of n^2/(k(n-1)+1);
    every other feasible pair is an integer multiple of it, so only the
    minimal one can be coprime.  For prime n the result is cross-checked
    against the closed form m = n, k = ns+1, lambda = (n-1)s+1 with
    gcd(n, s-1) = 1.
    """
    if k < 2 or n < 2:
        raise InfeasibleError(f"need k >= 2 and n >= 2, got ({k}, {n})")
    if (k - 1) % n != 0 or (k - 1) // n < 1:
        return None
    ratio = Fraction(n * n, k * (n - 1) + 1)
    m, lam = ratio.numerator, ratio.denominator
    result = Quadruple(m=m, lam=lam, k=k, n=n) if m > 1 else None
    if _is_prime(n):
        s = (k - 1) // n
        closed = None
        if gcd(n, s - 1) == 1:
            closed = Quadruple(m=n, lam=(n - 1) * s + 1, k=k, n=n)
        if result != closed:
            raise RuntimeError(
                f"prime-alphabet classification mismatch at (k={k}, n={n}): "
                f"reduction gives {result}, closed form gives {closed}")
    return result
