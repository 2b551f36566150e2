"""
Exact evaluators for the closed-form bounds, thresholds and inequalities of the G-intersecting
theory.

Every threshold is decided in integer arithmetic: square roots and denominators are cleared
before comparing. ``conjecture_constant`` is the only floating-point surface.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Tuple

from .core import binomial, clique_number, max_degree
from .models import BoundReport, Graph, InputError


logger = logging.getLogger(__name__)

BISECTION_TOLERANCE = 1e-9


def _c(a: int, b: int) -> int:
    """C(a, b) with the counting convention: 0 when a < 0, b < 0 or b > a."""
    if a < 0 or b < 0:
        return 0
    return binomial(a, b)


def ekr_bound(n: int, k: int) -> int:
    """C(n-1, k-1), the Erdos-Ko-Rado bound for intersecting k-uniform families."""
    if not 1 <= k <= n:
        raise InputError(f"ekr_bound needs 1 <= k <= n, got n={n}, k={k}")
    return binomial(n - 1, k - 1)


def max_intersecting_size(n: int, k: int) -> int:
    """Largest intersecting k-uniform family on n points: a star for 2k <= n, else everything."""
    if not 1 <= k <= n:
        raise InputError(f"max_intersecting_size needs 1 <= k <= n, got n={n}, k={k}")
    return binomial(n, k) if 2 * k > n else binomial(n - 1, k - 1)


def theorem2_bound(n: int, k: int, delta: int, omega: int) -> int:
    """C(n,k) - C(n-omega,k) + C(omega(delta-omega+1), 2) * C(n-omega-2, k-2)."""
    if not (n >= omega >= 1 and delta >= omega - 1 and k >= 2):
        raise InputError(
            f"theorem2_bound domain is n >= omega >= 1, delta >= omega - 1, k >= 2; "
            f"got n={n}, k={k}, delta={delta}, omega={omega}"
        )
    ring_pairs = _c(omega * (delta - omega + 1), 2)
    return _c(n, k) - _c(n - omega, k) + ring_pairs * _c(n - omega - 2, k - 2)


def cycle_formula(n: int, k: int) -> int:
    """C(n,k) - C(n-2,k) + C(n-4,k-2), the conjectured value of N(C_n, k) below the threshold."""
    if n < 6 or k < 2:
        raise InputError(f"cycle_formula needs n >= 6 and k >= 2, got n={n}, k={k}")
    return _c(n, k) - _c(n - 2, k) + _c(n - 4, k - 2)


def lemma1_threshold(n: int, delta: int, omega: int, k: int) -> bool:
    """k < sqrt(omega n / (2 (delta+1)^2)), as 2 (delta+1)^2 k^2 < omega n."""
    return 2 * (delta + 1) ** 2 * k * k < omega * n


def lemma1_max_k(n: int, delta: int, omega: int) -> int:
    """Largest k satisfying :func:`lemma1_threshold`."""
    # 2(d+1)^2 k^2 < omega n  <=>  k^2 <= (omega n - 1) // (2(d+1)^2)
    return isqrt((omega * n - 1) // (2 * (delta + 1) ** 2))


def lemma2_threshold(n: int, delta: int, k: int) -> bool:
    """k <= sqrt(n / (delta (delta+1))), as delta (delta+1) k^2 <= n."""
    if delta < 1:
        raise InputError("lemma2_threshold presumes delta >= 1; edgeless graphs are the EKR case")
    return delta * (delta + 1) * k * k <= n


def lemma2_max_k(n: int, delta: int) -> int:
    if delta < 1:
        raise InputError("lemma2_max_k presumes delta >= 1")
    return isqrt(n // (delta * (delta + 1)))


def clique_separation(n: int, delta: int, k: int) -> bool:
    """n > (delta+2) k: the full-degree vertices of an extremal family must form a clique."""
    return n > (delta + 2) * k


def tau_expression(n: int, k: int, delta: int, tau: int) -> int:
    """tau (delta+1)^tau k^(tau-1) C(n-tau, k-tau)."""
    if tau < 2 or tau > k:
        raise InputError(f"tau_expression needs 2 <= tau <= k, got tau={tau}, k={k}")
    return tau * (delta + 1) ** tau * k ** (tau - 1) * _c(n - tau, k - tau)


def tau_expression_table(n: int, k: int, delta: int) -> List[Tuple[int, int]]:
    return [(tau, tau_expression(n, k, delta, tau)) for tau in range(2, k + 1)]


def eq_six_holds(n: int, k: int, delta: int, clique_size: int) -> bool:
    """delta (delta+1) k C(n-2, k-2) < C(n-|K|-1, k-1)."""
    if k < 2:
        raise InputError(f"eq_six_holds needs k >= 2, got {k}")
    left = delta * (delta + 1) * k * _c(n - 2, k - 2)
    right = _c(n - clique_size - 1, k - 1)
    return left < right


def eq_bound_holds(n: int, k: int, delta: int, clique_size: int) -> bool:
    """Both full sides, common C(n,k) term included:

    C(n,k) - C(n-|K|,k) + C(|K|(delta-|K|+1), 2) C(n-|K|-2, k-2) < C(n,k) - C(n-|K|-1, k)
    """
    if k < 2:
        raise InputError(f"eq_bound_holds needs k >= 2, got {k}")
    s = clique_size
    left = _c(n, k) - _c(n - s, k) + _c(s * (delta - s + 1), 2) * _c(n - s - 2, k - 2)
    right = _c(n, k) - _c(n - s - 1, k)
    return left < right


def lemma1_final_inequality(n: int, k: int, delta: int, omega: int) -> bool:
    """C(n,k) - C(n-omega,k) <= 2 (delta+1)^2 k C(n-2,k-2).

    The tau >= 2 branch is ruled out exactly when this FAILS.
    """
    if k < 2:
        raise InputError(f"lemma1_final_inequality needs k >= 2, got {k}")
    return _c(n, k) - _c(n - omega, k) <= 2 * (delta + 1) ** 2 * k * _c(n - 2, k - 2)


def vertex_degree_bound(n: int, k: int, delta: int) -> int:
    """(delta+1) k C(n-2, k-2): strict bound on |H_v| for v adjacent to all of K, v not in K."""
    return (delta + 1) * k * _c(n - 2, k - 2)


def conjecture_constant(delta: int) -> float:
    """Root in (0, 1) of c - (1-c)^(delta+1), by bisection to width 1e-9.

    The boundary of the condition c - (1-c)^(delta+1) > 0 under which sparse graphs of minimum
    degree delta admit nearly complete G-intersecting families for k > cn.
    """
    if delta < 1:
        raise InputError(f"conjecture_constant needs delta >= 1, got {delta}")
    lo, hi = 0.0, 1.0
    while hi - lo > BISECTION_TOLERANCE:
        mid = (lo + hi) / 2
        if mid - (1 - mid) ** (delta + 1) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def parse_constant(text: str) -> Fraction:
    """Parse a positive rational such as ``1/3`` or ``0.25``."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"Cannot parse constant '{text}': {e}") from e
    if value <= 0:
        raise InputError(f"Constant must be positive, got {text}")
    return value


def theorem2_regime(
    n: int, k: int, delta: int, omega: int, constant: Optional[Fraction] = None
) -> bool:
    """Whether (n, k) falls under k < C sqrt(n).

    With ``constant`` given, decided exactly as k^2 < C^2 n. Without it, the regime is the one
    the proof covers: both lemma thresholds hold (lemma 2 is vacuous for delta = 0).
    """
    if constant is not None:
        return k * k < constant * constant * n
    if delta == 0:
        return lemma1_threshold(n, delta, omega, k)
    return lemma1_threshold(n, delta, omega, k) and lemma2_threshold(n, delta, k)


def build_bound_report(g: Graph, k: int, constant: Optional[Fraction] = None) -> BoundReport:
    """Evaluate every bound and threshold for (G, k)."""
    n = g.n
    if not 1 <= k <= n:
        raise InputError(f"k={k} out of range 1..{n}")
    delta = max_degree(g)
    omega, _ = clique_number(g)
    is_cycle = g.name == f"cycle:{n}"

    l1_max = lemma1_max_k(n, delta, omega)
    l2_max = lemma2_max_k(n, delta) if delta >= 1 else None
    if l2_max is None or l1_max < l2_max:
        binding = "lemma1"
    elif l2_max < l1_max:
        binding = "lemma2"
    else:
        binding = "both"

    report = BoundReport(
        graph=g.label(),
        n=n,
        k=k,
        delta=delta,
        omega=omega,
        ekr=ekr_bound(n, k),
        theorem2=theorem2_bound(n, k, delta, omega) if k >= 2 else None,
        cycle_formula=cycle_formula(n, k) if is_cycle and n >= 6 and k >= 2 else None,
        lemma1_ok=lemma1_threshold(n, delta, omega, k),
        lemma2_ok=lemma2_threshold(n, delta, k) if delta >= 1 else None,
        clique_sep_ok=clique_separation(n, delta, k),
        tau_expression=tau_expression_table(n, k, delta),
        eq_six_ok=eq_six_holds(n, k, delta, omega) if k >= 2 else None,
        eq_bound_ok=eq_bound_holds(n, k, delta, omega) if k >= 2 else None,
        lemma1_final_ok=lemma1_final_inequality(n, k, delta, omega) if k >= 2 else None,
        max_intersecting=max_intersecting_size(n, k),
        lemma1_max_k=l1_max,
        lemma2_max_k=l2_max,
        binding_threshold=binding,
        constant=constant,
        in_theorem2_regime=theorem2_regime(n, k, delta, omega, constant),
    )
    logger.info(
        f"Bound report for {g.label()}, k={k}: delta={delta}, omega={omega}, "
        f"theorem2={report.theorem2}, binding={binding}"
    )
    return report
