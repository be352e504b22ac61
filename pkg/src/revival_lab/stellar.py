"""Closed-form fractional-revival analysis of the fused-star graphs X(a, k, c)
and integer-arithmetic generators for the infinite families built on them.

X(a, k, c) is two stars K_{1,a+k} and K_{1,c+k} with k leaves merged; the
centers are vertices 0 and 1. All decisions here are exact integer
arithmetic; nothing is certified numerically in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import (QuadraticValue, fermat_two_squares, is_perfect_square,
                    is_prime, square_free_part, two_adic_valuation)
from .graphs import Graph, build_star

POSITIVITY_RATIO = math.sqrt((math.sqrt(2) - 1) / (math.sqrt(2) + 1))


@dataclass(frozen=True)
class StellarAnalysis:
    """Exact derived quantities for X(a, k, c) and the FR verdict on {0, 1}.

    The two nonzero eigenvalue magnitudes are sqrt(theta3_sq) and
    sqrt(theta5_sq). When both squares are integers sharing a square-free
    part delta, they equal alpha*sqrt(delta) and beta*sqrt(delta).
    """

    a: int
    k: int
    c: int
    mu: int
    sigma: int
    theta3_sq: QuadraticValue
    theta5_sq: QuadraticValue
    delta: int | None
    alpha: int | None
    beta: int | None
    verdict: str  # no-FR | improper-FR | proper-FR
    tau_min: float | None
    min_period: float | None
    two_adic: tuple[int, int] | None

    @property
    def gamma(self) -> Fraction:
        """Fractional-cospectrality scalar for the pair (0, 1)."""
        return Fraction(self.a - self.c, self.k)

    @property
    def cospectral(self) -> bool:
        return self.a == self.c

    def to_json_dict(self) -> dict:
        return {
            "a": self.a, "k": self.k, "c": self.c,
            "mu": self.mu, "sigma": self.sigma,
            "theta3_sq": str(self.theta3_sq), "theta5_sq": str(self.theta5_sq),
            "Delta": self.delta, "alpha": self.alpha, "beta": self.beta,
            "verdict": self.verdict,
            "tau_min": self.tau_min, "min_period": self.min_period,
            "two_adic": list(self.two_adic) if self.two_adic else None,
            "gamma": f"{self.gamma.numerator}/{self.gamma.denominator}",
        }


def analyze(a: int, k: int, c: int) -> StellarAnalysis:
    """Exact FR verdict for X(a, k, c) on the centers.

    FR (at all) requires both eigenvalue squares (mu +- sqrt(sigma))/2 to be
    integers with the same square-free part delta; the revival is proper
    exactly when the quotients alpha, beta have distinct 2-adic valuations.
    """
    if min(a, k, c) < 1:
        raise ValueError("all of a, k, c must be positive")
    mu = 2 * k + a + c
    sigma = 4 * k * k + (a - c) ** 2

    def result(delta=None, alpha=None, beta=None, verdict="no-FR",
               tau=None, period=None, two_adic=None,
               t3=None, t5=None) -> StellarAnalysis:
        if t3 is None:
            root = QuadraticValue.sqrt(sigma)
            t3 = (QuadraticValue.of(mu) - root) / 2
            t5 = (QuadraticValue.of(mu) + root) / 2
        return StellarAnalysis(a, k, c, mu, sigma, t3, t5, delta, alpha,
                               beta, verdict, tau, period, two_adic)

    if not is_perfect_square(sigma):
        return result()
    s = math.isqrt(sigma)
    if (mu - s) % 2:
        return result()
    t3 = QuadraticValue.of((mu - s) // 2)
    t5 = QuadraticValue.of((mu + s) // 2)
    d3, m3 = square_free_part((mu - s) // 2)
    d5, m5 = square_free_part((mu + s) // 2)
    if d3 != d5:
        return result(t3=t3, t5=t5)
    delta, alpha, beta = d3, m3, m5
    g = math.gcd(alpha, beta)
    tau = math.pi / (g * math.sqrt(delta))
    period = 2 * tau
    two_adic = (two_adic_valuation(alpha), two_adic_valuation(beta))
    verdict = "proper-FR" if two_adic[0] != two_adic[1] else "improper-FR"
    return result(delta, alpha, beta, verdict, tau, period, two_adic, t3, t5)


def diophantine_check(a: int, k: int, c: int, delta: int, alpha: int,
                      beta: int) -> bool:
    """Exactly verify delta*(beta^2 - alpha^2) = sqrt(4k^2 + (a-c)^2) and
    delta*(alpha^2 + beta^2) = 2k + a + c.
    """
    if min(a, k, c, delta, alpha, beta) < 1:
        raise ValueError("all parameters must be positive")
    if square_free_part(delta)[1] != 1:
        raise ValueError("delta must be square-free")
    sigma = 4 * k * k + (a - c) ** 2
    lhs = delta * (beta * beta - alpha * alpha)
    return lhs * lhs == sigma and delta * (alpha * alpha + beta * beta) == 2 * k + a + c


@dataclass(frozen=True)
class FamilyRecipe:
    """Integer parameters generating a proper-FR triple (a, k, c).

    p = f**2 + g_f**2 is a prime congruent to 1 mod 4, delta is square-free,
    and p divides delta*(beta**2 - alpha**2) = p*d.
    """

    p: int
    f: int
    g_f: int
    delta: int
    alpha: int
    beta: int
    d: int

    @classmethod
    def from_parameters(cls, p: int, delta: int, alpha: int,
                        beta: int) -> "FamilyRecipe":
        if not is_prime(p) or p % 4 != 1:
            raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
        if delta < 1 or square_free_part(delta)[1] != 1:
            raise ValueError("delta must be a square-free positive integer")
        if alpha < 1 or beta < 1:
            raise ValueError("alpha and beta must be positive")
        if alpha > beta:
            alpha, beta = beta, alpha
        if alpha == beta:
            raise ValueError("alpha and beta must be distinct")
        if two_adic_valuation(alpha) == two_adic_valuation(beta):
            raise ValueError("alpha and beta need distinct 2-adic valuations")
        rem = delta * (beta * beta - alpha * alpha)
        if rem % p:
            raise ValueError(f"{p} does not divide delta*(beta^2 - alpha^2)")
        f, g_f = fermat_two_squares(p)
        return cls(p, f, g_f, delta, alpha, beta, rem // p)


def generate_family(r: FamilyRecipe) -> tuple[int, int, int]:
    """Triple (a, k, c) with proper FR at pi/(gcd(alpha, beta)*sqrt(delta)).

    Rejects recipes whose alpha/beta ratio is too small to keep a positive;
    the bound is alpha/beta > sqrt((sqrt(2)-1)/(sqrt(2)+1)), about 0.414.
    """
    a = r.delta * r.alpha ** 2 - r.g_f * r.d * (r.f - r.g_f)
    k = r.f * r.g_f * r.d
    c = r.delta * r.alpha ** 2 + r.f * r.d * (r.f - r.g_f)
    if a < 1:
        raise ValueError(
            "nonpositive a: the recipe needs alpha/beta above about "
            f"{POSITIVITY_RATIO:.3f}, got {r.alpha / r.beta:.3f}")
    return a, k, c


def generate_polygamy_triple(p: int, r: int) -> tuple[int, int, int]:
    """Triple (a, k, c) with proper FR on the centers at exactly pi/p."""
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    if r < 1:
        raise ValueError("r must be a positive integer")
    f, g_f = fermat_two_squares(p)
    a = p * p * r * r - g_f * p * (2 * r + 1) * (f - g_f)
    k = f * g_f * p * (2 * r + 1)
    c = p * p * r * r + f * p * (2 * r + 1) * (f - g_f)
    if a < 1:
        raise ValueError(f"nonpositive a for p={p}, r={r}; increase r")
    return a, k, c


def double_star_tree(a: int) -> tuple[Graph, float]:
    """Two stars K_{1,a} with their centers 0 and 1 joined by an edge.

    Returns the tree and the time 2*pi/sqrt(4a+1) at which the centers
    admit proper fractional revival.
    """
    if a < 1:
        raise ValueError("a must be positive")
    edges = [(0, 1)]
    edges += [(0, v) for v in range(2, a + 2)]
    edges += [(1, v) for v in range(a + 2, 2 * a + 2)]
    return Graph.from_edges(2 * a + 2, edges), 2 * math.pi / math.sqrt(4 * a + 1)


def k1_no_fr_check(a: int, c: int) -> bool:
    """True iff X(a, 1, c) admits no proper FR on the centers.

    The trees in the family (k = 1) never do: sigma = 4 + (a-c)^2 is a
    perfect square only when a = c, and then 2 = delta*(beta^2 - alpha^2)
    has no solution.
    """
    return analyze(a, 1, c).verdict != "proper-FR"


__all__ = [
    "StellarAnalysis", "FamilyRecipe", "analyze", "diophantine_check",
    "generate_family", "generate_polygamy_triple", "double_star_tree",
    "k1_no_fr_check", "POSITIVITY_RATIO", "build_star",
]
