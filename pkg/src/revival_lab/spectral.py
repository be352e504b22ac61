"""Spectral decompositions A = sum_r theta_r E_r and transition matrices.

Arbitrary graphs get a numeric symmetric eigen-solve with gap-based
eigenvalue grouping. Fused-star graphs get an exact-quadratic backing:
eigenvalue squares and the projector blocks on the two centers are computed
in closed form over a single radicand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import (QuadraticValue, charpoly_int, poly_mul, square_free_part)
from .graphs import Graph, build_stellar

DEFAULT_GROUPING_TOL = 1e-9


@dataclass(frozen=True)
class StellarExact:
    """Closed-form spectral data for X(a, k, c).

    ``eigenvalue_squares`` and ``pair_blocks`` are indexed like the parent
    decomposition's eigenvalue list; blocks are the 2x2 restrictions of each
    projector to the two centers {0, 1}.
    """

    a: int
    k: int
    c: int
    mu: int
    sigma: int
    eigenvalue_squares: tuple[QuadraticValue, ...]
    pair_blocks: tuple[tuple[tuple[QuadraticValue, ...], ...], ...]

    def block_as_fractions(self, r: int) -> list[list[Fraction]]:
        return [[entry.as_fraction() for entry in row]
                for row in self.pair_blocks[r]]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues (descending) with orthogonal projectors."""

    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...] = field(repr=False)
    multiplicities: tuple[int, ...]
    backing: str = "numeric"
    tolerance: float = DEFAULT_GROUPING_TOL
    warnings: tuple[str, ...] = ()
    exact: StellarExact | None = None

    @property
    def n(self) -> int:
        return self.projectors[0].shape[0]

    @property
    def m(self) -> int:
        return len(self.eigenvalues)

    def adjacency(self) -> np.ndarray:
        A = sum(th * E for th, E in zip(self.eigenvalues, self.projectors))
        return np.asarray(A)

    def pair_block(self, r: int, a: int, b: int) -> np.ndarray:
        E = self.projectors[r]
        return E[np.ix_([a, b], [a, b])]


@dataclass(frozen=True)
class TransitionMatrix:
    """U(t) = exp(itA) evaluated through the spectral decomposition."""

    t: float
    entries: np.ndarray = field(repr=False)

    @property
    def unitarity_error(self) -> float:
        U = self.entries
        return float(np.abs(U @ U.conj().T - np.eye(U.shape[0])).max())


def _group_eigenvalues(vals: np.ndarray,
                       threshold: float) -> tuple[list[list[int]], list[str]]:
    order = np.argsort(vals)[::-1]
    sorted_vals = vals[order]
    clusters: list[list[int]] = [[0]]
    warnings: list[str] = []
    for i in range(1, len(sorted_vals)):
        gap = sorted_vals[i - 1] - sorted_vals[i]
        if gap < threshold:
            clusters[-1].append(i)
        else:
            clusters.append([i])
        if threshold / 10 <= gap <= threshold * 10:
            warnings.append(
                f"eigenvalue gap {gap:.3e} within a factor 10 of the "
                f"grouping threshold {threshold:.3e}")
    return [[int(order[i]) for i in cluster] for cluster in clusters], warnings


def decompose(X: Graph | np.ndarray,
              grouping_tolerance: float = DEFAULT_GROUPING_TOL) -> SpectralDecomposition:
    """Numeric spectral decomposition with gap-based eigenvalue grouping."""
    if grouping_tolerance <= 0:
        raise ValueError("grouping tolerance must be positive")
    A = X.adjacency() if isinstance(X, Graph) else np.asarray(X, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError("expected a nonempty square matrix")
    if not np.allclose(A, A.T):
        raise ValueError("matrix must be symmetric")
    vals, vecs = np.linalg.eigh(A)
    radius = float(np.abs(vals).max(initial=0.0))
    threshold = grouping_tolerance * max(1.0, radius)
    clusters, warnings = _group_eigenvalues(vals, threshold)
    eigenvalues, projectors, mults = [], [], []
    for cluster in clusters:
        basis = vecs[:, cluster]
        projectors.append(basis @ basis.T)
        eigenvalues.append(float(np.mean(vals[cluster])))
        mults.append(len(cluster))
    return SpectralDecomposition(tuple(eigenvalues), tuple(projectors),
                                 tuple(mults), "numeric", grouping_tolerance,
                                 tuple(warnings))


def transition_matrix(D: SpectralDecomposition, t: float) -> TransitionMatrix:
    """U(t) = sum_r exp(i t theta_r) E_r."""
    if not math.isfinite(t):
        raise ValueError("time must be finite")
    U = np.zeros((D.n, D.n), dtype=complex)
    for th, E in zip(D.eigenvalues, D.projectors):
        U += np.exp(1j * t * th) * E
    return TransitionMatrix(float(t), U)


def _stellar_exact_data(a: int, k: int, c: int) -> StellarExact:
    mu = 2 * k + a + c
    sigma = 4 * k * k + (a - c) ** 2
    root = QuadraticValue.sqrt(sigma)
    y5 = (QuadraticValue.of(mu) + root) / 2
    y3 = (QuadraticValue.of(mu) - root) / 2
    zero = QuadraticValue.of(0)

    def block(y: QuadraticValue) -> tuple[tuple[QuadraticValue, ...], ...]:
        denom = (y * 2 - mu) * 2  # +-2 sqrt(sigma)
        e00 = (y - (c + k)) / denom
        e11 = (y - (a + k)) / denom
        e01 = QuadraticValue.of(k) / denom
        return ((e00, e01), (e01, e11))

    zero_block = ((zero, zero), (zero, zero))
    # order matches descending eigenvalues: theta5, theta3, 0, -theta3, -theta5
    squares = (y5, y3, zero, y3, y5)
    blocks = (block(y5), block(y3), zero_block, block(y3), block(y5))
    return StellarExact(a, k, c, mu, sigma, squares, blocks)


def stellar_decompose(a: int, k: int, c: int) -> SpectralDecomposition:
    """Spectral decomposition of X(a, k, c) with exact-quadratic backing.

    Projectors are assembled numerically but grouped onto the five exact
    eigenvalues; the projector blocks on the centers {0, 1} and the
    eigenvalue squares are carried exactly.
    """
    if min(a, k, c) < 1:
        raise ValueError("all of a, k, c must be positive")
    exact = _stellar_exact_data(a, k, c)
    theta5 = math.sqrt(float(exact.eigenvalue_squares[0]))
    theta3 = math.sqrt(float(exact.eigenvalue_squares[1]))
    targets = [theta5, theta3, 0.0, -theta3, -theta5]

    A = build_stellar(a, k, c).adjacency()
    vals, vecs = np.linalg.eigh(A)
    assignment = [int(np.argmin([abs(v - t) for t in targets])) for v in vals]
    projectors, mults = [], []
    for r in range(5):
        cols = [i for i, g in enumerate(assignment) if g == r]
        basis = vecs[:, cols]
        projectors.append(basis @ basis.T)
        mults.append(len(cols))
    if mults[:2] != [1, 1] or mults[3:] != [1, 1]:
        raise ArithmeticError("unexpected eigenvalue multiplicities")
    return SpectralDecomposition(tuple(targets), tuple(projectors),
                                 tuple(mults), "exact-quadratic",
                                 DEFAULT_GROUPING_TOL, (), exact)


def char_poly_suite(a: int, k: int, c: int) -> dict[str, list[int]]:
    """Closed-form characteristic polynomials for X(a, k, c) and its key
    vertex-deleted subgraphs, as exact ascending integer coefficient lists.

    psi_01 is the polynomial under the square root in the fractional
    cospectrality identity; here it has integer coefficients.
    """
    if min(a, k, c) < 1:
        raise ValueError("all of a, k, c must be positive")
    mu = a + 2 * k + c
    e2 = a * k + c * k + a * c
    N = a + k + c

    def shifted(coeffs: list[int], exponent: int) -> list[int]:
        return [0] * exponent + coeffs

    return {
        "phi": shifted([e2, 0, -mu, 0, 1], N - 2),
        "phi_minus_0": shifted([-(c + k), 0, 1], N - 1),
        "phi_minus_1": shifted([-(a + k), 0, 1], N - 1),
        "phi_minus_01": shifted([1], N),
        "psi_01": shifted([k], N - 1),
    }


def exact_char_poly(X: Graph) -> list[int]:
    """Exact characteristic polynomial of a graph's adjacency matrix."""
    A = [[int(x) for x in row] for row in X.adjacency()]
    return charpoly_int(A)


def spectral_report(D: SpectralDecomposition, a: int = 0, b: int = 1) -> dict:
    """JSON-ready summary: eigenvalues, multiplicities, {a,b} blocks."""
    report: dict = {
        "backing": D.backing,
        "eigenvalues": [float(th) for th in D.eigenvalues],
        "multiplicities": list(D.multiplicities),
        "pair": [a, b],
        "pair_blocks": [[[float(x) for x in row]
                         for row in D.pair_block(r, a, b)]
                        for r in range(D.m)],
    }
    if D.exact is not None and (a, b) == (0, 1):
        report["exact_pair_blocks"] = [
            [[str(x) for x in row] for row in block]
            for block in D.exact.pair_blocks
        ]
        report["exact_eigenvalue_squares"] = [
            str(y) for y in D.exact.eigenvalue_squares
        ]
    if D.warnings:
        report["warnings"] = list(D.warnings)
    return report


def eigenvalue_text(value: float, square: QuadraticValue | None = None) -> str:
    """Render an eigenvalue, exactly when its square is a known integer."""
    if square is not None and square.is_rational:
        y = square.as_fraction()
        if y.denominator == 1:
            delta, m = square_free_part(int(y)) if y else (1, 0)
            sign = "-" if value < 0 else ""
            if delta == 1:
                return f"{sign}{m}"
            return f"{sign}{m}*sqrt({delta})" if m != 1 else f"{sign}sqrt({delta})"
    return f"{value:.6g}"


__all__ = [
    "SpectralDecomposition", "StellarExact", "TransitionMatrix",
    "decompose", "transition_matrix", "stellar_decompose",
    "char_poly_suite", "exact_char_poly", "spectral_report",
    "eigenvalue_text", "poly_mul",
]
