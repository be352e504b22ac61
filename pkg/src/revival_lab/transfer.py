"""Subset state transfer detection and polygamous fractional revival.

Subset state transfer means U(t) D_S U(-t) = D_T for 0/1 diagonal subset
indicators. Detection measures the residual directly and also evaluates the
eight structural zero blocks of U(t), the induced-subgraph cospectrality
consequences, and the per-eigenvalue transfer refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exact import charpoly_int
from .graphs import Graph, build_stellar, cartesian_product, induced_subgraph
from .revival import FRObservation, verify_fr_at
from .spectral import SpectralDecomposition, decompose, transition_matrix
from .states import StateMatrix, _state_array, subset_state
from .stellar import analyze

DEFAULT_TRANSFER_TOL = 1e-8

# zero blocks of U(t) under transfer, in the ordering
# S\T, S&T, T\S, complement (0-based row, col)
ZERO_BLOCKS = ((0, 0), (0, 1), (3, 0), (3, 1),
               (1, 2), (1, 3), (2, 2), (2, 3))


@dataclass(frozen=True)
class SubsetTransferReport:
    """Evidence for or against subset state transfer S -> T at time t."""

    S: frozenset[int]
    T: frozenset[int]
    t: float
    residual: float
    block_zero_pattern: tuple[bool, ...]
    induced_cospectral: bool
    complement_cospectral: bool
    tol: float = DEFAULT_TRANSFER_TOL

    @property
    def is_transfer(self) -> bool:
        return self.residual < self.tol

    def to_json_dict(self) -> dict:
        return {
            "S": sorted(self.S), "T": sorted(self.T), "t": self.t,
            "residual": self.residual,
            "block_zero_pattern": list(self.block_zero_pattern),
            "induced_cospectral": self.induced_cospectral,
            "complement_cospectral": self.complement_cospectral,
            "is_transfer": self.is_transfer,
        }


def _recovered_graph(D: SpectralDecomposition) -> Graph:
    A = np.round(D.adjacency()).astype(int)
    n = A.shape[0]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if A[u, v]]
    return Graph.from_edges(n, edges)


def detect_subset_transfer(D: SpectralDecomposition, S: set[int], T: set[int],
                           t: float,
                           tol: float = DEFAULT_TRANSFER_TOL) -> SubsetTransferReport:
    """Measure the residual of U(t) D_S U(-t) = D_T and the block structure."""
    S, T = set(S), set(T)
    if not S or not T:
        raise ValueError("subsets must be nonempty")
    DS = subset_state(S, D.n).entries
    DT = subset_state(T, D.n).entries
    U = transition_matrix(D, t).entries
    residual = float(np.abs(U @ DS @ U.conj().T - DT).max())

    groups = [sorted(S - T), sorted(S & T), sorted(T - S),
              sorted(set(range(D.n)) - S - T)]
    pattern = []
    for i, j in ZERO_BLOCKS:
        if not groups[i] or not groups[j]:
            pattern.append(True)
            continue
        block = U[np.ix_(groups[i], groups[j])]
        pattern.append(bool(np.abs(block).max() < tol))

    X = _recovered_graph(D)
    cosp, comp_cosp = induced_cospectrality(X, S, T)
    return SubsetTransferReport(frozenset(S), frozenset(T), float(t),
                                residual, tuple(pattern), cosp, comp_cosp, tol)


def induced_cospectrality(X: Graph, S: set[int],
                          T: set[int]) -> tuple[bool, bool]:
    """Exact cospectrality of the induced subgraphs on S vs T and on the
    complements, by integer characteristic polynomials.
    """
    S, T = set(S), set(T)

    def charpoly_of(vertices: set[int]) -> list[int]:
        if not vertices:
            return [1]
        sub, _ = induced_subgraph(X, vertices)
        return charpoly_int(sub.adjacency().astype(int).tolist())

    all_v = set(range(X.n))
    return (charpoly_of(S) == charpoly_of(T),
            charpoly_of(all_v - S) == charpoly_of(all_v - T))


def average_state_equality(D: SpectralDecomposition,
                           rho1: StateMatrix | np.ndarray,
                           rho2: StateMatrix | np.ndarray,
                           tol: float = DEFAULT_TRANSFER_TOL) -> bool:
    """True iff E_r rho1 E_r = E_r rho2 E_r for every projector."""
    M1, M2 = _state_array(rho1), _state_array(rho2)
    return all(float(np.abs(E @ M1 @ E - E @ M2 @ E).max()) < tol
               for E in D.projectors)


def induced_transfer_check(D: SpectralDecomposition,
                           rho1: StateMatrix | np.ndarray,
                           rho2: StateMatrix | np.ndarray,
                           t: float,
                           tol: float = DEFAULT_TRANSFER_TOL) -> tuple[tuple[bool, ...], bool]:
    """Per-eigenvalue transfer: U(t) rho1 E_r rho1 U(-t) = rho2 E_r rho2.

    Also returns the composite check U(t) rho1^2 U(-t) = rho2^2, which must
    hold whenever every per-eigenvalue check does.
    """
    M1, M2 = _state_array(rho1), _state_array(rho2)
    U = transition_matrix(D, t).entries
    Uc = U.conj().T
    per_r = tuple(
        bool(float(np.abs(U @ (M1 @ E @ M1) @ Uc - M2 @ E @ M2).max()) < tol)
        for E in D.projectors)
    composite = bool(
        float(np.abs(U @ (M1 @ M1) @ Uc - M2 @ M2).max()) < tol)
    return per_r, composite


@dataclass(frozen=True)
class PolygamyReport:
    """Proper FR on two overlapping pairs of K2 x X(a, k, c).

    Vertex (x, y) of the product has index x*n + y where n = a+k+c+2.
    The shared vertex is (0, 0); copies of the fused-star centers are
    (0, 0), (0, 1) and (1, 0) is the twin of (0, 0) across the K2 edge.
    """

    a: int
    k: int
    c: int
    ell: int
    tau_min: float
    twin_pair: tuple[int, int]
    twin_time: float
    twin_observation: FRObservation
    center_pair: tuple[int, int]
    center_time: float
    center_observation: FRObservation

    @property
    def is_polygamous(self) -> bool:
        tol = DEFAULT_TRANSFER_TOL
        return (self.twin_observation.is_proper(tol, 1e-3)
                and self.center_observation.is_proper(tol, 1e-3))


def polygamy_witness(a: int, k: int, c: int, ell: int) -> PolygamyReport:
    """Witness polygamous FR on K2 x X(a, k, c) for tau_min = pi/(2*ell+1).

    Proper FR holds on the two copies of vertex 0 at 2*tau_min and on the
    two fused-star centers at pi = (2*ell+1)*tau_min; both pairs share the
    vertex (0, 0).
    """
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    an = analyze(a, k, c)
    if an.verdict != "proper-FR":
        raise ValueError(f"X({a},{k},{c}) has no proper FR")
    assert an.tau_min is not None
    odd = 2 * ell + 1
    if abs(an.tau_min - math.pi / odd) > 1e-12:
        raise ValueError(
            f"tau_min of X({a},{k},{c}) is {an.tau_min:.6g}, not pi/{odd}")

    X = build_stellar(a, k, c)
    K2 = Graph.from_edges(2, [(0, 1)])
    Z = cartesian_product(K2, X)
    D = decompose(Z)
    n = X.n
    twin = (0, n)       # (0, 0) and (1, 0)
    centers = (0, 1)    # (0, 0) and (0, 1)
    twin_obs = verify_fr_at(D, *twin, 2 * an.tau_min)
    center_obs = verify_fr_at(D, *centers, math.pi)
    return PolygamyReport(a, k, c, ell, an.tau_min, twin, 2 * an.tau_min,
                          twin_obs, centers, math.pi, center_obs)


__all__ = [
    "SubsetTransferReport", "PolygamyReport", "ZERO_BLOCKS",
    "detect_subset_transfer", "induced_cospectrality",
    "average_state_equality", "induced_transfer_check", "polygamy_witness",
]
