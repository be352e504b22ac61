"""States, eigenvalue supports, support graphs, average states, periodicity."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .spectral import SpectralDecomposition, transition_matrix

PSD_TOL = 1e-10
DEFAULT_SUPPORT_TOL = 1e-8


@dataclass(frozen=True)
class StateMatrix:
    """Real symmetric PSD matrix representing an (unnormalized) state."""

    entries: np.ndarray = field(repr=False)
    normalized: bool = False

    def __post_init__(self) -> None:
        M = np.asarray(self.entries, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("state matrix must be square")
        if not np.allclose(M, M.T):
            raise ValueError("state matrix must be symmetric")
        if np.linalg.eigvalsh(M).min() < -PSD_TOL:
            raise ValueError("state matrix must be positive semidefinite")
        if self.normalized and abs(np.trace(M) - 1.0) > PSD_TOL:
            raise ValueError("normalized state must have trace 1")
        M = M.copy()
        M.flags.writeable = False
        object.__setattr__(self, "entries", M)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def to_density(self) -> "StateMatrix":
        tr = float(np.trace(self.entries))
        if tr <= 0:
            raise ValueError("cannot normalize a traceless state")
        return StateMatrix(self.entries / tr, normalized=True)


def subset_state(S: Iterable[int], n: int) -> StateMatrix:
    """Diagonal 0/1 indicator state D_S, raw (unnormalized)."""
    S = set(int(v) for v in S)
    if not S:
        raise ValueError("subset must be nonempty")
    if min(S) < 0 or max(S) >= n:
        raise ValueError("vertex out of range")
    d = np.zeros(n)
    d[list(S)] = 1.0
    return StateMatrix(np.diag(d))


def vertex_state(a: int, n: int) -> StateMatrix:
    return subset_state({a}, n)


def _state_array(rho: StateMatrix | np.ndarray) -> np.ndarray:
    return rho.entries if isinstance(rho, StateMatrix) else np.asarray(rho)


def _support_threshold(rho: np.ndarray, tol: float | None) -> float:
    if tol is not None:
        return tol
    return DEFAULT_SUPPORT_TOL * max(float(np.abs(rho).max()), 1e-300)


def eigenvalue_support(D: SpectralDecomposition, rho: StateMatrix | np.ndarray,
                       tol: float | None = None) -> set[tuple[float, float]]:
    """Pairs (theta_r, theta_s) with E_r rho E_s nonzero (above tol)."""
    M = _state_array(rho)
    if M.shape[0] != D.n:
        raise ValueError("dimension mismatch")
    threshold = _support_threshold(M, tol)
    pairs = set()
    products = [E @ M for E in D.projectors]
    for r in range(D.m):
        for s in range(D.m):
            if np.abs(products[r] @ D.projectors[s]).max() > threshold:
                pairs.add((D.eigenvalues[r], D.eigenvalues[s]))
    return pairs


@dataclass(frozen=True)
class SupportGraph:
    """Graph on the distinct eigenvalues induced by a state's support."""

    vertices: tuple[float, ...]
    loops: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def components(self) -> list[set[int]]:
        """Connected components over vertices that carry a loop or an edge."""
        active = set(self.loops)
        for r, s in self.edges:
            active |= {r, s}
        adj: dict[int, set[int]] = {v: set() for v in active}
        for r, s in self.edges:
            adj[r].add(s)
            adj[s].add(r)
        out, seen = [], set()
        for v in sorted(active):
            if v in seen:
                continue
            comp, stack = {v}, [v]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(comp)
        return out

    def isolated_loopless(self) -> set[int]:
        active = set(self.loops)
        for r, s in self.edges:
            active |= {r, s}
        return set(range(len(self.vertices))) - active

    def is_complete_with_loops(self, comp: set[int]) -> bool:
        if not comp <= self.loops:
            return False
        return all((min(r, s), max(r, s)) in self.edges
                   for r in comp for s in comp if r < s)


def support_graph(D: SpectralDecomposition, rho: StateMatrix | np.ndarray,
                  tol: float | None = None) -> SupportGraph:
    pairs = eigenvalue_support(D, rho, tol)
    index = {th: r for r, th in enumerate(D.eigenvalues)}
    loops, edges = set(), set()
    for th_r, th_s in pairs:
        r, s = index[th_r], index[th_s]
        if r == s:
            loops.add(r)
        else:
            edges.add((min(r, s), max(r, s)))
    return SupportGraph(tuple(D.eigenvalues), frozenset(loops),
                        frozenset(edges))


def average_state(D: SpectralDecomposition,
                  rho: StateMatrix | np.ndarray) -> np.ndarray:
    """Time-averaged state: sum_r E_r rho E_r."""
    M = _state_array(rho)
    out = np.zeros_like(M, dtype=float)
    for E in D.projectors:
        out += E @ M @ E
    return out


def is_periodic(D: SpectralDecomposition, rho: StateMatrix | np.ndarray,
                t: float, tol: float = 1e-8) -> bool:
    """True iff U(t) commutes with the state."""
    M = _state_array(rho)
    U = transition_matrix(D, t).entries
    return bool(np.abs(U @ M - M @ U).max() < tol)


def support_divisibility_check(support: Iterable[tuple[float, float]],
                               delta: int, tol: float = 1e-8) -> bool:
    """True iff (theta_r - theta_s)/sqrt(delta) is an integer for all pairs."""
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    root = math.sqrt(delta)
    for th_r, th_s in support:
        q = (th_r - th_s) / root
        if abs(q - round(q)) > tol:
            return False
    return True


def support_graph_to_dot(G: SupportGraph,
                         labels: list[str] | None = None,
                         colors: dict[int, str] | None = None,
                         name: str = "support") -> str:
    """DOT rendering with loops; eigenvalues as labels."""
    lines = [f"graph {name} {{"]
    for r, th in enumerate(G.vertices):
        label = labels[r] if labels else f"{th:.6g}"
        attrs = [f'label="{label}"']
        if colors and r in colors:
            attrs += ["style=filled", f'fillcolor="{colors[r]}"']
        lines.append(f"  {r} [{', '.join(attrs)}];")
    for r in sorted(G.loops):
        lines.append(f"  {r} -- {r};")
    for r, s in sorted(G.edges):
        lines.append(f"  {r} -- {s};")
    lines.append("}")
    return "\n".join(lines)
