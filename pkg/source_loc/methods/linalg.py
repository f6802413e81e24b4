"""Sparse operators and dense kernels used by the localization methods."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.sparse import csr_matrix, diags, identity

from ..core.errors import ConvergenceError, LocalizationError
from ..core.graph import Graph
from ..utils.config import DEFAULT_EIG_MAX_ITER, DEFAULT_EIG_TOL, EIG_SHIFT, MAX_DENSE_INFECTED

logger = logging.getLogger(__name__)


def node_array(g: Graph, nodes) -> np.ndarray:
    """Sorted node indices from a boolean indicator or an index collection."""
    array = np.asarray(nodes)
    if array.dtype == bool:
        if array.shape != (g.n,):
            raise LocalizationError(f"indicator must have length {g.n}")
        return np.flatnonzero(array)
    return np.unique(array.astype(np.int64))


def node_indicator(g: Graph, nodes) -> np.ndarray:
    vector = np.zeros(g.n, dtype=bool)
    vector[node_array(g, nodes)] = True
    return vector


def _inverse_sqrt(values: np.ndarray) -> np.ndarray:
    result = np.zeros(len(values), dtype=np.float64)
    positive = values > 0
    result[positive] = 1.0 / np.sqrt(values[positive])
    return result


def normalized_adjacency(g: Graph) -> csr_matrix:
    """S = D^-1/2 A D^-1/2; rows and columns of isolated nodes are zero."""
    scale = diags(_inverse_sqrt(g.degrees.astype(np.float64)))
    return (scale @ g.adjacency @ scale).tocsr()


def normalized_adjacency_apply(g: Graph, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != g.n:
        raise LocalizationError(f"vector length {x.shape[0]} does not match n={g.n}")
    return normalized_adjacency(g) @ x


def normalized_adjacency_with_self_loops(g: Graph) -> csr_matrix:
    """Â = D̃^-1/2 (A + I) D̃^-1/2 with D̃ = D + I."""
    scale = diags(1.0 / np.sqrt(g.degrees.astype(np.float64) + 1.0))
    return (scale @ (g.adjacency + identity(g.n, format="csr")) @ scale).tocsr()


def laplacian_submatrix(g: Graph, infected) -> np.ndarray:
    """Graph Laplacian restricted to the given nodes (ascending order).

    The diagonal keeps the full-graph degree; off-diagonal entries are -1
    for adjacent pairs inside the set.
    """
    nodes = node_array(g, infected)
    if nodes.size == 0:
        raise LocalizationError("infected set is empty")
    if nodes.size > MAX_DENSE_INFECTED:
        raise LocalizationError(f"{nodes.size} infected nodes exceed the dense limit of {MAX_DENSE_INFECTED}")
    block = -g.adjacency[nodes][:, nodes].toarray()
    block[np.diag_indices_from(block)] = g.degrees[nodes]
    return block


@dataclass(frozen=True, eq=False)
class EigenResult:
    value: float
    vector: np.ndarray
    iterations: int
    residual: float
    degenerate: bool


def _initial_vector(size: int) -> np.ndarray:
    # Mildly favours low indices so degenerate eigenspaces resolve toward them.
    vector = 1.0 + 0.01 / np.arange(1, size + 1, dtype=np.float64)
    return vector / np.linalg.norm(vector)


def _shifted_solver(matrix: np.ndarray, shift: float):
    shifted = matrix - shift * np.eye(matrix.shape[0])
    try:
        factor = scipy.linalg.cho_factor(shifted)
        return lambda rhs: scipy.linalg.cho_solve(factor, rhs)
    except scipy.linalg.LinAlgError:
        factor = scipy.linalg.lu_factor(shifted)
        return lambda rhs: scipy.linalg.lu_solve(factor, rhs)


def smallest_eigvec(matrix: np.ndarray, tol: float = DEFAULT_EIG_TOL,
                    max_iter: int = DEFAULT_EIG_MAX_ITER, shift: float = EIG_SHIFT) -> EigenResult:
    """Smallest eigenpair of a symmetric PSD matrix by shifted inverse iteration.

    Converged when ||Mv - λv||₂ < tol. The returned vector has unit norm and
    its largest-magnitude entry is positive. ``degenerate`` reports a second
    eigenvalue indistinguishable from the first.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise LocalizationError("matrix must be square")
    if not np.allclose(matrix, matrix.T):
        raise LocalizationError("matrix must be symmetric")

    size = matrix.shape[0]
    solve = _shifted_solver(matrix, shift)
    vector = _initial_vector(size)
    value, residual = float(vector @ matrix @ vector), np.inf
    for iteration in range(1, max_iter + 1):
        vector = solve(vector)
        vector /= np.linalg.norm(vector)
        product = matrix @ vector
        value = float(vector @ product)
        residual = float(np.linalg.norm(product - value * vector))
        if residual < tol:
            break
    else:
        raise ConvergenceError("inverse iteration did not converge", residual, max_iter)

    pivot = int(np.argmax(np.abs(vector)))
    if vector[pivot] < 0:
        vector = -vector
    degenerate = _has_close_second(matrix, solve, vector, value)
    if degenerate:
        logger.debug("Smallest eigenvalue %.6g is degenerate", value)
    return EigenResult(value=value, vector=vector, iterations=iteration, residual=residual,
                       degenerate=degenerate)


def _has_close_second(matrix: np.ndarray, solve, vector: np.ndarray, value: float,
                      steps: int = 50, gap: Optional[float] = None) -> bool:
    """Deflated inverse iteration; Rayleigh quotients on the complement bound λ₂ from above."""
    if matrix.shape[0] < 2:
        return False
    gap = 1e-8 * max(1.0, abs(value)) if gap is None else gap
    other = _initial_vector(matrix.shape[0])[::-1].copy()
    for _ in range(steps):
        other -= (other @ vector) * vector
        norm = np.linalg.norm(other)
        if norm == 0.0:
            return False
        other /= norm
        if float(other @ matrix @ other) - value <= gap:
            return True
        other = solve(other)
    return False
