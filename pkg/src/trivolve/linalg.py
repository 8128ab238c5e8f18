"""Dense complex linear algebra helpers shared across modules.

Everything here operates on plain numpy arrays.  Ranks and memberships
use absolute thresholds: the targeted instances are small (dim <= ~64)
and well conditioned, so absolute tolerances are both simpler and more
reproducible than relative ones.
"""

from __future__ import annotations

import numpy as np

# Entrywise equality tolerance and rank pivot threshold.  Operations
# accept overrides; these are the package-wide defaults.
EPS = 1e-9
EPS_RANK = 1e-8


def as_complex(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def freeze(a: np.ndarray) -> np.ndarray:
    """Return a read-only copy so frozen dataclasses stay truly immutable."""
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def rref_rows(mat: np.ndarray, tol: float = EPS_RANK) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with partial pivoting by magnitude.

    Returns the reduced matrix and the list of pivot column indices.
    """
    a = as_complex(mat).copy()
    if a.ndim != 2:
        raise ValueError("rref_rows expects a matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        i = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[i, c]) <= tol:
            continue
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] / a[r, c]
        for k in range(rows):
            if k != r and abs(a[k, c]) > 0:
                a[k] = a[k] - a[k, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def echelon_rows(vectors: np.ndarray, tol: float = EPS_RANK) -> tuple[np.ndarray, list[int]]:
    """Canonical spanning set (as rows) for the row space of ``vectors``."""
    reduced, pivots = rref_rows(vectors, tol)
    return reduced[: len(pivots)], pivots


def reduce_vector(x: np.ndarray, ech_rows: np.ndarray, pivots: list[int]) -> np.ndarray:
    """Subtract the echelon-span component pinned by the pivot coordinates.

    The result is zero exactly when ``x`` lies in the row span; otherwise
    it is the canonical residual (zero at every pivot coordinate).
    """
    y = as_complex(x).copy()
    for row, p in zip(ech_rows, pivots):
        y = y - y[p] * row
    return y


def svd_rank(mat: np.ndarray, tol: float = EPS_RANK) -> int:
    if mat.size == 0:
        return 0
    s = np.linalg.svd(as_complex(mat), compute_uv=False)
    return int(np.sum(s > tol))


def column_space_and_nullspace(mat: np.ndarray, tol: float = EPS_RANK) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of the column space and null space.

    Both come from one SVD, so the rank-nullity identity
    ``cols(image) + cols(kernel) == ncols`` holds exactly.
    """
    m = as_complex(mat)
    u, s, vh = np.linalg.svd(m)
    r = int(np.sum(s > tol))
    image = u[:, :r]
    kernel = vh[r:, :].conj().T
    return image, kernel


def solve_exact(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Least-squares solve returning the solution and the worst residual."""
    a = as_complex(a)
    b = as_complex(b)
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    return x, max_abs(a @ x - b)


def affine_solution_set(a: np.ndarray, b: np.ndarray, tol: float = EPS,
                        rank_tol: float = EPS_RANK) -> tuple[np.ndarray | None, np.ndarray]:
    """Solve ``a x = b`` returning (particular, homogeneous basis columns).

    ``particular`` is None when the system is inconsistent beyond ``tol``.
    """
    x, residual = solve_exact(a, b)
    _, kernel = column_space_and_nullspace(a, rank_tol)
    if residual > tol:
        return None, kernel
    return x, kernel


def realify_conjugation_fixed_points(m: np.ndarray, tol: float = EPS_RANK) -> np.ndarray:
    """Complex basis columns of ``{x : m @ conj(x) = x}``.

    The fixed-point set of a conjugate-linear map is only a *real*
    subspace; the returned columns are complex vectors spanning it over
    the reals.
    """
    m = as_complex(m)
    n = m.shape[0]
    p, q = m.real, m.imag
    # x = u + iv; m conj(x) = (p u + q v) + i(q u - p v)
    top = np.hstack([p - np.eye(n), q])
    bot = np.hstack([q, -p - np.eye(n)])
    system = np.vstack([top, bot]).astype(float)
    _, s, vh = np.linalg.svd(system)
    r = int(np.sum(s > tol))
    real_basis = vh[r:, :].T  # real arithmetic keeps the basis real
    if real_basis.shape[1] == 0:
        return np.zeros((n, 0), dtype=complex)
    return real_basis[:n, :] + 1j * real_basis[n:, :]


def deterministic_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
