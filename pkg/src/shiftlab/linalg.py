"""Dense complex linear-algebra helpers shared across the package.

Everything here routes through numpy's SVD so that rank decisions,
nullspaces, column spaces and principal angles are computed the same
way in every module.
"""

import numpy as np

DEFAULT_NULL_RTOL = 1e-10


def spectral_norm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def numerical_rank(m: np.ndarray, rtol: float = DEFAULT_NULL_RTOL) -> int:
    if m.size == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def nullspace(m: np.ndarray, rtol: float = DEFAULT_NULL_RTOL) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of m."""
    if m.shape[0] == 0 or m.size == 0:
        return np.eye(m.shape[1], dtype=complex)
    u, sv, vh = np.linalg.svd(m, full_matrices=True)
    cutoff = rtol * sv[0] if sv.size and sv[0] > 0 else rtol
    rank = int(np.sum(sv > cutoff))
    return vh[rank:].conj().T


def column_space(m: np.ndarray, rtol: float = DEFAULT_NULL_RTOL) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of m."""
    if m.size == 0 or m.shape[1] == 0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, sv, _ = np.linalg.svd(m, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    rank = int(np.sum(sv > rtol * sv[0]))
    return u[:, :rank]


def orthonormal_union(blocks: list[np.ndarray], rtol: float = DEFAULT_NULL_RTOL) -> np.ndarray:
    """Orthonormal basis of the span of the stacked column blocks."""
    blocks = [b for b in blocks if b.size]
    if not blocks:
        return np.zeros((0, 0), dtype=complex)
    return column_space(np.hstack(blocks), rtol)


def intersection(b1: np.ndarray, b2: np.ndarray,
                 rtol: float = DEFAULT_NULL_RTOL) -> np.ndarray:
    """Orthonormal basis of the intersection of two column spans.

    Works on the stacked complement projectors, so no alternating
    iteration is involved: v lies in both spans iff (I - P_i) v = 0.
    """
    d = b1.shape[0]
    if b2.shape[0] != d:
        raise ValueError("ambient dimensions differ")
    eye = np.eye(d, dtype=complex)
    stacked = np.vstack([
        eye - b1 @ b1.conj().T,
        eye - b2 @ b2.conj().T,
    ])
    return nullspace(stacked, rtol)


def principal_angle_distance(b1: np.ndarray, b2: np.ndarray) -> float:
    """Sine of the largest principal angle; 1.0 when dimensions differ.

    Both arguments must have orthonormal columns over the same ambient.
    Computed through the projector residual (I - P1) B2 rather than the
    cosine Gram matrix: cosines lose small angles below sqrt(eps), the
    sine form measures coinciding subspaces at machine precision.
    """
    if b1.shape[0] != b2.shape[0]:
        raise ValueError("ambient dimensions differ")
    if b1.shape[1] != b2.shape[1]:
        return 1.0
    if b1.shape[1] == 0:
        return 0.0
    r12 = b2 - b1 @ (b1.conj().T @ b2)
    r21 = b1 - b2 @ (b2.conj().T @ b1)
    return min(1.0, max(spectral_norm(r12), spectral_norm(r21)))


def principal_angles(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    if b1.shape[0] != b2.shape[0]:
        raise ValueError("ambient dimensions differ")
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return np.zeros(0)
    sv = np.clip(np.linalg.svd(b1.conj().T @ b2, compute_uv=False), -1.0, 1.0)
    return np.arccos(sv)
