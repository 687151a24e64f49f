"""Matrix-valued Laurent polynomial symbols with exact coefficient algebra.

A symbol is a finite sum ``S(z) = sum_k S_k z**k`` with complex matrix
coefficients, understood as a function on the unit circle.  Products,
adjoints and isometry classification all work at the coefficient level,
so algebraic identities are exact (no circle sampling involved); only
rank profiles and pointwise completions sample the circle.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

DEFAULT_CLASSIFY_TOL = 1e-10
DEFAULT_RANK_TOL = 1e-8


class IsometryKind(Enum):
    ZERO = "zero"
    NONE = "none"
    ISOMETRY = "isometry_valued"
    COISOMETRY = "coisometry_valued"
    UNITARY = "unitary_valued"
    PARTIAL_ISOMETRY = "partial_isometry_valued"


@dataclass(frozen=True, eq=False)
class LaurentSymbol:
    """Finite matrix Laurent polynomial.

    ``coeffs`` has shape ``(nk, rows, cols)``; ``coeffs[i]`` is the
    coefficient of ``z**(kmin + i)``.  Canonical form: the extreme
    coefficients are nonzero unless the symbol is identically zero,
    which is stored with ``kmin == 0`` and a single zero coefficient.
    """

    rows: int
    cols: int
    kmin: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape != (self.coeffs.shape[0], self.rows, self.cols):
            raise ValueError(
                f"coefficient stack shape {self.coeffs.shape} does not match "
                f"{self.rows}x{self.cols}"
            )

    @property
    def kmax(self) -> int:
        return self.kmin + self.coeffs.shape[0] - 1

    @property
    def bandwidth(self) -> int:
        return self.kmax - self.kmin

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def coeff(self, k: int) -> np.ndarray:
        """Coefficient of z**k (zero matrix outside the stored band)."""
        if self.kmin <= k <= self.kmax:
            return self.coeffs[k - self.kmin]
        return np.zeros((self.rows, self.cols), dtype=complex)

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.coeffs)) <= tol)

    def is_analytic(self, tol: float = 0.0) -> bool:
        """True when every coefficient with negative index vanishes."""
        return self.anti_analytic_weight() <= tol

    def anti_analytic_weight(self) -> float:
        """Largest coefficient magnitude carried by negative indices."""
        cut = min(-self.kmin, self.coeffs.shape[0])
        if cut <= 0:
            return 0.0
        return float(np.max(np.abs(self.coeffs[:cut])))

    def eval_at(self, z: complex) -> np.ndarray:
        """Evaluate sum_k S_k z**k; intended for unit-modulus z."""
        acc = np.zeros((self.rows, self.cols), dtype=complex)
        for i in range(self.coeffs.shape[0]):
            acc += self.coeffs[i] * z ** (self.kmin + i)
        return acc

    def adjoint(self) -> "LaurentSymbol":
        """Pointwise adjoint on the circle: coefficient k becomes coeff(-k)^H."""
        flipped = self.coeffs[::-1].conj().transpose(0, 2, 1)
        return _canonical(self.cols, self.rows, -self.kmax, flipped)

    def conj_arg(self) -> "LaurentSymbol":
        """Substitute conjugate argument: S(z) -> S(zbar), index negation only."""
        return _canonical(self.rows, self.cols, -self.kmax, self.coeffs[::-1].copy())

    def entry_conj(self) -> "LaurentSymbol":
        """Entrywise conjugate-transpose of every coefficient (no index flip)."""
        return _canonical(self.cols, self.rows, self.kmin,
                          self.coeffs.conj().transpose(0, 2, 1))

    def max_abs_coeff(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def __matmul__(self, other: "LaurentSymbol") -> "LaurentSymbol":
        return symbol_mul(self, other)

    def __add__(self, other: "LaurentSymbol") -> "LaurentSymbol":
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        kmin = min(self.kmin, other.kmin)
        kmax = max(self.kmax, other.kmax)
        out = np.zeros((kmax - kmin + 1, self.rows, self.cols), dtype=complex)
        out[self.kmin - kmin:self.kmax - kmin + 1] += self.coeffs
        out[other.kmin - kmin:other.kmax - kmin + 1] += other.coeffs
        return _canonical(self.rows, self.cols, kmin, out)

    def __neg__(self) -> "LaurentSymbol":
        return _canonical(self.rows, self.cols, self.kmin, -self.coeffs)

    def __sub__(self, other: "LaurentSymbol") -> "LaurentSymbol":
        return self + (-other)

    def __mul__(self, scalar: complex) -> "LaurentSymbol":
        return _canonical(self.rows, self.cols, self.kmin, self.coeffs * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return (f"LaurentSymbol({self.rows}x{self.cols}, "
                f"degrees [{self.kmin}, {self.kmax}])")


def _canonical(rows: int, cols: int, kmin: int, coeffs: np.ndarray) -> LaurentSymbol:
    """Trim zero extreme coefficients; collapse the zero symbol to k = 0."""
    coeffs = np.ascontiguousarray(np.asarray(coeffs, dtype=complex))
    nz = [i for i in range(coeffs.shape[0]) if np.any(coeffs[i])]
    if not nz:
        return LaurentSymbol(rows, cols, 0, np.zeros((1, rows, cols), dtype=complex))
    lo, hi = nz[0], nz[-1]
    return LaurentSymbol(rows, cols, kmin + lo, coeffs[lo:hi + 1])


def make_symbol(rows: int, cols: int, coeffs) -> LaurentSymbol:
    """Build a symbol from ``{k: matrix}`` or an iterable of (k, matrix) pairs.

    Indices must be distinct; gaps inside the band are filled with zero
    matrices.  An empty coefficient list is rejected: use zero_symbol.
    """
    items = list(coeffs.items()) if isinstance(coeffs, dict) else list(coeffs)
    if not items:
        raise ValueError("empty coefficient list; use zero_symbol for the zero symbol")
    seen = set()
    mats = {}
    for k, m in items:
        k = int(k)
        if k in seen:
            raise ValueError(f"duplicate coefficient index {k}")
        seen.add(k)
        m = np.asarray(m, dtype=complex)
        if m.size != rows * cols:
            raise ValueError(
                f"coefficient at index {k} has {m.size} entries, expected "
                f"{rows}x{cols}"
            )
        mats[k] = m.reshape(rows, cols)
    kmin, kmax = min(mats), max(mats)
    out = np.zeros((kmax - kmin + 1, rows, cols), dtype=complex)
    for k, m in mats.items():
        out[k - kmin] = m
    return _canonical(rows, cols, kmin, out)


def zero_symbol(rows: int, cols: int) -> LaurentSymbol:
    return LaurentSymbol(rows, cols, 0, np.zeros((1, rows, cols), dtype=complex))


def constant_symbol(matrix) -> LaurentSymbol:
    m = np.atleast_2d(np.asarray(matrix, dtype=complex))
    return _canonical(m.shape[0], m.shape[1], 0, m[None, :, :])


def identity_symbol(dim: int) -> LaurentSymbol:
    return constant_symbol(np.eye(dim))


def monomial_symbol(k: int, matrix) -> LaurentSymbol:
    m = np.atleast_2d(np.asarray(matrix, dtype=complex))
    return _canonical(m.shape[0], m.shape[1], k, m[None, :, :])


def symbol_mul(s1: LaurentSymbol, s2: LaurentSymbol) -> LaurentSymbol:
    """Pointwise product on the circle via coefficient convolution."""
    if s1.cols != s2.rows:
        raise ValueError(
            f"inner dimensions differ: {s1.rows}x{s1.cols} times {s2.rows}x{s2.cols}"
        )
    kmin = s1.kmin + s2.kmin
    n1, n2 = s1.coeffs.shape[0], s2.coeffs.shape[0]
    out = np.zeros((n1 + n2 - 1, s1.rows, s2.cols), dtype=complex)
    for i in range(n1):
        for j in range(n2):
            out[i + j] += s1.coeffs[i] @ s2.coeffs[j]
    return _canonical(s1.rows, s2.cols, kmin, out)


def coeff_distance(s1: LaurentSymbol, s2: LaurentSymbol) -> float:
    """Largest coefficient-wise difference max_k |S1_k - S2_k|."""
    if s1.shape != s2.shape:
        raise ValueError(f"shape mismatch {s1.shape} vs {s2.shape}")
    d = s1 - s2
    return d.max_abs_coeff()


def submatrix(s: LaurentSymbol, row_idx, col_idx) -> LaurentSymbol:
    """Extract a block by row/column index lists (or slices)."""
    sub = s.coeffs[:, row_idx, :][:, :, col_idx]
    return _canonical(sub.shape[1], sub.shape[2], s.kmin, sub)


def block_symbol(grid) -> LaurentSymbol:
    """Assemble a symbol from a 2D grid of block symbols."""
    row_heights = [row[0].rows for row in grid]
    col_widths = [blk.cols for blk in grid[0]]
    for row in grid:
        if len(row) != len(col_widths):
            raise ValueError("ragged block grid")
        for blk, w in zip(row, col_widths):
            if blk.cols != w:
                raise ValueError("inconsistent block widths")
        if any(blk.rows != row[0].rows for blk in row):
            raise ValueError("inconsistent block heights")
    kmin = min(blk.kmin for row in grid for blk in row)
    kmax = max(blk.kmax for row in grid for blk in row)
    rows, cols = sum(row_heights), sum(col_widths)
    out = np.zeros((kmax - kmin + 1, rows, cols), dtype=complex)
    r0 = 0
    for row in grid:
        c0 = 0
        for blk in row:
            lo = blk.kmin - kmin
            out[lo:lo + blk.coeffs.shape[0], r0:r0 + blk.rows, c0:c0 + blk.cols] = blk.coeffs
            c0 += blk.cols
        r0 += row[0].rows
    return _canonical(rows, cols, kmin, out)


def unit_circle_points(num_samples: int) -> np.ndarray:
    """Fixed deterministic sampling grid: num_samples-th roots of unity."""
    return np.exp(2j * np.pi * np.arange(num_samples) / num_samples)


@dataclass(frozen=True)
class IsometryClass:
    kind: IsometryKind
    initial_rank: int
    residual: float


def _left_gram(s: LaurentSymbol) -> dict[int, np.ndarray]:
    """G(m) = sum_j S_j^H S_(j+m); S isometry-valued iff G(m) = delta_m0 I."""
    n = s.coeffs.shape[0]
    gram = {}
    for m in range(-(n - 1), n):
        acc = np.zeros((s.cols, s.cols), dtype=complex)
        for j in range(n):
            if 0 <= j + m < n:
                acc += s.coeffs[j].conj().T @ s.coeffs[j + m]
        gram[m] = acc
    return gram


def classify_isometry(s: LaurentSymbol, tol: float = DEFAULT_CLASSIFY_TOL) -> IsometryClass:
    """Classify S by the exact coefficient convolutions of S^H S and S S^H.

    Partial-isometry-valued means S(z)^H S(z) is one fixed orthogonal
    projection for every unit-modulus z; isometry-valued additionally has
    the projection equal to the identity.  Coisometry/unitary use the dual
    product S(z) S(z)^H.  The residual reports the maximal violation of
    the identities backing the returned kind.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if s.is_zero():
        return IsometryClass(IsometryKind.ZERO, 0, 0.0)
    left = _left_gram(s)
    right = _left_gram(s.adjoint())
    off_left = max((np.max(np.abs(g)) for m, g in left.items() if m != 0), default=0.0)
    off_right = max((np.max(np.abs(g)) for m, g in right.items() if m != 0), default=0.0)
    g0, h0 = left[0], right[0]
    eye_l = np.eye(s.cols)
    eye_r = np.eye(s.rows)
    v_iso = max(off_left, float(np.max(np.abs(g0 - eye_l))))
    v_coiso = max(off_right, float(np.max(np.abs(h0 - eye_r))))
    v_unitary = max(v_iso, v_coiso)
    v_partial = max(
        off_left,
        float(np.max(np.abs(g0 @ g0 - g0))),
        float(np.max(np.abs(g0 - g0.conj().T))),
    )
    if v_unitary <= tol:
        return IsometryClass(IsometryKind.UNITARY, s.cols, v_unitary)
    if v_iso <= tol:
        return IsometryClass(IsometryKind.ISOMETRY, s.cols, v_iso)
    if v_coiso <= tol:
        return IsometryClass(IsometryKind.COISOMETRY, s.rows, v_coiso)
    if v_partial <= tol:
        rank = int(round(float(np.real(np.trace(g0)))))
        return IsometryClass(IsometryKind.PARTIAL_ISOMETRY, rank, v_partial)
    return IsometryClass(IsometryKind.NONE, 0, min(v_partial, v_coiso))


def accepts_partial_isometry(cls: IsometryClass) -> bool:
    """Kinds for which S(z)^H S(z) is a fixed orthogonal projection."""
    return cls.kind in (
        IsometryKind.ZERO,
        IsometryKind.ISOMETRY,
        IsometryKind.UNITARY,
        IsometryKind.PARTIAL_ISOMETRY,
    )


@dataclass(frozen=True)
class RankProfile:
    points: np.ndarray
    ranks: list[int]
    is_constant: bool


def rank_profile(s: LaurentSymbol, num_samples: int,
                 tol: float = DEFAULT_RANK_TOL) -> RankProfile:
    """Numerical rank at equally spaced circle points plus a constancy flag.

    Rank counts singular values above tol * sigma_max at each sample.
    """
    if num_samples < 2 * s.bandwidth + 1:
        raise ValueError(
            f"num_samples = {num_samples} undersamples a bandwidth-{s.bandwidth} symbol"
        )
    points = unit_circle_points(num_samples)
    ranks = []
    for z in points:
        sv = np.linalg.svd(s.eval_at(z), compute_uv=False)
        if sv.size == 0 or sv[0] == 0.0:
            ranks.append(0)
        else:
            ranks.append(int(np.sum(sv > tol * sv[0])))
    return RankProfile(points, ranks, len(set(ranks)) == 1)


@dataclass(frozen=True)
class CompletionFrame:
    points: np.ndarray
    completions: list[np.ndarray]


def complementary_completion(u: LaurentSymbol, num_samples: int,
                             tol: float = DEFAULT_RANK_TOL) -> CompletionFrame:
    """Pointwise orthonormal completion of an isometry-valued column symbol.

    At each sampled z the returned frame V(z) has rows - cols orthonormal
    columns spanning the complement of the column space of U(z), so
    [U(z) V(z)] is unitary.  Columns come from orthogonalizing the
    standard basis against U(z), always picking the largest remaining
    residual (lowest index on ties), which makes the output reproducible.
    """
    cls = classify_isometry(u)
    if cls.kind not in (IsometryKind.ISOMETRY, IsometryKind.UNITARY):
        raise ValueError(f"symbol is not isometry-valued (classified {cls.kind.value})")
    if u.rows <= u.cols:
        raise ValueError("completion needs strictly more rows than columns")
    points = unit_circle_points(num_samples)
    completions = []
    for z in points:
        uz = u.eval_at(z)
        resid = np.eye(u.rows, dtype=complex) - uz @ uz.conj().T
        cols = []
        for _ in range(u.rows - u.cols):
            norms = np.linalg.norm(resid, axis=0)
            pick = int(np.argmax(norms))
            if norms[pick] <= np.sqrt(tol):
                raise ValueError(f"rank-deficient completion at sample z = {z}")
            v = resid[:, pick] / norms[pick]
            cols.append(v)
            resid -= np.outer(v, v.conj() @ resid)
        vz = np.column_stack(cols)
        frame = np.hstack([uz, vz])
        gap = np.max(np.abs(frame.conj().T @ frame - np.eye(u.rows)))
        if gap > np.sqrt(tol):
            raise ValueError(f"completion failed unitarity check at z = {z}")
        completions.append(vz)
    return CompletionFrame(points, completions)


def make_cyclic_symbol(poles, weights, degree: int) -> LaurentSymbol:
    """Scalar anti-analytic symbol whose flipped-coefficient matrix has rank
    equal to the number of poles once the truncation is at least that deep.

    The coefficient of z**(-k) is sum_j c_j * lambda_j**(k-1) for
    1 <= k <= degree; the analytic part is zero.
    """
    poles = [complex(p) for p in poles]
    weights = [complex(w) for w in weights]
    if len(poles) != len(weights):
        raise ValueError("poles and weights must have equal length")
    if len(set(poles)) != len(poles):
        raise ValueError("poles must be distinct")
    for p in poles:
        if abs(p) >= 1.0:
            raise ValueError(f"pole {p} is not inside the open unit disk")
    if not poles or degree <= 0:
        return zero_symbol(1, 1)
    coeffs = {}
    for k in range(1, degree + 1):
        coeffs[-k] = [[sum(c * p ** (k - 1) for c, p in zip(weights, poles))]]
    return make_symbol(1, 1, coeffs)
