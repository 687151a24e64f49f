"""Finite truncations of Toeplitz, Hankel, shift and mixed block operators.

Truncating an infinite banded operator corrupts only the top degrees, so
every matrix built here records an *exactness window*: the largest input
degree for which the truncated action coincides with the untruncated
operator.  Identity checks compress inputs to that window, which turns
operator identities into exactly testable finite assertions.

Basis ordering is degree-major, fiber-minor throughout: the coordinate
of degree k, fiber i sits at flat index (k - deg_lo) * fiber_dim + i.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import spectral_norm
from .symbols import LaurentSymbol, unit_circle_points

HARDY = "hardy"
LEBESGUE = "lebesgue"


@dataclass(frozen=True)
class TruncatedSpace:
    """Degree window of a vector-valued Hardy or two-sided function space."""

    fiber_dim: int
    deg_lo: int
    deg_hi: int
    kind: str

    def __post_init__(self):
        if self.kind not in (HARDY, LEBESGUE):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == HARDY and self.deg_lo != 0:
            raise ValueError("hardy truncations start at degree 0")
        if self.deg_lo > self.deg_hi:
            raise ValueError("empty degree window")
        if self.fiber_dim <= 0:
            raise ValueError("fiber dimension must be positive")

    @staticmethod
    def hardy(fiber_dim: int, n: int) -> "TruncatedSpace":
        return TruncatedSpace(fiber_dim, 0, n, HARDY)

    @staticmethod
    def lebesgue(fiber_dim: int, n: int) -> "TruncatedSpace":
        return TruncatedSpace(fiber_dim, -n, n, LEBESGUE)

    @property
    def num_degrees(self) -> int:
        return self.deg_hi - self.deg_lo + 1

    @property
    def dim(self) -> int:
        return self.fiber_dim * self.num_degrees

    def index(self, k: int, fiber: int = 0) -> int:
        if not (self.deg_lo <= k <= self.deg_hi):
            raise IndexError(f"degree {k} outside [{self.deg_lo}, {self.deg_hi}]")
        return (k - self.deg_lo) * self.fiber_dim + fiber

    def degrees(self) -> range:
        return range(self.deg_lo, self.deg_hi + 1)

    def window_indices(self, w: int) -> np.ndarray:
        """Flat indices of the degrees kept by window w.

        Hardy windows keep degrees [0, w]; two-sided windows keep
        degrees [-w, w] (clipped to the stored range).  w < 0 is empty.
        """
        if w < 0:
            return np.zeros(0, dtype=int)
        lo = max(self.deg_lo, -w if self.kind == LEBESGUE else 0)
        hi = min(self.deg_hi, w)
        if lo > hi:
            return np.zeros(0, dtype=int)
        out = []
        for k in range(lo, hi + 1):
            base = (k - self.deg_lo) * self.fiber_dim
            out.extend(range(base, base + self.fiber_dim))
        return np.asarray(out, dtype=int)


@dataclass(frozen=True)
class ProductSpace:
    """Ordered direct sum of truncated spaces."""

    parts: tuple[TruncatedSpace, ...]

    @staticmethod
    def of(*parts: TruncatedSpace) -> "ProductSpace":
        return ProductSpace(tuple(parts))

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.parts)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for p in self.parts:
            out.append(acc)
            acc += p.dim
        return out

    def part_slice(self, i: int) -> slice:
        off = self.offsets()
        return slice(off[i], off[i] + self.parts[i].dim)

    def index(self, part: int, k: int, fiber: int = 0) -> int:
        return self.offsets()[part] + self.parts[part].index(k, fiber)

    def window_indices(self, w: int) -> np.ndarray:
        out = []
        for off, p in zip(self.offsets(), self.parts):
            out.append(off + p.window_indices(w))
        return np.concatenate(out) if out else np.zeros(0, dtype=int)

    def windowed(self, w: int) -> "ProductSpace":
        """The product space carved out by window w (same part layout)."""
        parts = []
        for p in self.parts:
            if p.kind == HARDY:
                parts.append(TruncatedSpace(p.fiber_dim, 0, min(w, p.deg_hi), HARDY))
            else:
                parts.append(TruncatedSpace(p.fiber_dim, max(p.deg_lo, -w),
                                            min(p.deg_hi, w), LEBESGUE))
        return ProductSpace(tuple(parts))


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace of a (product of) truncated space(s).

    ``window`` is bookkeeping only: the degree window the columns were
    computed on, carried along so downstream comparisons default to it.
    """

    ambient: ProductSpace
    basis: np.ndarray
    window: int | None = None

    def __post_init__(self):
        if self.basis.shape[0] != self.ambient.dim:
            raise ValueError(
                f"basis rows {self.basis.shape[0]} != ambient dim {self.ambient.dim}"
            )
        if self.dim:
            gram_err = np.max(np.abs(
                self.basis.conj().T @ self.basis - np.eye(self.dim)))
            if gram_err > 1e-10:
                raise ValueError(f"basis columns not orthonormal (error {gram_err:.2e})")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense matrix between truncated spaces with an exactness window.

    ``exact_window = w`` means: for inputs supported on the domain's
    window-w degrees, applying the matrix agrees with the untruncated
    operator (whose output then also fits inside the codomain).  A value
    of -1 means no input degree is exact at this truncation.
    """

    domain: ProductSpace
    codomain: ProductSpace
    entries: np.ndarray
    exact_window: int
    provenance: str

    def __post_init__(self):
        if self.entries.shape != (self.codomain.dim, self.domain.dim):
            raise ValueError(
                f"entries shape {self.entries.shape} does not match spaces "
                f"({self.codomain.dim}, {self.domain.dim})"
            )

    def window_columns(self, w: int | None = None) -> np.ndarray:
        """Submatrix keeping only domain columns inside the window."""
        w = self.exact_window if w is None else w
        return self.entries[:, self.domain.window_indices(w)]

    def compose(self, other: "OperatorMatrix", provenance: str = "composite",
                degree_growth: int = 0) -> "OperatorMatrix":
        """self after other; the window shrinks by other's degree growth."""
        if other.codomain.dim != self.domain.dim:
            raise ValueError("composition dimension mismatch")
        window = min(other.exact_window, self.exact_window - degree_growth)
        return OperatorMatrix(other.domain, self.codomain,
                              self.entries @ other.entries, max(window, -1),
                              provenance)


def _hardy_pair(sym: LaurentSymbol, n: int) -> tuple[ProductSpace, ProductSpace]:
    dom = ProductSpace.of(TruncatedSpace.hardy(sym.cols, n))
    cod = ProductSpace.of(TruncatedSpace.hardy(sym.rows, n))
    return dom, cod


def toeplitz_op(sym: LaurentSymbol, n: int) -> OperatorMatrix:
    """Truncation of h |-> P[S h] on degree-n Hardy windows.

    Degree block (j, i) of the matrix is the coefficient of z**(j-i).
    Exact window: n - max(kmax, 0), since the symbol raises degrees by
    at most kmax.
    """
    if n < max(abs(sym.kmin), sym.kmax):
        raise ValueError(
            f"truncation n = {n} is smaller than the symbol band "
            f"[{sym.kmin}, {sym.kmax}]"
        )
    dom, cod = _hardy_pair(sym, n)
    r, c = sym.rows, sym.cols
    ent = np.zeros((cod.dim, dom.dim), dtype=complex)
    for k in range(sym.kmin, sym.kmax + 1):
        blk = sym.coeff(k)
        if not np.any(blk):
            continue
        for i in range(n + 1):
            j = i + k
            if 0 <= j <= n:
                ent[j * r:(j + 1) * r, i * c:(i + 1) * c] = blk
    window = n - max(sym.kmax, 0)
    return OperatorMatrix(dom, cod, ent, window, "toeplitz")


def hankel_op(sym: LaurentSymbol, n: int) -> OperatorMatrix:
    """Truncation of h |-> PJ[S h], with J sending z**k to z**(-k-1).

    Degree block (j, i) is the coefficient of z**(-(j+i+1)), so only the
    anti-analytic part of the symbol enters.  The convention is pinned by
    the scalar example S = zbar, whose matrix is E00 (h |-> h(0)).  When
    the anti-analytic band is deeper than n+1 the matrix is still formed
    (top-left corner of the infinite matrix) but no input is exact.
    """
    dom, cod = _hardy_pair(sym, n)
    r, c = sym.rows, sym.cols
    ent = np.zeros((cod.dim, dom.dim), dtype=complex)
    for j in range(n + 1):
        for i in range(n + 1):
            k = -(j + i + 1)
            if k >= sym.kmin:
                blk = sym.coeff(k)
                if np.any(blk):
                    ent[j * r:(j + 1) * r, i * c:(i + 1) * c] = blk
    depth = max(0, -sym.kmin)
    window = n if depth <= n + 1 else -1
    return OperatorMatrix(dom, cod, ent, window, "hankel")


@dataclass(frozen=True)
class ShiftOps:
    forward: OperatorMatrix
    backward: OperatorMatrix
    flip: OperatorMatrix


def shift_ops(space: TruncatedSpace) -> ShiftOps:
    """Truncated multiplication by z, its adjoint, and the degree flip.

    The flip J sends z**k to z**(-k-1); a Hardy window [0, n] lands
    inside the two-sided window [-n-1, n] (embedded), a two-sided window
    [lo, hi] lands onto [-hi-1, -lo-1] (a bijection, so J*J = I there).
    """
    f = space.fiber_dim
    prod = ProductSpace.of(space)
    dim = space.dim
    fwd = np.zeros((dim, dim), dtype=complex)
    for k in space.degrees():
        if k + 1 <= space.deg_hi:
            a, b = space.index(k + 1), space.index(k)
            fwd[a:a + f, b:b + f] = np.eye(f)
    if space.kind == HARDY:
        fwd_window = space.deg_hi - 1
        bwd_window = space.deg_hi
    else:
        fwd_window = min(space.deg_hi - 1, -space.deg_lo)
        bwd_window = min(space.deg_hi, -space.deg_lo - 1)
    forward = OperatorMatrix(prod, prod, fwd, fwd_window, "shift")
    backward = OperatorMatrix(prod, prod, fwd.conj().T, bwd_window, "shift")

    if space.kind == HARDY:
        flip_space = TruncatedSpace(f, -space.deg_hi - 1, space.deg_hi, LEBESGUE)
    else:
        flip_space = TruncatedSpace(f, -space.deg_hi - 1, -space.deg_lo - 1, LEBESGUE)
    flip_prod = ProductSpace.of(flip_space)
    flp = np.zeros((flip_space.dim, dim), dtype=complex)
    for k in space.degrees():
        j = -k - 1
        if flip_space.deg_lo <= j <= flip_space.deg_hi:
            flp[flip_space.index(j):flip_space.index(j) + f,
                space.index(k):space.index(k) + f] = np.eye(f)
    flip_window = space.deg_hi if space.kind == HARDY else \
        min(space.deg_hi, -space.deg_lo - 1)
    flip = OperatorMatrix(prod, flip_prod, flp, flip_window, "flip")
    return ShiftOps(forward, backward, flip)


def _require_analytic(sym: LaurentSymbol, name: str) -> None:
    if not sym.is_analytic():
        raise ValueError(
            f"block {name} must be analytic; found coefficients down to "
            f"index {sym.kmin}"
        )


def _block_shapes(top_left, top_right, bot_left, bot_right):
    dim_e = top_left.rows
    dim_f = bot_right.rows
    expected = {
        "top-left": (dim_e, dim_e), "top-right": (dim_e, dim_f),
        "bottom-left": (dim_f, dim_e), "bottom-right": (dim_f, dim_f),
    }
    got = {
        "top-left": top_left.shape, "top-right": top_right.shape,
        "bottom-left": bot_left.shape, "bottom-right": bot_right.shape,
    }
    for key in expected:
        if got[key] != expected[key]:
            raise ValueError(
                f"{key} block has shape {got[key]}, expected {expected[key]}"
            )
    return dim_e, dim_f


def _mixed_space(dim_e: int, dim_f: int, n: int) -> ProductSpace:
    return ProductSpace.of(TruncatedSpace.hardy(dim_e, n),
                           TruncatedSpace.hardy(dim_f, n))


def _assemble(blocks) -> np.ndarray:
    return np.vstack([np.hstack([b.entries for b in row]) for row in blocks])


def build_range_operator(a: LaurentSymbol, b: LaurentSymbol, c: LaurentSymbol,
                         d: LaurentSymbol, n: int) -> OperatorMatrix:
    """Mixed block operator [T_a, T_b; H_c, H_d] on paired Hardy windows.

    Block roles: a maps the first fiber to itself and b the second fiber
    into the first (both must be analytic); c and d feed the Hankel row
    and may have any band.  Ranges of these operators realize invariant
    subspaces of the forward-plus-backward shift.
    """
    dim_e, dim_f = _block_shapes(a, b, c, d)
    _require_analytic(a, "A")
    _require_analytic(b, "B")
    dom = cod = _mixed_space(dim_e, dim_f, n)
    t_a, t_b = toeplitz_op(a, n), toeplitz_op(b, n)
    h_c, h_d = hankel_op(c, n), hankel_op(d, n)
    ent = _assemble([[t_a, t_b], [h_c, h_d]])
    window = min(t_a.exact_window, t_b.exact_window,
                 h_c.exact_window, h_d.exact_window)
    return OperatorMatrix(dom, cod, ent, window, "mixed_range")


def build_kernel_operator(c: LaurentSymbol, d: LaurentSymbol, a: LaurentSymbol,
                          b: LaurentSymbol, n: int) -> OperatorMatrix:
    """Mixed block operator [H_c*, T_a*; H_d*, T_b*] on paired Hardy windows.

    Block roles mirror the square symbol [c, d; a, b] acting on the two
    fibers: a and b must be analytic.  Kernels of these operators realize
    invariant subspaces of the forward-plus-backward shift.
    """
    dim_e = c.rows
    dim_f = b.rows
    expected = {
        "C": ((dim_e, dim_e), c), "D": ((dim_e, dim_f), d),
        "A": ((dim_f, dim_e), a), "B": ((dim_f, dim_f), b),
    }
    for name, (shape, blk) in expected.items():
        if blk.shape != shape:
            raise ValueError(f"block {name} has shape {blk.shape}, expected {shape}")
    _require_analytic(a, "A")
    _require_analytic(b, "B")
    dom = cod = _mixed_space(dim_e, dim_f, n)
    # H_S^* equals the Hankel matrix of the symbol with each coefficient
    # conjugate-transposed in place; T_S^* is the Toeplitz matrix of S^*.
    h_c_adj = hankel_op(c.entry_conj(), n)
    h_d_adj = hankel_op(d.entry_conj(), n)
    t_a_adj = toeplitz_op(a.adjoint(), n)
    t_b_adj = toeplitz_op(b.adjoint(), n)
    ent = _assemble([[h_c_adj, t_a_adj], [h_d_adj, t_b_adj]])
    window = min(h_c_adj.exact_window, h_d_adj.exact_window,
                 t_a_adj.exact_window, t_b_adj.exact_window)
    return OperatorMatrix(dom, cod, ent, window, "mixed_kernel")


@dataclass(frozen=True)
class SvdReport:
    norm: float
    singular_values: np.ndarray
    kernel_basis: SubspaceBasis
    range_basis: SubspaceBasis
    is_partial_isometry: bool


def _binary_singular_values(m: np.ndarray, tol: float) -> bool | None:
    """None when there is nothing to test (empty window gives no evidence)."""
    if m.size == 0:
        return None
    sv = np.linalg.svd(m, compute_uv=False)
    return bool(np.all((sv <= tol) | (np.abs(sv - 1.0) <= tol)))


def svd_analysis(op: OperatorMatrix, tol: float = 1e-8) -> SvdReport:
    """Full SVD of the truncated matrix.

    Norm, singular values and kernel/range bases come from the full
    matrix.  The partial-isometry flag compresses to the exactness
    window and asks for every singular value within tol of 0 or 1; the
    compression is applied on the domain side and, failing that, on the
    codomain side (an operator is a partial isometry iff its adjoint
    is, and depending on which of the kernel or co-kernel is graded by
    degree only one of the two restrictions stays binary).  An empty
    window certifies nothing, so the flag is then False.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    u, sv, vh = np.linalg.svd(op.entries)
    norm = float(sv[0]) if sv.size else 0.0
    cutoff = tol * max(norm, 1.0)
    rank = int(np.sum(sv > cutoff))
    kernel = SubspaceBasis(op.domain, vh[rank:].conj().T)
    rng = SubspaceBasis(op.codomain, u[:, :rank])
    domain_side = _binary_singular_values(op.window_columns(), tol)
    rows = op.codomain.window_indices(op.exact_window)
    codomain_side = _binary_singular_values(op.entries[rows, :], tol)
    flag = bool(domain_side) or bool(codomain_side)
    return SvdReport(norm, sv, kernel, rng, flag)


def mixed_shift_pair(dim_e: int, dim_f: int, n: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """(forward (+) backward, forward (+) forward) on the paired Hardy window."""
    se = shift_ops(TruncatedSpace.hardy(dim_e, n))
    sf = shift_ops(TruncatedSpace.hardy(dim_f, n))
    space = _mixed_space(dim_e, dim_f, n)
    ze = np.zeros((se.forward.entries.shape[0], sf.forward.entries.shape[1]))
    x = np.block([[se.forward.entries, ze], [ze.T, sf.backward.entries]])
    y = np.block([[se.forward.entries, ze], [ze.T, sf.forward.entries]])
    x_op = OperatorMatrix(space, space, x, n - 1, "block")
    y_op = OperatorMatrix(space, space, y, n - 1, "block")
    return x_op, y_op


def intertwining_residual(op: OperatorMatrix, kind: str, n: int) -> float:
    """Residual of the shift intertwining identity on the exact window.

    kind "range":  || X V - V Y ||  with X = fwd (+) bwd, Y = fwd (+) fwd;
    kind "kernel": || W X - Y* W ||.
    Both identities hold exactly for the untruncated operators, so the
    window-compressed residual of a correct truncation is at float level.
    """
    if kind not in ("range", "kernel"):
        raise ValueError(f"unknown intertwining kind {kind!r}")
    dim_e = op.domain.parts[0].fiber_dim
    dim_f = op.domain.parts[1].fiber_dim
    if op.domain.parts[0].deg_hi != n or op.codomain.parts[0].deg_hi != n:
        raise ValueError("operator truncation does not match n")
    x, y = mixed_shift_pair(dim_e, dim_f, n)
    if kind == "range":
        resid = x.entries @ op.entries - op.entries @ y.entries
        w = min(op.exact_window, n) - 1
    else:
        resid = op.entries @ x.entries - y.entries.conj().T @ op.entries
        w = min(op.exact_window, n - 1)
    if w < 0:
        raise ValueError("empty exactness window: truncation too small")
    cols = op.domain.window_indices(w)
    return spectral_norm(resid[:, cols])


@dataclass(frozen=True)
class NehariBracket:
    lower_bounds: list[tuple[int, float]]
    upper_bounds: list[float]
    gap: float | None


def nehari_bounds(a: LaurentSymbol, b: LaurentSymbol, c: LaurentSymbol,
                  d: LaurentSymbol, n_list: list[int],
                  candidate_completions: list[tuple[LaurentSymbol, LaurentSymbol]] | None = None,
                  num_samples: int | None = None) -> NehariBracket:
    """Bracket the distance-type norm of the mixed range operator.

    Lower bounds: the window-compressed spectral norm of the truncated
    operator, nondecreasing along the truncation sweep.  Upper bounds:
    for each analytic candidate pair (L1, L2), the sampled sup-norm of
    [a, b; c - L1, d - L2] over the circle, since subtracting analytic
    symbols from the Hankel row does not change the operator.
    """
    if list(n_list) != sorted(n_list):
        raise ValueError("n_list must be ascending")
    lower = []
    for n in n_list:
        op = build_range_operator(a, b, c, d, n)
        lower.append((n, spectral_norm(op.window_columns())))
    upper = []
    candidates = candidate_completions or []
    for l1, l2 in candidates:
        _require_analytic(l1, "L1")
        _require_analytic(l2, "L2")
        if l1.shape != c.shape or l2.shape != d.shape:
            raise ValueError("candidate completion shapes must match C and D")
        c_mod = c - l1
        d_mod = d - l2
        band = max(s.bandwidth for s in (a, b, c_mod, d_mod))
        m = num_samples if num_samples is not None else 4 * band + 1
        sup = 0.0
        for z in unit_circle_points(m):
            full = np.block([
                [a.eval_at(z), b.eval_at(z)],
                [c_mod.eval_at(z), d_mod.eval_at(z)],
            ])
            sup = max(sup, spectral_norm(full))
        upper.append(sup)
    gap = None
    if upper and lower:
        gap = min(upper) - lower[-1][1]
    return NehariBracket(lower, upper, gap)


def export_matrix(op: OperatorMatrix) -> dict:
    """Row-major structured-text form for cross-checks with external tools."""
    ent = np.asarray(op.entries, dtype=complex)
    return {
        "rows": int(ent.shape[0]),
        "cols": int(ent.shape[1]),
        "re": [float(v) for v in ent.real.ravel(order="C")],
        "im": [float(v) for v in ent.imag.ravel(order="C")],
    }


def import_matrix(payload: dict) -> np.ndarray:
    rows, cols = int(payload["rows"]), int(payload["cols"])
    re = np.asarray(payload["re"], dtype=float).reshape(rows, cols)
    im = np.asarray(payload["im"], dtype=float).reshape(rows, cols)
    return re + 1j * im
