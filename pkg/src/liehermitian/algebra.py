"""Structure-constant model of a Lie algebra with a left-invariant Hermitian structure.

A unitary frame e_1..e_n of (1,0) vectors determines two complex tensors:

    [e_i, e_k]    = sum_j  C^j_{ik} e_j
    [e_i, ebar_k] = sum_j ( conj(D^i_{jk}) e_j - D^k_{ji} ebar_j )

C is antisymmetric in its lower pair, D carries no symmetry.  Both are
stored densely as complex arrays indexed ``[j, i, k]`` with the upper
index first.  Indices are 0-based internally; documentation, file
formats and printed output are 1-based.

The Jacobi identity is equivalent to three quadratic residuals (one in
C alone, two mixing C and D); construction records them but never
rejects an algebra, so that deliberately invalid data can still be
inspected.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    AntisymmetryViolation,
    DimensionMismatch,
    DuplicateEntry,
    IndexOutOfRange,
    NotUnitary,
)

MAX_DIM = 16


def max_abs(arr):
    """Largest absolute value of an array, 0.0 for empty input."""
    a = np.asarray(arr)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def default_tolerance(*arrays):
    """Scale-aware default comparison tolerance: 1e-9 * (1 + max magnitude)."""
    m = 0.0
    for a in arrays:
        m = max(m, max_abs(a))
    return 1e-9 * (1.0 + m)


@dataclass(frozen=True, eq=False)
class Algebra:
    """Immutable container for one algebra in one unitary frame.

    Build instances through :func:`make_algebra` or :func:`build_general`;
    ``jacobi`` holds the three residuals (CC, CD, CDbar) measured at
    construction time.
    """

    n: int
    C: np.ndarray
    D: np.ndarray
    tol: float
    jacobi: tuple

    @property
    def jacobi_max(self):
        return max(self.jacobi)

    @property
    def is_valid(self):
        return self.jacobi_max <= self.tol

    def __repr__(self):
        return (
            f"Algebra(n={self.n}, tol={self.tol:.3e}, "
            f"jacobi_max={self.jacobi_max:.3e})"
        )


def _freeze(arr):
    arr = np.ascontiguousarray(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def jacobi_tensors(n, C, D):
    """The three Jacobi tensors whose simultaneous vanishing is the
    Jacobi identity for the complexified bracket.

    Returns rank-4 arrays indexed [i, j, k, l]; callers normally only
    need their max-abs entries (see :func:`jacobi_residual`).
    """
    Dc = np.conj(D)
    jcc = (
        np.einsum("rij,lrk->ijkl", C, C)
        + np.einsum("rjk,lri->ijkl", C, C)
        + np.einsum("rki,lrj->ijkl", C, C)
    )
    jcd = (
        np.einsum("rik,ljr->ijkl", C, D)
        + np.einsum("rji,lrk->ijkl", D, D)
        - np.einsum("rjk,lri->ijkl", D, D)
    )
    jcdbar = (
        np.einsum("rik,rjl->ijkl", C, Dc)
        - np.einsum("jrk,irl->ijkl", C, Dc)
        + np.einsum("jri,krl->ijkl", C, Dc)
        - np.einsum("lri,kjr->ijkl", D, Dc)
        + np.einsum("lrk,ijr->ijkl", D, Dc)
    )
    return jcc, jcd, jcdbar


def jacobi_residual(a):
    """Max-abs residual of each Jacobi tensor, as a (cc, cd, cdbar) triple."""
    jcc, jcd, jcdbar = jacobi_tensors(a.n, a.C, a.D)
    return (max_abs(jcc), max_abs(jcd), max_abs(jcdbar))


def make_algebra(n, C, D, tol=None):
    """Assemble an Algebra from dense structure-constant arrays.

    C must be antisymmetric in its last two axes up to roundoff; the
    exact antisymmetrization is stored.  ``tol`` defaults to the
    scale-aware value of :func:`default_tolerance`.
    """
    if not (2 <= n <= MAX_DIM):
        raise DimensionMismatch(f"n must be between 2 and {MAX_DIM}, got {n}")
    C = np.asarray(C, dtype=complex)
    D = np.asarray(D, dtype=complex)
    if C.shape != (n, n, n) or D.shape != (n, n, n):
        raise DimensionMismatch(
            f"expected shape {(n, n, n)}, got C{C.shape} D{D.shape}"
        )
    if not (np.all(np.isfinite(C.view(float))) and np.all(np.isfinite(D.view(float)))):
        raise ValueError("structure constants must be finite")
    scale = max(max_abs(C), max_abs(D))
    asym = max_abs(C + C.transpose(0, 2, 1))
    if asym > 1e-12 * (1.0 + scale):
        raise AntisymmetryViolation(
            f"C is not antisymmetric in its lower index pair (defect {asym:.3e})"
        )
    C = 0.5 * (C - C.transpose(0, 2, 1))
    if tol is None:
        tol = default_tolerance(C, D)
    C = _freeze(C)
    D = _freeze(D)
    jcc, jcd, jcdbar = jacobi_tensors(n, C, D)
    jac = (max_abs(jcc), max_abs(jcd), max_abs(jcdbar))
    return Algebra(n=n, C=C, D=D, tol=float(tol), jacobi=jac)


def _check_entry_indices(n, j, i, k):
    for idx in (j, i, k):
        if not isinstance(idx, (int, np.integer)):
            raise IndexOutOfRange(f"indices must be integers, got {idx!r}")
        if not 1 <= idx <= n:
            raise IndexOutOfRange(f"index {idx} outside 1..{n}")


def build_general(n, C_entries=(), D_entries=(), tol=None):
    """Build an Algebra from sparse 1-based entries.

    Each entry is a tuple ``(j, i, k, value)`` assigning C^j_{ik} or
    D^j_{ik}.  For C, the mirror entry (j, k, i) is filled with the
    negated value; supplying both members of a mirror pair with
    inconsistent values, or a nonzero diagonal (i == k), raises
    AntisymmetryViolation.  An exact duplicate key raises DuplicateEntry
    even if the values agree.
    """
    if not (2 <= n <= MAX_DIM):
        raise DimensionMismatch(f"n must be between 2 and {MAX_DIM}, got {n}")
    C = np.zeros((n, n, n), dtype=complex)
    D = np.zeros((n, n, n), dtype=complex)
    seen_c = {}
    seen_d = set()
    for j, i, k, v in C_entries:
        _check_entry_indices(n, j, i, k)
        v = complex(v)
        if not (np.isfinite(v.real) and np.isfinite(v.imag)):
            raise ValueError(f"non-finite C entry at ({j},{i},{k})")
        key = (j, i, k)
        if key in seen_c:
            raise DuplicateEntry(f"C entry ({j},{i},{k}) given twice")
        if i == k and v != 0:
            raise AntisymmetryViolation(
                f"C^{j}_{{{i}{k}}} must vanish on the diagonal"
            )
        mirror = (j, k, i)
        if mirror in seen_c and seen_c[mirror] != -v:
            raise AntisymmetryViolation(
                f"C entries ({j},{i},{k}) and ({j},{k},{i}) are not negatives"
            )
        seen_c[key] = v
        C[j - 1, i - 1, k - 1] = v
        if i != k:
            C[j - 1, k - 1, i - 1] = -v
    for j, i, k, v in D_entries:
        _check_entry_indices(n, j, i, k)
        v = complex(v)
        if not (np.isfinite(v.real) and np.isfinite(v.imag)):
            raise ValueError(f"non-finite D entry at ({j},{i},{k})")
        key = (j, i, k)
        if key in seen_d:
            raise DuplicateEntry(f"D entry ({j},{i},{k}) given twice")
        seen_d.add(key)
        D[j - 1, i - 1, k - 1] = v
    return make_algebra(n, C, D, tol=tol)


def unimodularity_defect(a):
    """Vector w with w_i = sum_r (C^r_{ri} + D^r_{ri}); zero iff unimodular."""
    return np.einsum("rri->i", a.C + a.D)


def check_unitary(U, n=None, tol=1e-9):
    """Validate that U is an n-by-n unitary matrix; raises NotUnitary."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {U.shape}")
    if n is not None and U.shape[0] != n:
        raise NotUnitary(f"expected a {n}x{n} matrix, got {U.shape}")
    defect = max_abs(U @ U.conj().T - np.eye(U.shape[0]))
    if defect > tol:
        raise NotUnitary(f"matrix is not unitary (defect {defect:.3e})")
    return U


def change_frame(a, U):
    """Structure constants of the same algebra in the rotated unitary frame.

    The new frame is ``etilde_i = sum_p U[i, p] e_p``.  Both tensors pick
    up one U factor per lower index and one conjugated factor on the
    upper index.  Applying U and then conj(U).T returns to the original
    frame.
    """
    U = check_unitary(U, n=a.n, tol=max(1e-12 * a.n, a.tol))
    Uc = np.conj(U)
    C = np.einsum("jm,ip,kq,mpq->jik", Uc, U, U, a.C)
    D = np.einsum("jm,ip,kq,mpq->jik", Uc, U, U, a.D)
    return make_algebra(a.n, C, D, tol=a.tol)


def _complexified_bracket_tensor(a):
    """Bracket of the real algebra on the basis (e_1..e_n, ebar_1..ebar_n).

    Returns B with B[g, x, y] = coefficient of basis vector g in
    [basis_x, basis_y].
    """
    n = a.n
    C, D = a.C, a.D
    Dc = np.conj(D)
    B = np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
    # [e_i, e_j] = C^k_{ij} e_k
    B[:n, :n, :n] = C.transpose(0, 1, 2)
    # [ebar_i, ebar_j] = conj(C^k_{ij}) ebar_k
    B[n:, n:, n:] = np.conj(C)
    # [e_i, ebar_j] = conj(D^i_{kj}) e_k - D^j_{ki} ebar_k
    for i in range(n):
        for j in range(n):
            B[:n, i, n + j] = Dc[i, :, j]
            B[n:, i, n + j] = -D[j, :, i]
            B[:n, n + j, i] = -Dc[i, :, j]
            B[n:, n + j, i] = D[j, :, i]
    return B


def lower_central_dims(a, tol=None):
    """Dimensions of the lower central series of the complexified algebra.

    Returns the list [dim g^1, dim g^2, ...] where g^1 = [g, g] and
    g^{m+1} = [g, g^m], stopping once the dimension stabilizes or hits 0.
    """
    if tol is None:
        tol = a.tol
    n2 = 2 * a.n
    B = _complexified_bracket_tensor(a)
    scale = 1.0 + max_abs(B)

    def _span(vectors):
        # orthonormal basis of the column span, rank cut at scaled tol
        if vectors.size == 0:
            return np.zeros((n2, 0), dtype=complex)
        u, s, _ = np.linalg.svd(vectors, full_matrices=False)
        r = int(np.sum(s > tol * scale * max(1.0, s[0] if s.size else 0.0)))
        return u[:, :r]

    current = np.eye(n2, dtype=complex)
    dims = []
    for _ in range(n2 + 1):
        img = np.einsum("gxy,ys->gxs", B, current).reshape(n2, -1)
        nxt = _span(img)
        dims.append(nxt.shape[1])
        if nxt.shape[1] == 0 or nxt.shape[1] == current.shape[1]:
            break
        current = nxt
    return dims


def is_nilpotent(a, tol=None):
    """Whether the underlying real Lie algebra is nilpotent.

    Decided numerically from the lower central series; rank cuts use a
    scale-aware tolerance, so inputs should be well away from the
    nilpotent/non-nilpotent boundary.
    """
    dims = lower_central_dims(a, tol=tol)
    return dims[-1] == 0
