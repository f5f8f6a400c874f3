"""Algebras with a J-invariant abelian ideal of real codimension two.

The adapted frame puts the ideal on the last n-1 complex directions.
Five parameters remain: a real number ``lam`` (normalized nonnegative by
a phase rotation of the transverse direction), a coupling vector ``v``
and three (n-1) x (n-1) matrices ``X``, ``Y``, ``Z``.  Unlike the
codimension-one family these are not free: the Jacobi identity is the
pair of quadratic matrix equations checked by
:func:`integrability_residuals`.

Besides the closed-form predicates and curvature blocks, this module
carries the torsion-parallel machinery: the residual system of
:func:`c2_btp_residuals`, the three normal-form generators
``make_btpv1`` / ``make_btpv2`` / ``make_btpv0``, the classifier
:func:`classify_btp` that reduces any Bismut-torsion-parallel metric of
the family to one of those normal forms, and the paired factorization
:func:`paired_takagi_factor` the classifier rests on.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.optimize

from .algebra import change_frame, default_tolerance, make_algebra, max_abs
from .errors import (
    CrossCheckFailure,
    DimensionMismatch,
    IntegrabilityViolation,
    NegativeLambda,
    NotCompatible,
    NotUnimodular,
    ParameterDomain,
    PatternMismatch,
    Singular,
)
from . import hermitian


@dataclass(frozen=True)
class Codim2Data:
    """Raw parameters (lam, v, X, Y, Z) of the codimension-two family.

    Construction validates shapes and the sign of ``lam`` but not the
    integrability equations; those are enforced by :func:`build_codim2`
    so that deliberately broken data can still be inspected.
    """

    n: int
    lam: float
    v: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray
    tol: float = None

    def __post_init__(self):
        if self.n < 2:
            raise DimensionMismatch("need n >= 2, got %d" % self.n)
        lam = complex(self.lam)
        if lam.imag != 0.0:
            raise ParameterDomain("lam must be real, got %r" % self.lam)
        if lam.real < 0.0:
            raise NegativeLambda(
                "lam must be nonnegative in this frame convention; "
                "rotate the transverse direction first (lam = %r)" % self.lam
            )
        object.__setattr__(self, "lam", float(lam.real))
        m = self.n - 1
        v = np.asarray(self.v, dtype=complex).reshape(-1)
        if v.shape != (m,):
            raise DimensionMismatch("v must have length %d, got %s" % (m, v.shape))
        mats = {}
        for name in ("X", "Y", "Z"):
            M = np.asarray(getattr(self, name), dtype=complex)
            if M.shape != (m, m):
                raise DimensionMismatch(
                    "%s must be %d x %d, got %s" % (name, m, m, M.shape)
                )
            M.setflags(write=False)
            mats[name] = M
        v.setflags(write=False)
        object.__setattr__(self, "v", v)
        for name, M in mats.items():
            object.__setattr__(self, name, M)
        if self.tol is None:
            object.__setattr__(
                self,
                "tol",
                default_tolerance([self.lam], v, mats["X"], mats["Y"], mats["Z"]),
            )


def integrability_residuals(d):
    """The two matrix equations equivalent to the Jacobi identity.

    Returns (M1, M2) where

        M1 = lam (X* + Y) + [X*, Y] - Z conj(Z)
        M2 = lam Z - (Z tX + Y Z)

    and the data is integrable exactly when both vanish.
    """
    X, Y, Z, lam = d.X, d.Y, d.Z, d.lam
    Xs = X.conj().T
    M1 = lam * (Xs + Y) + (Xs @ Y - Y @ Xs) - Z @ np.conj(Z)
    M2 = lam * Z - (Z @ X.T + Y @ Z)
    return M1, M2


def build_codim2(d):
    """Assemble the algebra, refusing non-integrable parameters.

    Nonzero blocks in 1-based notation, transverse direction first:

        C^j_1i = X_ij
        D^1_11 = lam    D^1_i1 = v_i    D^j_i1 = Y_ij    D^1_ij = Z_ij

    for 2 <= i, j <= n, plus the antisymmetric mirror of C.
    """
    M1, M2 = integrability_residuals(d)
    worst = max(max_abs(M1), max_abs(M2))
    if worst > d.tol:
        raise IntegrabilityViolation(
            "parameters violate the compatibility equations (residual %.3e)"
            % worst,
            residuals=(M1, M2),
        )
    n = d.n
    C = np.zeros((n, n, n), dtype=complex)
    D = np.zeros((n, n, n), dtype=complex)
    C[1:, 0, 1:] = d.X.T
    C[1:, 1:, 0] = -d.X.T
    D[0, 0, 0] = d.lam
    D[0, 1:, 0] = d.v
    D[1:, 1:, 0] = d.Y.T
    D[0, 1:, 1:] = d.Z
    return make_algebra(n, C, D, tol=d.tol)


def extract_codim2(a):
    """Read (lam, v, X, Y, Z) off an algebra already in the adapted frame.

    PatternMismatch names the first structure constant, as a 1-based
    (tensor, j, i, k) tuple, that does not fit the family's sparsity
    pattern.  A negative transverse parameter raises NegativeLambda
    rather than silently rotating the frame.
    """
    n, tol = a.n, a.tol
    C, D = a.C, a.D
    for j in range(n):
        for i in range(n):
            for k in range(n):
                ok_c = j >= 1 and ((i == 0 and k >= 1) or (k == 0 and i >= 1))
                if not ok_c and abs(C[j, i, k]) > tol:
                    raise PatternMismatch(
                        "C entry outside the codimension-two pattern",
                        offending=("C", j + 1, i + 1, k + 1),
                    )
                if j == 0:
                    ok_d = (i, k) == (0, 0) or (i >= 1 and k == 0) or (i >= 1 and k >= 1)
                else:
                    ok_d = i >= 1 and k == 0
                if not ok_d and abs(D[j, i, k]) > tol:
                    raise PatternMismatch(
                        "D entry outside the codimension-two pattern",
                        offending=("D", j + 1, i + 1, k + 1),
                    )
    lam = D[0, 0, 0]
    if abs(lam.imag) > tol:
        raise PatternMismatch(
            "D^1_11 must be real for this family", offending=("D", 1, 1, 1)
        )
    lam = lam.real
    if -tol <= lam < 0.0:
        lam = 0.0
    return Codim2Data(
        n=n,
        lam=lam,
        v=np.array(D[0, 1:, 0]),
        X=np.array(C[1:, 0, 1:]).T,
        Y=np.array(D[1:, 1:, 0]).T,
        Z=np.array(D[0, 1:, 1:]),
        tol=tol,
    )


def from_almost_abelian(d):
    """Embed codimension-one data into this family: X = -A*, Y = A, Z = 0.

    The embedding is always integrable.  It requires lam >= 0, matching
    the frame convention here; data with negative lam raises
    NegativeLambda.
    """
    A = d.A
    m = d.n - 1
    return Codim2Data(
        n=d.n,
        lam=d.lam,
        v=np.array(d.v),
        X=-A.conj().T,
        Y=np.array(A),
        Z=np.zeros((m, m), dtype=complex),
        tol=d.tol,
    )


def c2_scalars(d):
    """Chern scalar pair and Bismut scalar in closed form.

    All three hold for any integrable parameters, unimodular or not.
    """
    lam, v, X, Y, Z = d.lam, d.v, d.X, d.Y, d.Z
    vsq = float(np.vdot(v, v).real)
    s = -lam * (2.0 * lam + 2.0 * np.trace(Y).real)
    s_hat = -2.0 * lam * lam - vsq - float(np.trace(Z @ np.conj(Z)).real)
    s_b = -2.0 * vsq - lam * (2.0 * lam + 2.0 * np.trace(X).real)
    return {"s": s, "s_hat": s_hat, "s_b": s_b}


def c2_ricci_closed(d):
    """The three Ricci contractions of the Chern curvature, in closed form."""
    n, lam, v, X, Y, Z = d.n, d.lam, d.v, d.X, d.Y, d.Z
    scal = c2_scalars(d)
    vsq = float(np.vdot(v, v).real)

    ric1 = np.zeros((n, n), dtype=complex)
    ric1[0, 0] = scal["s"]

    ric2 = np.zeros((n, n), dtype=complex)
    znorm2 = float(np.sum(np.abs(Z) ** 2))
    ric2[0, 0] = -(vsq + znorm2 + 2.0 * lam * lam)
    row = -(v @ Z.conj().T + np.conj(v) @ Y)
    ric2[0, 1:] = row
    ric2[1:, 0] = np.conj(row)
    comm = Y @ Y.conj().T - Y.conj().T @ Y
    ric2[1:, 1:] = (
        np.outer(v, np.conj(v)) + Z @ Z.conj().T + comm - lam * (Y + Y.conj().T)
    )

    ric3 = np.zeros((n, n), dtype=complex)
    ric3[0, 0] = scal["s_hat"]
    ric3[0, 1:] = -(v @ np.conj(Z))
    ric3[1:, 0] = -(Y.conj().T @ v)
    return ric1, ric2, ric3


def c2_bismut_blocks(d):
    """(1,1) and (2,0) coefficient matrices of the Bismut Ricci form.

    The (1,1) block is Hermitian with support on the first row and
    column only; its corner is the Bismut scalar.  The (2,0) block is
    antisymmetric with first row -(X v).
    """
    n, v, X, Y, Z = d.n, d.v, d.X, d.Y, d.Z
    scal = c2_scalars(d)
    M = np.zeros((n, n), dtype=complex)
    M[0, 0] = scal["s_b"]
    row = -(np.conj(v) @ Y + v @ np.conj(Z))
    M[0, 1:] = row
    M[1:, 0] = np.conj(row)
    P = np.zeros((n, n), dtype=complex)
    col = X @ v
    P[0, 1:] = -col
    P[1:, 0] = col
    return M, P


def c2_residuals(d):
    """Closed-form residuals of the standard predicates."""
    lam, v, X, Y, Z = d.lam, d.v, d.X, d.Y, d.Z
    Xs = X.conj().T
    Ys = Y.conj().T
    vmax = max_abs(v)
    skt = (
        X @ Xs
        - Y @ Xs
        + Z.T @ np.conj(Z)
        - Z @ np.conj(Z)
        + Ys @ Y
        - Ys @ X
        + lam * (Y - X)
    )
    scal = c2_scalars(d)
    return {
        "unimodular": abs(lam - np.trace(X) + np.trace(Y)),
        "balanced": max(abs(np.trace(X) - np.trace(Y)), vmax),
        "kaehler": max(vmax, max_abs(Z.T - Z), max_abs(X - Y)),
        "pluriclosed": max_abs(skt),
        "chern_flat": max(
            lam,
            vmax,
            max_abs(Z),
            max_abs(Y @ Ys - Ys @ Y),
            max_abs(Y @ Xs - Xs @ Y),
        ),
        "cyt": max(
            max_abs(X @ v),
            max_abs(Ys @ v + Z.T @ np.conj(v)),
            abs(scal["s_b"]),
        ),
    }


_C2_BOOL_KEYS = ("unimodular", "balanced", "kaehler", "pluriclosed", "chern_flat", "cyt")


def c2_report(d):
    """Predicates, scalars and curvature blocks with full engine cross-check.

    Booleans are compared exactly against the tensor engine; scalar and
    matrix closed forms must match the engine entrywise within ten times
    the tolerance.  Any disagreement raises CrossCheckFailure.
    """
    alg = build_codim2(d)
    engine = hermitian.property_report(alg)
    tol = alg.tol
    res = c2_residuals(d)
    props = {k: bool(val <= tol) for k, val in res.items()}

    for key in _C2_BOOL_KEYS:
        if props[key] != engine["properties"][key]:
            raise CrossCheckFailure(
                "closed form and tensor engine disagree on %r" % key,
                name=key,
                closed=res[key],
                engine=engine["residuals"][key],
            )

    scal = c2_scalars(d)
    for name in ("s", "s_hat", "s_b"):
        if abs(scal[name] - engine["scalars"][name]) > 10.0 * tol:
            raise CrossCheckFailure(
                "scalar %r disagrees with the tensor engine" % name,
                name=name,
                closed=scal[name],
                engine=engine["scalars"][name],
            )

    R = hermitian.chern_curvature(alg)
    ric1, ric2, ric3 = c2_ricci_closed(d)
    gaps = {
        "ric1": max_abs(ric1 - hermitian.ricci_first(R)),
        "ric2": max_abs(ric2 - hermitian.ricci_second(R)),
        "ric3": max_abs(ric3 - hermitian.ricci_third(R)),
    }
    M, P = c2_bismut_blocks(d)
    Me, Pe = hermitian.bismut_ricci_blocks(alg)
    gaps["bismut_one_one"] = max_abs(M - Me)
    gaps["bismut_two_zero"] = max_abs(P - Pe)
    for name, gap in gaps.items():
        if gap > 10.0 * tol:
            raise CrossCheckFailure(
                "matrix %r disagrees with the tensor engine" % name,
                name=name,
                closed=gap,
                engine=0.0,
            )

    sv = np.linalg.svd(hermitian.ricci_first(R), compute_uv=False)
    rank = int(np.count_nonzero(sv > 10.0 * tol))

    return {
        "family": "codim2",
        "n": d.n,
        "tol": tol,
        "properties": props,
        "residuals": res,
        "scalars": scal,
        "gaps": gaps,
        "ric1_rank": rank,
        "engine": engine,
    }


# ---------------------------------------------------------------------------
# Torsion-parallel residual system


def c2_btp_residuals(d):
    """Residuals of the full matrix system equivalent to a parallel torsion.

    Keys eq1 and eq2 are the per-index quartic equations and constitute
    the primary test; eq3a through eq5b are their implied contractions,
    reported separately as consistency checks.  The remaining keys cover
    the index ranges where the transverse direction participates.  On
    unimodular integrable data the whole system vanishes exactly when
    the Bismut torsion is parallel.
    """
    lam, v, X, Y, Z = d.lam, d.v, d.X, d.Y, d.Z
    B = Y - X
    Am = Z.T - Z
    tB = np.trace(B)
    tZ = np.trace(Z)
    Bc = np.conj(B)
    Zc = np.conj(Z)
    Xs = X.conj().T

    eq1 = (
        np.einsum("kj,li->ijkl", B, Z)
        - np.einsum("ij,lk->ijkl", B, Z)
        - np.einsum("ik,lj->ijkl", Am, B)
    )
    eq2 = (
        np.einsum("kj,li->ijkl", B, Bc)
        - np.einsum("ij,lk->ijkl", B, Bc)
        - np.einsum("ik,lj->ijkl", Am, Zc)
    )
    v1 = (
        np.einsum("k,li->ikl", v, Z)
        - np.einsum("i,lk->ikl", v, Z)
        - np.einsum("l,ik->ikl", v, Am)
    )
    v2 = (
        np.einsum("k,li->ikl", v, Bc)
        - np.einsum("i,lk->ikl", v, Bc)
        - np.einsum("l,ik->ikl", np.conj(v), Am)
    )
    w1 = np.einsum("l,kj->jkl", v, B) - np.einsum("k,lj->jkl", v, B)
    w2 = np.einsum("l,kj->jkl", np.conj(v), B) - np.einsum("k,lj->jkl", v, Zc)

    return {
        "eq1": max_abs(eq1),
        "eq2": max_abs(eq2),
        "eq3a": max_abs(tB * Z - Z @ B.T + B @ Am),
        "eq3b": max_abs(tB * Bc - Bc @ B.T + Zc @ Am),
        "eq4a": max_abs(Z.T @ B - tZ * B - Am @ B),
        "eq4b": max_abs(B.conj().T @ B - np.conj(tB) * B - Am @ Zc),
        "eq5a": max_abs(B @ Z - Z.T @ B.T + tB * Am),
        "eq5b": max_abs(B @ Bc - B.conj().T @ B.T + np.conj(tZ) * Am),
        "Xv": max(max_abs(X @ v), max_abs(Xs @ v)),
        "vZBA": max(max_abs(v1), max_abs(v2)),
        "vBZ": max(max_abs(w1), max_abs(w2)),
        "BA": max(max_abs(B @ Am - Z @ B.T), max_abs(Zc @ Am - Bc @ B.T)),
        "XB": max(
            max_abs(B @ X - X @ B - lam * B),
            max_abs(B @ Xs - Xs @ B - lam * B),
        ),
        "XA": max(
            max_abs(X @ Am + Am @ X.T - lam * Am),
            max_abs(Xs @ Am + Am @ np.conj(X) - lam * Am),
        ),
        "unimodular": abs(lam + tB),
    }


def c2_btp_system_residual(d):
    return max(c2_btp_residuals(d).values())


# ---------------------------------------------------------------------------
# Normal-form generators


def _as_positive_real(x, name):
    xc = complex(x)
    if xc.imag != 0.0 or xc.real <= 0.0:
        raise ParameterDomain("%s must be a positive real number, got %r" % (name, x))
    return float(xc.real)


def make_btpv1(n, v2, a=(), tol=None):
    """First torsion-parallel normal form: coupling vector only.

    Structure: lam = 0, v = (v2, 0, ...), X = Y = diag(0, a), Z = 0.
    Requires v2 > 0 and len(a) = n - 2.  The result is unimodular,
    pluriclosed and torsion-parallel for every choice of a.
    """
    if n < 2:
        raise DimensionMismatch("need n >= 2")
    v2 = _as_positive_real(v2, "v2")
    a = np.asarray(a, dtype=complex).reshape(-1)
    if a.shape != (n - 2,):
        raise DimensionMismatch("a must have length n-2 = %d" % (n - 2))
    m = n - 1
    v = np.zeros(m, dtype=complex)
    v[0] = v2
    X = np.zeros((m, m), dtype=complex)
    X[1:, 1:] = np.diag(a)
    Z = np.zeros((m, m), dtype=complex)
    return Codim2Data(n=n, lam=0.0, v=v, X=X, Y=np.array(X), Z=Z, tol=tol)


def make_btpv2(n, v2, p, a=(), tol=None):
    """Second torsion-parallel normal form: coupling vector plus one 2x2 cell.

    Structure: lam = 0, v = (v2, 0, ...), X = diag(0, 0, a),
    Y = X + p E, Z = p E with E the matrix unit coupling the second and
    third directions.  Requires v2 > 0, p > 0, len(a) = n - 3.  The
    result is torsion-parallel but neither balanced nor pluriclosed.
    """
    if n < 3:
        raise DimensionMismatch("need n >= 3")
    v2 = _as_positive_real(v2, "v2")
    p = _as_positive_real(p, "p")
    a = np.asarray(a, dtype=complex).reshape(-1)
    if a.shape != (n - 3,):
        raise DimensionMismatch("a must have length n-3 = %d" % (n - 3))
    m = n - 1
    v = np.zeros(m, dtype=complex)
    v[0] = v2
    X = np.zeros((m, m), dtype=complex)
    X[2:, 2:] = np.diag(a)
    E = np.zeros((m, m), dtype=complex)
    E[0, 1] = 1.0
    return Codim2Data(n=n, lam=0.0, v=v, X=X, Y=X + p * E, Z=p * E, tol=tol)


def make_btpv0(n, r, S, W, a=(), tol=None):
    """Third torsion-parallel normal form: vanishing coupling vector.

    Structure: lam = 0, v = 0, X = diag(0, 0, a) in the block split
    (r, r, n-1-2r), Y = X + B with B carrying S in its upper middle
    block, and Z carrying S W there.  Requires r >= 1, S positive real
    of length r, W a symmetric unitary r x r matrix commuting with
    diag(S), and len(a) = n - 1 - 2r.  The result is balanced,
    torsion-parallel and not pluriclosed.
    """
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise ParameterDomain("r must be a positive integer, got %r" % (r,))
    r = int(r)
    m = n - 1
    if 2 * r > m:
        raise ParameterDomain("need n - 1 >= 2r (got n=%d, r=%d)" % (n, r))
    if r > (n - 2) / 2.0:
        warnings.warn(
            "r = %d leaves no room for the diagonal tail (n = %d); "
            "the third block is empty" % (r, n),
            RuntimeWarning,
            stacklevel=2,
        )
    S = np.asarray(S, dtype=float).reshape(-1)
    if S.shape != (r,):
        raise ParameterDomain("S must be a vector of length r = %d" % r)
    if np.any(S <= 0.0):
        raise ParameterDomain("S entries must be positive")
    W = np.asarray(W, dtype=complex)
    if W.shape != (r, r):
        raise ParameterDomain("W must be r x r")
    wtol = default_tolerance(W, S)
    if max_abs(W - W.T) > wtol:
        raise ParameterDomain("W must be symmetric")
    if max_abs(W @ W.conj().T - np.eye(r)) > wtol:
        raise ParameterDomain("W must be unitary")
    Sm = np.diag(S).astype(complex)
    if max_abs(W @ Sm - Sm @ W) > wtol:
        raise ParameterDomain("W must commute with diag(S)")
    a = np.asarray(a, dtype=complex).reshape(-1)
    if a.shape != (m - 2 * r,):
        raise DimensionMismatch("a must have length n-1-2r = %d" % (m - 2 * r))
    X = np.zeros((m, m), dtype=complex)
    X[2 * r :, 2 * r :] = np.diag(a)
    B = np.zeros((m, m), dtype=complex)
    B[:r, r : 2 * r] = Sm
    Z = np.zeros((m, m), dtype=complex)
    Z[:r, r : 2 * r] = Sm @ W
    v = np.zeros(m, dtype=complex)
    return Codim2Data(n=n, lam=0.0, v=v, X=X, Y=X + B, Z=Z, tol=tol)


# ---------------------------------------------------------------------------
# Linear-algebra helpers with a deterministic gauge


def _fix_column_phases(Q):
    """Rotate each column so its first significant entry is positive real."""
    Q = np.array(Q)
    for j in range(Q.shape[1]):
        col = Q[:, j]
        big = np.abs(col)
        idx = int(np.argmax(big > 1e-12 * (big.max() + 1.0)))
        ph = col[idx]
        if abs(ph) > 0.0:
            Q[:, j] = col * (np.conj(ph) / abs(ph))
    return Q


def _eigh_desc(M):
    """Hermitian eigendecomposition, eigenvalues descending, phases fixed."""
    w, Q = np.linalg.eigh(M)
    w = w[::-1]
    Q = _fix_column_phases(Q[:, ::-1])
    return w, Q


def _eig_order(vals):
    return np.lexsort((-vals.imag, -vals.real))


def diagonalize_normal(M, tol=None):
    """Unitary diagonalization of a (numerically) normal matrix.

    Returns (vals, Q) with M = Q diag(vals) Q* up to the departure of M
    from normality.  Eigenvalues come sorted by descending real part,
    ties broken by descending imaginary part; eigenvector phases are
    normalized so the first significant component is positive real.
    """
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return np.zeros(0, dtype=complex), np.zeros((0, 0), dtype=complex)
    T, Q = scipy.linalg.schur(M, output="complex")
    vals = np.diag(T).copy()
    order = _eig_order(vals)
    return vals[order], _fix_column_phases(Q[:, order])


def _unitary_sending_to_e1(w):
    """Deterministic unitary U with U w = ||w|| e1 (w nonzero)."""
    w = np.asarray(w, dtype=complex).reshape(-1)
    m = w.shape[0]
    nw = np.linalg.norm(w)
    cols = np.column_stack([w / nw, np.eye(m, dtype=complex)])
    Q, _ = np.linalg.qr(cols)
    ph = np.vdot(Q[:, 0], w / nw)
    Q[:, 0] *= ph / abs(ph)
    return Q.conj().T


def _block_unitary(*blocks):
    mats = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks]
    sizes = [b.shape[0] for b in mats]
    total = sum(sizes)
    out = np.zeros((total, total), dtype=complex)
    at = 0
    for b, s in zip(mats, sizes):
        out[at : at + s, at : at + s] = b
        at += s
    return out


def rotate_codim2(d, U):
    """Apply a unitary change of the ideal directions at parameter level.

    U acts on the last n-1 frame vectors: v -> U v, X -> U X U*,
    Y -> U Y U*, Z -> U Z tU.  Equivalent to a frame change of the
    built algebra by diag(1, U).
    """
    Us = U.conj().T
    return Codim2Data(
        n=d.n,
        lam=d.lam,
        v=U @ d.v,
        X=U @ d.X @ Us,
        Y=U @ d.Y @ Us,
        Z=U @ d.Z @ U.T,
        tol=d.tol,
    )


def ideal_frame(n, U):
    """The n x n frame matrix diag(1, U) matching :func:`rotate_codim2`."""
    F = np.zeros((n, n), dtype=complex)
    F[0, 0] = 1.0
    F[1:, 1:] = U
    return F


# ---------------------------------------------------------------------------
# Paired factorization


def paired_takagi_factor(b, z, tol=None):
    """Joint normal form of two nonsingular matrices tied by three equations.

    Given square b and z with

        conj(z) tz = conj(b) tb,   tz conj(z) = b* b,   b tz = z tb,

    returns (U, S, V, W) with U, V, W unitary, S a positive vector in
    descending order, W symmetric, W commuting with diag(S), and

        b = U diag(S) V*,     z = U diag(S) W tV.

    Raises Singular when either matrix is singular at the tolerance and
    NotCompatible, naming the failing equation, when the three relations
    do not hold.
    """
    b = np.asarray(b, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape != z.shape:
        raise DimensionMismatch("b and z must be square matrices of equal size")
    r = b.shape[0]
    if r == 0:
        raise DimensionMismatch("matrices must be nonempty")
    if tol is None:
        tol = default_tolerance(b, z)

    for name, M in (("b", b), ("z", z)):
        sv = np.linalg.svd(M, compute_uv=False)
        if sv[-1] <= tol:
            raise Singular(
                "%s is singular at the tolerance (smallest singular value %.3e)"
                % (name, sv[-1])
            )

    checks = (
        ("conj(z) tz = conj(b) tb", np.conj(z) @ z.T - np.conj(b) @ b.T),
        ("tz conj(z) = b* b", z.T @ np.conj(z) - b.conj().T @ b),
        ("b tz = z tb", b @ z.T - z @ b.T),
    )
    for name, E in checks:
        res = max_abs(E)
        if res > tol:
            raise NotCompatible(
                "equation %s fails with residual %.3e" % (name, res)
            )

    w, U0 = _eigh_desc(np.conj(z) @ z.T)
    s = np.sqrt(np.maximum(w, 0.0))
    if s[-1] <= 0.0:
        raise Singular("degenerate spectrum in the paired factorization")
    Sinv = (1.0 / s)[:, None]
    V0s = Sinv * (U0.conj().T @ np.conj(b))
    Q = Sinv * (U0.conj().T @ np.conj(z))
    V0 = V0s.conj().T
    W0 = Q @ np.conj(V0)
    return np.conj(U0), s, np.conj(V0), np.conj(W0)


# ---------------------------------------------------------------------------
# Classification


def _structural(msg, value, bound):
    if value > bound:
        raise CrossCheckFailure(
            "torsion-parallel reduction found inconsistent structure: "
            + msg
            + " (%.3e > %.3e)" % (value, bound),
            name="classify",
            closed=value,
            engine=bound,
        )


def classify_btp(d):
    """Identify the torsion-parallel normal form of unimodular data.

    Returns a dict with keys ``family`` (one of "v1", "v2", "v0",
    "Kahler", "NotBTP"), ``params`` (the gauge-fixed generator
    parameters), ``frame`` (the n x n unitary carrying the input frame
    to the normal form) and ``residuals`` (the full residual system).
    Data failing the residual system at the tolerance is reported as
    NotBTP, which is an answer, not an error.  Non-unimodular input
    raises NotUnimodular; non-integrable input raises
    IntegrabilityViolation.
    """
    tol = d.tol
    n, m = d.n, d.n - 1
    M1, M2 = integrability_residuals(d)
    worst_int = max(max_abs(M1), max_abs(M2))
    if worst_int > tol:
        raise IntegrabilityViolation(
            "classification needs integrable data (residual %.3e)" % worst_int,
            residuals=(M1, M2),
        )
    defect = abs(d.lam - np.trace(d.X) + np.trace(d.Y))
    if defect > tol:
        raise NotUnimodular(
            "classification covers unimodular algebras only (defect %.3e)" % defect
        )

    residuals = c2_btp_residuals(d)
    eye = np.eye(m, dtype=complex)
    report = {"residuals": residuals, "frame": ideal_frame(n, eye)}
    worst = max(residuals.values())
    if worst > tol:
        report["family"] = "NotBTP"
        report["params"] = {"residual": worst}
        return report

    B = d.Y - d.X
    Am = d.Z.T - d.Z
    if max(max_abs(d.v), max_abs(B), max_abs(Am)) <= tol:
        report["family"] = "Kahler"
        report["params"] = {}
        return report

    check = 100.0 * tol
    vnorm = float(np.linalg.norm(d.v))
    if vnorm > tol:
        frame = _unitary_sending_to_e1(d.v)
        cur = rotate_codim2(d, frame)
        _structural("lam must vanish when the coupling vector is nonzero",
                    abs(cur.lam), check)
        _structural("Z must be supported on its first row",
                    max_abs(cur.Z[1:, :]), check)
        _structural("the first row of B must conjugate the first row of Z",
                    max_abs((cur.Y - cur.X)[0, :] - np.conj(cur.Z[0, :])), check)
        _structural("the transverse action must decouple from the coupling vector",
                    max(max_abs(cur.X[0, :]), max_abs(cur.X[:, 0])), check)
        z1 = np.array(cur.Z[0, 1:])
        znorm = float(np.linalg.norm(z1))
        if znorm <= tol:
            vals, Q = diagonalize_normal(cur.X[1:, 1:], tol)
            U = _block_unitary(np.eye(1), Q.conj().T)
            frame = U @ frame
            family = "v1"
            params = {"v2": vnorm, "a": vals}
            rebuilt = make_btpv1(n, vnorm, vals, tol=d.tol)
        else:
            U = _block_unitary(np.eye(1), _unitary_sending_to_e1(z1))
            cur = rotate_codim2(cur, U)
            frame = U @ frame
            X2 = cur.X[2:, 2:]
            _structural("the coupling cell must decouple from the diagonal tail",
                        max(max_abs(cur.X[1, 1:]), max_abs(cur.X[1:, 1])), check)
            vals, Q = diagonalize_normal(X2, tol)
            U = _block_unitary(np.eye(2), Q.conj().T)
            frame = U @ frame
            family = "v2"
            params = {"v2": vnorm, "p": znorm, "a": vals}
            rebuilt = make_btpv2(n, vnorm, znorm, vals, tol=d.tol)
    else:
        _structural("lam must vanish for torsion-parallel data", abs(d.lam), check)
        # Rank and row compression of Z.
        P, sv, Qh = np.linalg.svd(d.Z)
        r = int(np.count_nonzero(sv > tol))
        _structural("Z must be nonzero alongside a nonzero torsion",
                    float(r == 0), 0.5)
        _structural("Z must be singular on torsion-parallel data",
                    float(2 * r > m), 0.5)
        frame = P.conj().T
        cur = rotate_codim2(d, frame)
        _structural("the upper left block of Z must vanish",
                    max_abs(cur.Z[:r, :r]), np.sqrt(check))
        Bcur = np.array(cur.Y - cur.X)
        Bcur[:r, r:] = 0.0
        _structural("B must be supported on its upper right block",
                    max_abs(Bcur), check)
        y = cur.Z[:r, r:]
        Py, sy, Qyh = np.linalg.svd(y)
        _structural("the right block of Z must have full rank",
                    float(sy[min(r, len(sy)) - 1] <= tol), 0.5)
        U = _block_unitary(np.eye(r), np.conj(Qyh))
        cur = rotate_codim2(cur, U)
        frame = U @ frame
        _structural("B must vanish beyond the paired columns",
                    max_abs((cur.Y - cur.X)[:r, 2 * r :]), check)
        z = np.array(cur.Z[:r, r : 2 * r])
        b = np.array((cur.Y - cur.X)[:r, r : 2 * r])
        Uf, S, Vf, Wf = paired_takagi_factor(b, z, tol=max(10.0 * tol, check / 10.0))
        U = _block_unitary(Uf.conj().T, Vf.conj().T, np.eye(m - 2 * r))
        cur = rotate_codim2(cur, U)
        frame = U @ frame
        _structural("the transverse action must vanish on the paired blocks",
                    max_abs(cur.X[: 2 * r, :]) + max_abs(cur.X[:, : 2 * r]),
                    np.sqrt(check))
        x = cur.X[2 * r :, 2 * r :]
        vals, Q = diagonalize_normal(x, tol)
        U = _block_unitary(np.eye(2 * r), Q.conj().T)
        frame = U @ frame
        family = "v0"
        params = {"r": r, "S": S, "W": Wf, "a": vals}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            rebuilt = make_btpv0(n, r, S, Wf, vals, tol=d.tol)

    _postcondition_invariants(d, rebuilt, 10.0 * max(tol, rebuilt.tol))
    report["family"] = family
    report["params"] = params
    report["frame"] = ideal_frame(n, frame)
    return report


def _sorted_singular(Mat):
    return np.linalg.svd(Mat, compute_uv=False)


def spectrum_distance(vals_a, vals_b):
    """Multiset distance between two equal-length spectra.

    Sorting complex eigenvalues is unstable when real parts tie (an
    all-imaginary spectrum plus rounding noise permutes freely), so the
    comparison pairs the two lists by a minimal-cost assignment and
    returns the largest matched gap.
    """
    a = np.asarray(vals_a, dtype=complex).reshape(-1)
    b = np.asarray(vals_b, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        raise ValueError("spectra must have equal length")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _postcondition_invariants(original, rebuilt, bound):
    """Frame-invariant agreement between input data and its normal form."""
    pairs = (
        ("singular values of B",
         _sorted_singular(original.Y - original.X),
         _sorted_singular(rebuilt.Y - rebuilt.X)),
        ("singular values of Z",
         _sorted_singular(original.Z), _sorted_singular(rebuilt.Z)),
        ("norm of v",
         np.array([np.linalg.norm(original.v)]),
         np.array([np.linalg.norm(rebuilt.v)])),
    )
    for name, got, want in pairs:
        _structural("%s must survive the reduction" % name,
                    max_abs(got - want), bound)
    ev_o = np.linalg.eigvals(original.X)
    ev_r = np.linalg.eigvals(rebuilt.X)
    _structural("the spectrum of X must survive the reduction",
                spectrum_distance(ev_o, ev_r), bound)
    rep_o = hermitian.property_report(build_codim2(original))
    rep_r = hermitian.property_report(build_codim2(rebuilt))
    for key, val in rep_o["properties"].items():
        if val is None:
            continue
        if rep_r["properties"][key] != val:
            raise CrossCheckFailure(
                "property %r changed across the torsion-parallel reduction" % key,
                name=key,
                closed=rep_o["residuals"][key],
                engine=rep_r["residuals"][key],
            )


# ---------------------------------------------------------------------------
# Flat normal form


def chern_flat_normal_form(d):
    """Reorganize Chern-flat data into its block-diagonal normal form.

    Requires the closed-form flatness residual to vanish at the
    tolerance.  Returns (data, frame) where the new Y is diagonal with
    equal eigenvalues grouped together and X is exactly block-diagonal
    along those groups; ``frame`` is the n x n unitary realizing the
    change.
    """
    res = c2_residuals(d)["chern_flat"]
    if res > d.tol:
        raise ParameterDomain(
            "data is not Chern-flat (residual %.3e)" % res
        )
    m = d.n - 1
    vals, Q = diagonalize_normal(d.Y, d.tol)
    U = Q.conj().T
    cur = rotate_codim2(d, U)
    groups = []
    start = 0
    for i in range(1, m + 1):
        if i == m or abs(vals[i] - vals[start]) > 10.0 * d.tol:
            groups.append((start, i))
            start = i
    Xb = np.zeros((m, m), dtype=complex)
    for lo, hi in groups:
        Xb[lo:hi, lo:hi] = cur.X[lo:hi, lo:hi]
    data = Codim2Data(
        n=d.n,
        lam=0.0,
        v=np.zeros(m, dtype=complex),
        X=Xb,
        Y=np.diag(vals),
        Z=np.zeros((m, m), dtype=complex),
        tol=d.tol,
    )
    return data, ideal_frame(d.n, U)
