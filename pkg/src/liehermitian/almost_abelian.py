"""Algebras with an abelian ideal of complex codimension one.

In a frame whose last n-1 vectors span the ideal and whose first vector
spans its orthogonal complement, the whole algebra is encoded by a real
number ``lam``, a vector ``v`` of length n-1 and an (n-1) x (n-1) matrix
``A``.  The Jacobi identity holds for every choice of these parameters,
so the family is a free parameter space.  Each geometric predicate of the
resulting Hermitian algebra collapses to a small matrix equation in
(lam, v, A); those closed forms live here.

Every boolean produced by :func:`aa_report` is recomputed through the
generic tensor engine.  A disagreement raises
:class:`~liehermitian.errors.CrossCheckFailure` instead of trusting
either side.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, default_tolerance, make_algebra, max_abs, is_nilpotent
from .errors import (
    CrossCheckFailure,
    DimensionMismatch,
    NotAstheno,
    ParameterDomain,
    PatternMismatch,
)
from . import hermitian


@dataclass(frozen=True)
class AlmostAbelianData:
    """Defining parameters of a codimension-one-abelian algebra.

    ``lam`` scales the bracket of the transverse direction with itself
    (through the conjugate), ``v`` couples the transverse direction to
    the ideal and ``A`` is the action on the ideal.  ``tol`` is the
    comparison tolerance used by every predicate; ``None`` selects a
    scale-aware default.
    """

    n: int
    lam: float
    v: np.ndarray
    A: np.ndarray
    tol: float = None

    def __post_init__(self):
        if self.n < 2:
            raise DimensionMismatch("need n >= 2, got %d" % self.n)
        lam = complex(self.lam)
        if lam.imag != 0.0:
            raise ParameterDomain("lam must be real, got %r" % self.lam)
        object.__setattr__(self, "lam", float(lam.real))
        v = np.asarray(self.v, dtype=complex).reshape(-1)
        A = np.asarray(self.A, dtype=complex)
        m = self.n - 1
        if v.shape != (m,):
            raise DimensionMismatch(
                "v must have length n-1 = %d, got %s" % (m, v.shape)
            )
        if A.shape != (m, m):
            raise DimensionMismatch(
                "A must be (n-1) x (n-1) = %d x %d, got %s" % (m, m, A.shape)
            )
        v.setflags(write=False)
        A.setflags(write=False)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "A", A)
        if self.tol is None:
            object.__setattr__(
                self, "tol", default_tolerance([self.lam], v, A)
            )


def build_almost_abelian(d):
    """Assemble the full structure-constant tensors from the parameters.

    The nonzero blocks, in 1-based index notation with the transverse
    direction first, are::

        D^1_11 = lam        D^1_i1 = v_i        D^j_i1 = A_ij
        C^j_1i = -conj(A_ji)

    for 2 <= i, j <= n, together with the antisymmetric mirror of C.
    """
    n, lam, v, A = d.n, d.lam, d.v, d.A
    C = np.zeros((n, n, n), dtype=complex)
    D = np.zeros((n, n, n), dtype=complex)
    D[0, 0, 0] = lam
    D[0, 1:, 0] = v
    # D[j, i, 0] = A_ij, both array indices shifted down by one.
    D[1:, 1:, 0] = A.T
    C[1:, 0, 1:] = -np.conj(A)
    C[1:, 1:, 0] = np.conj(A)
    return make_algebra(n, C, D, tol=d.tol)


def extract_almost_abelian(a):
    """Recover (lam, v, A) from an algebra already in the adapted frame.

    Raises PatternMismatch, carrying the first offending entry as a
    1-based (tensor, j, i, k) tuple, when the structure constants do not
    fit the sparsity pattern of this family.
    """
    n = a.n
    tol = a.tol
    C, D = a.C, a.D

    for j in range(n):
        for i in range(n):
            for k in range(n):
                ok = j >= 1 and ((i == 0 and k >= 1) or (k == 0 and i >= 1))
                if not ok and abs(C[j, i, k]) > tol:
                    raise PatternMismatch(
                        "C entry outside the codimension-one pattern",
                        offending=("C", j + 1, i + 1, k + 1),
                    )
                okd = k == 0 and not (j >= 1 and i == 0)
                if not okd and abs(D[j, i, k]) > tol:
                    raise PatternMismatch(
                        "D entry outside the codimension-one pattern",
                        offending=("D", j + 1, i + 1, k + 1),
                    )
    lam = D[0, 0, 0]
    if abs(lam.imag) > tol:
        raise PatternMismatch(
            "D^1_11 must be real for this family", offending=("D", 1, 1, 1)
        )
    v = np.array(D[0, 1:, 0])
    A = np.array(D[1:, 1:, 0]).T
    # C must be minus the conjugate transpose of the ideal action.
    for j in range(1, n):
        for i in range(1, n):
            want = -np.conj(A[j - 1, i - 1])
            if abs(C[j, 0, i] - want) > tol:
                raise PatternMismatch(
                    "C block inconsistent with the ideal action",
                    offending=("C", j + 1, 1, i + 1),
                )
    return AlmostAbelianData(n=n, lam=float(lam.real), v=v, A=A, tol=a.tol)


def _hermitian_double(A):
    return A + A.conj().T


def trace_sum(A):
    """tr A + conj(tr A), the doubled real part of the trace."""
    return float(2.0 * np.trace(A).real)


def aa_residuals(d):
    """Closed-form residuals for the standard predicates.

    Each entry is a nonnegative number; the predicate holds exactly when
    the residual vanishes, and numerically when it stays below the data
    tolerance.  ``None`` marks a predicate with no content at this n.
    """
    n, lam, v, A = d.n, d.lam, d.v, d.A
    m = n - 1
    H = _hermitian_double(A)
    h = trace_sum(A)
    vmax = max_abs(v)
    comm = A @ A.conj().T - A.conj().T @ A

    nilp_scale = (1.0 + max_abs(A)) ** m
    nilpotent = max(abs(lam), max_abs(np.linalg.matrix_power(A, m)) / nilp_scale)

    res = {
        "nilpotent": nilpotent,
        "unimodular": abs(lam + h),
        "kaehler": max(vmax, max_abs(H)),
        "balanced": max(vmax, abs(h)),
        "pluriclosed": max_abs(H @ A + A.conj().T @ H + lam * H),
        "chern_flat": max(abs(lam), vmax, max_abs(comm)),
        "chern_kaehler_like": max(
            max_abs(A.conj().T @ v),
            max_abs(np.outer(v, np.conj(v)) + comm - lam * H),
        ),
        "btp": max(max_abs(H), max_abs(A @ v)),
        "cyt": max(max_abs(A.conj().T @ v), abs(2.0 * np.dot(v, np.conj(v)).real + lam * (2.0 * lam - h))),
    }
    res["bkl"] = max(res["btp"], res["pluriclosed"])
    if n >= 4:
        prof = _astheno_profile(d)
        res["astheno_kaehler"] = prof[3]
    elif n == 3:
        res["astheno_kaehler"] = res["pluriclosed"]
    else:
        res["astheno_kaehler"] = None
    return res


def spectral_pluriclosed_residual(d):
    """Pluriclosed test through the spectrum instead of the matrix equation.

    Requires A normal and every eigenvalue real part in {0, -lam/2}.
    Equivalent to the matrix form; both are exercised against each other
    in the test suite.
    """
    A, lam = d.A, d.lam
    comm = A @ A.conj().T - A.conj().T @ A
    eigs = np.linalg.eigvals(A)
    if eigs.size == 0:
        return max_abs(comm)
    dist = np.minimum(np.abs(eigs.real), np.abs(eigs.real + lam / 2.0))
    return max(max_abs(comm), float(np.max(dist)))


def _astheno_profile(d):
    """Internal worker: (k, h, commutator residual, total residual, clauses)."""
    n, lam, A = d.n, d.lam, d.A
    m = n - 1
    h = trace_sum(A)
    comm_res = max_abs(A.conj().T @ A - A @ A.conj().T)
    scale = 1e-7 * (1.0 + max_abs(A) + abs(lam))
    eigs = np.linalg.eigvals(A)
    doubled = 2.0 * eigs.real
    if abs(lam) <= scale:
        # The two admissible values coincide; every eigenvalue must sit
        # at h and the count equation then forces h = 0.
        k = m
        bucket_res = float(np.max(np.abs(doubled - h))) if m else 0.0
        count_res = abs((n - 2) * h)
    else:
        near_h = np.abs(doubled - h)
        near_lh = np.abs(doubled - (lam + h))
        choose_h = near_h <= near_lh
        k = int(np.count_nonzero(choose_h))
        bucket_res = float(np.max(np.minimum(near_h, near_lh))) if m else 0.0
        count_res = abs((n - 1 - k) * lam + (n - 2) * h)
    total = max(comm_res, bucket_res, count_res)
    clauses = {
        "commutator": comm_res,
        "eigenvalue_bucket": bucket_res,
        "count_equation": count_res,
    }
    return k, h, comm_res, total, clauses


def aa_astheno_profile(d):
    """Certificate for the astheno condition when n >= 4.

    Returns (k, h, commutator_residual) where k counts the eigenvalues
    of A whose doubled real part equals h, the remaining ones sitting at
    lam + h, subject to (n-1-k) lam + (n-2) h = 0.  Raises NotAstheno,
    naming the failing clause, when the certificate does not exist.
    """
    if d.n < 4:
        raise ParameterDomain("the eigenvalue certificate needs n >= 4")
    k, h, comm_res, total, clauses = _astheno_profile(d)
    if total > d.tol:
        worst = max(clauses, key=lambda key: clauses[key])
        raise NotAstheno(
            "astheno certificate fails in clause %r (residual %.3e)"
            % (worst, clauses[worst]),
            clause=worst,
        )
    return k, h, comm_res


def aa_scalars(d):
    """Chern scalar curvatures of the family, valid for any parameters."""
    lam, v = d.lam, d.v
    h = trace_sum(d.A)
    s = -lam * (2.0 * lam + h)
    s_hat = -2.0 * lam * lam - float(np.vdot(v, v).real)
    return s, s_hat


def aa_curvature(d):
    """Chern curvature tensor assembled from the closed-form entries.

    Only components with both first slots transverse are nonzero:
    the (1,1,1,1) scalar, the row coupling to -A* v, and the ideal block
    v v* + [A, A*] - lam (A + A*).
    """
    n, lam, v, A = d.n, d.lam, d.v, d.A
    R = np.zeros((n, n, n, n), dtype=complex)
    R[0, 0, 0, 0] = -2.0 * lam * lam - np.vdot(v, v)
    col = -(A.conj().T @ v)
    R[0, 0, 1:, 0] = col
    R[0, 0, 0, 1:] = np.conj(col)
    block = np.outer(v, np.conj(v)) + (A @ A.conj().T - A.conj().T @ A)
    block = block - lam * _hermitian_double(A)
    R[0, 0, 1:, 1:] = block
    return R


_BOOL_KEYS = (
    "unimodular",
    "kaehler",
    "balanced",
    "pluriclosed",
    "astheno_kaehler",
    "chern_flat",
    "chern_kaehler_like",
    "btp",
    "bkl",
)


def aa_report(d):
    """Predicates, scalars and eigenvalue data for one parameter triple.

    Every closed-form boolean is recomputed through the tensor engine on
    the assembled algebra; any disagreement raises CrossCheckFailure.
    The cyt flag and the scalar pair are reported only on unimodular
    data and are None otherwise.
    """
    alg = build_almost_abelian(d)
    engine = hermitian.property_report(alg)
    tol = alg.tol
    res = aa_residuals(d)

    props = {}
    for key, value in res.items():
        props[key] = None if value is None else bool(value <= tol)

    unimodular = props["unimodular"]
    if not unimodular:
        props["cyt"] = None

    for key in _BOOL_KEYS:
        closed = props.get(key)
        mine = engine["properties"].get(key)
        if closed is None or mine is None:
            continue
        if closed != mine:
            raise CrossCheckFailure(
                "closed form and tensor engine disagree on %r" % key,
                name=key,
                closed=res[key],
                engine=engine["residuals"][key],
            )
    if unimodular and props["cyt"] is not None:
        if props["cyt"] != engine["properties"]["cyt"]:
            raise CrossCheckFailure(
                "closed form and tensor engine disagree on 'cyt'",
                name="cyt",
                closed=res["cyt"],
                engine=engine["residuals"]["cyt"],
            )

    nilp_engine = is_nilpotent(alg)
    if props["nilpotent"] != nilp_engine:
        raise CrossCheckFailure(
            "closed form and lower central series disagree on nilpotency",
            name="nilpotent",
            closed=res["nilpotent"],
            engine=float(not nilp_engine),
        )

    if unimodular:
        s, s_hat = aa_scalars(d)
        for name, closed_val, engine_val in (
            ("s", s, engine["scalars"]["s"]),
            ("s_hat", s_hat, engine["scalars"]["s_hat"]),
        ):
            if abs(closed_val - engine_val) > 10.0 * tol:
                raise CrossCheckFailure(
                    "scalar %r disagrees with the tensor engine" % name,
                    name=name,
                    closed=closed_val,
                    engine=engine_val,
                )
        scalars = {"s": s, "s_hat": s_hat}
    else:
        scalars = {"s": None, "s_hat": None}

    eigs = np.sort_complex(np.linalg.eigvals(d.A))
    eigen_data = {
        "eigenvalues": eigs,
        "doubled_real_parts": 2.0 * eigs.real,
        "h": trace_sum(d.A),
    }
    if d.n >= 4:
        try:
            k, h, comm = aa_astheno_profile(d)
            eigen_data["profile"] = {"k": k, "h": h, "commutator_residual": comm}
        except NotAstheno:
            eigen_data["profile"] = None

    return {
        "family": "almost_abelian",
        "n": d.n,
        "tol": tol,
        "properties": props,
        "residuals": res,
        "scalars": scalars,
        "eigen_data": eigen_data,
        "engine": engine,
    }
