"""Torsion, canonical connections and curvature of the frame metric.

Everything here treats the frame e_1..e_n as unitary, so the metric is
the identity matrix and never appears explicitly.  A connection is
described by a single coefficient array with layout ``[coefficient,
argument, direction]``:

    nabla_{e_dir} e_arg = sum_c Gamma[c, arg, dir] e_c

The barred-direction and barred-argument blocks are all determined by
Gamma through metric compatibility and type considerations, which is
why no second array is carried around; the covariant derivative
routines conjugate Gamma internally where required.

The torsion of the canonical (Chern) connection has pure (2,0) type
with components

    T^j_{ik} = -C^j_{ik} - D^j_{ik} + D^j_{ki}

and the Chern curvature, a (1,1)-form valued endomorphism, is

    R_{i jbar k lbar} = sum_r ( D^r_{ki} conj(D^r_{lj})
                              - D^l_{ri} conj(D^k_{rj})
                              - D^j_{ri} conj(D^k_{lr})
                              - conj(D^i_{rj}) D^l_{kr} ).

The module-level sign tuples below exist only so the verification
harness can flip individual terms and confirm that the identity battery
notices; see :func:`sign_mutation`.
"""

import contextlib

import numpy as np

from . import forms
from .algebra import max_abs, unimodularity_defect
from .errors import DimensionMismatch, InvalidAlgebra

# term signs for (C, D, D-swapped) in the torsion and for the four
# curvature terms.  Do not edit; flip temporarily via sign_mutation().
_TORSION_SIGNS = [-1.0, -1.0, 1.0]
_CURVATURE_SIGNS = [1.0, -1.0, -1.0, -1.0]


@contextlib.contextmanager
def sign_mutation(torsion_index=None, curvature_index=None):
    """Temporarily flip one torsion or curvature term sign.

    Used by the self-check battery to demonstrate that the internal
    identities are sensitive to each convention choice.  Never nest.
    """
    try:
        if torsion_index is not None:
            _TORSION_SIGNS[torsion_index] *= -1.0
        if curvature_index is not None:
            _CURVATURE_SIGNS[curvature_index] *= -1.0
        yield
    finally:
        if torsion_index is not None:
            _TORSION_SIGNS[torsion_index] *= -1.0
        if curvature_index is not None:
            _CURVATURE_SIGNS[curvature_index] *= -1.0


# ---------------------------------------------------------------------------
# torsion and trace vectors


def chern_torsion(a):
    """Torsion tensor T[j, i, k] of the canonical connection."""
    sC, sD, sDsw = _TORSION_SIGNS
    return sC * a.C + sD * a.D + sDsw * a.D.transpose(0, 2, 1)


def bracket_trace(a):
    """gamma_i = sum_r C^r_{ri}, the (1,0)-trace of ad(e_i) on the frame."""
    return np.einsum("rri->i", a.C)


def chern_connection_trace(a):
    """zeta_k = sum_r D^r_{rk}: trace of the direction-k connection matrix."""
    return np.einsum("rrk->k", a.D)


def chern_divergence(a):
    """nu_k = sum_r D^r_{kr}: the (1,0) divergence of the frame field e_k."""
    return np.einsum("rkr->k", a.D)


def torsion_trace(a):
    """eta_i = sum_r T^r_{ri}; vanishes exactly for balanced metrics.

    Coincides with :func:`chern_divergence` on unimodular algebras.
    """
    return np.einsum("rri->i", chern_torsion(a))


# ---------------------------------------------------------------------------
# connections


def chern_connection(a):
    """Coefficients Gamma[c, arg, dir] = D[c, arg, dir] of the canonical
    Hermitian connection (the one whose (0,1) part is the holomorphic
    structure)."""
    return np.array(a.D)


def bismut_connection(a):
    """Coefficients of the metric connection with totally skew torsion,
    Gamma^b = Gamma + T entrywise, i.e. -C^j_{ik} + D^j_{ki}."""
    return -a.C + a.D.transpose(0, 2, 1)


def gauduchon_connection(a, t):
    """The affine line of canonical connections: t=0 gives the Chern
    coefficients, t=2 the skew-torsion ones, exactly."""
    s = t / 2.0
    return (1.0 - s) * chern_connection(a) + s * bismut_connection(a)


# ---------------------------------------------------------------------------
# curvature and its traces


def chern_curvature(a):
    """Curvature tensor R[i, j, k, l] = R_{i jbar k lbar}.

    Index pair (i, j) is the 2-form slot, (k, l) the endomorphism slot;
    R[i, j, k, l] = conj(R[j, i, l, k]) always holds.
    """
    D = a.D
    Dc = np.conj(D)
    s1, s2, s3, s4 = _CURVATURE_SIGNS
    return (
        s1 * np.einsum("rki,rlj->ijkl", D, Dc)
        + s2 * np.einsum("lri,krj->ijkl", D, Dc)
        + s3 * np.einsum("jri,klr->ijkl", D, Dc)
        + s4 * np.einsum("irj,lkr->ijkl", Dc, D)
    )


def ricci_first(R):
    """Endomorphism trace: Ric1[a, b] = sum_r R[a, b, r, r]."""
    return np.einsum("abrr->ab", R)


def ricci_second(R):
    """Form trace: Ric2[k, l] = sum_r R[r, r, k, l]."""
    return np.einsum("rrkl->kl", R)


def ricci_third(R):
    """Mixed trace: Ric3[a, b] = sum_r R[r, b, a, r]."""
    return np.einsum("rbar->ab", R)


def chern_scalar(R):
    """s = sum R[i, i, k, k], the double trace."""
    return complex(np.einsum("iikk->", R))


def chern_scalar_alt(R):
    """The crossed double trace sum R[i, k, k, i], written s-hat."""
    return complex(np.einsum("ikki->", R))


def curvature_hermitian_residual(R):
    """Max-abs deviation from R[i,j,k,l] = conj(R[j,i,l,k]).

    This holds for every metric; a visible residual means the tensor
    was not produced by chern_curvature (or was mutated for testing).
    """
    return max_abs(R - np.conj(R.transpose(1, 0, 3, 2)))


def curvature_symmetry_residual(R):
    """Max-abs deviation from the symmetry R[i,j,k,l] = R[k,j,i,l].

    Not automatic: it characterizes the Kaehler-like curvature class of
    the canonical connection.
    """
    return max_abs(R - R.transpose(2, 1, 0, 3))


def scalar_s(a):
    """Both trace routes to the scalar curvature of the canonical
    connection: (trace of Ric1, trace of Ric2).  Equal by inspection of
    the defining sums; returned as a pair so callers can confirm."""
    R = chern_curvature(a)
    s1 = complex(np.trace(ricci_first(R)))
    s2 = complex(np.trace(ricci_second(R)))
    return _realpart(s1, a.tol), _realpart(s2, a.tol)


def scalar_s_hat(a):
    """Trace of the mixed Ricci contraction (the altered scalar)."""
    return _realpart(chern_scalar_alt(chern_curvature(a)), a.tol)


# ---------------------------------------------------------------------------
# covariant derivatives of the torsion


def torsion_cov_deriv(T, G, barred):
    """Covariant derivative of a (2,0) torsion tensor along frame
    directions, for the connection with coefficient array G.

    With direction index last, the unbarred derivative is

        out[j, i, k, l] = sum_r ( -T^j_{rk} G^r_{il} - T^j_{ir} G^r_{kl}
                                  + T^r_{ik} G^j_{rl} )

    and the barred one (direction ebar_l) is

        out[j, i, k, l] = sum_r (  T^j_{rk} conj(G^i_{rl})
                                 + T^j_{ir} conj(G^k_{rl})
                                 - T^r_{ik} conj(G^r_{jl}) ).
    """
    if T.shape != G.shape:
        raise DimensionMismatch(
            f"torsion shape {T.shape} vs connection shape {G.shape}"
        )
    if barred:
        Gc = np.conj(G)
        return (
            np.einsum("jrk,irl->jikl", T, Gc)
            + np.einsum("jir,krl->jikl", T, Gc)
            - np.einsum("rik,rjl->jikl", T, Gc)
        )
    return (
        -np.einsum("jrk,ril->jikl", T, G)
        - np.einsum("jir,rkl->jikl", T, G)
        + np.einsum("rik,jrl->jikl", T, G)
    )


def bismut_torsion_derivative_residuals(a):
    """Max-abs of the two covariant derivatives of the torsion under the
    skew-torsion connection; both vanish exactly when the torsion is
    parallel."""
    T = chern_torsion(a)
    G = bismut_connection(a)
    return (
        max_abs(torsion_cov_deriv(T, G, barred=False)),
        max_abs(torsion_cov_deriv(T, G, barred=True)),
    )


def chern_torsion_derivative_residual(a):
    """Max-abs of the barred covariant derivative of the torsion under
    the canonical connection.  Zero iff the curvature has the full
    Kaehler symmetry package."""
    T = chern_torsion(a)
    G = chern_connection(a)
    return max_abs(torsion_cov_deriv(T, G, barred=True))


def torsion_bianchi_residual(a):
    """Residual of the curvature identity

        (nabla_{ebar_j} T)^l_{ik} = R_{k jbar i lbar} - R_{i jbar k lbar}

    for the canonical connection.  Zero (to roundoff) whenever the
    Jacobi identity holds; one of the battery checks the sign-mutation
    harness is expected to break."""
    T = chern_torsion(a)
    DbarT = torsion_cov_deriv(T, chern_connection(a), barred=True)
    R = chern_curvature(a)
    rhs = np.einsum("kjil->likj", R) - np.einsum("ijkl->likj", R)
    return max_abs(DbarT - rhs)


# ---------------------------------------------------------------------------
# trace forms and Ricci forms


def chern_trace_form(a):
    """trace of the canonical connection form, as an invariant 1-form."""
    zeta = chern_connection_trace(a)
    entries = []
    for k in range(a.n):
        entries.append(((k + 1,), (), zeta[k]))
        entries.append(((), (k + 1,), -np.conj(zeta[k])))
    return forms.form(entries)


def bismut_trace_form(a):
    """trace of the skew-torsion connection form, as an invariant 1-form."""
    alpha = -bracket_trace(a) + chern_divergence(a)
    entries = []
    for k in range(a.n):
        entries.append(((k + 1,), (), alpha[k]))
        entries.append(((), (k + 1,), -np.conj(alpha[k])))
    return forms.form(entries)


def chern_ricci_form(a):
    """d of the canonical trace form.  Its (1,1) block equals the first
    Ricci trace of the curvature entrywise; vanishing characterizes
    trivial restricted canonical holonomy determinant."""
    return forms.exterior_d(a, chern_trace_form(a))


def bismut_ricci_form(a):
    """d of the skew-torsion trace form; vanishing is the CYT condition."""
    return forms.exterior_d(a, bismut_trace_form(a))


def one_one_matrix(f, n):
    """Coefficient matrix N[a, b] of phi_{a+1} ^ phibar_{b+1} in a form."""
    N = np.zeros((n, n), dtype=complex)
    for (I, J), c in f.items():
        if len(I) == 1 and len(J) == 1:
            N[I[0] - 1, J[0] - 1] = c
    return N


def two_zero_matrix(f, n):
    """Antisymmetric coefficient matrix M[a, b] of phi_{a+1} ^ phi_{b+1}."""
    M = np.zeros((n, n), dtype=complex)
    for (I, J), c in f.items():
        if len(I) == 2 and len(J) == 0:
            M[I[0] - 1, I[1] - 1] = c
            M[I[1] - 1, I[0] - 1] = -c
    return M


def bismut_ricci_blocks(a):
    """The (1,1) and (2,0) coefficient matrices of the skew-torsion
    Ricci form.  The (0,2) block is determined: it is minus the
    conjugate of the (2,0) one."""
    rho = bismut_ricci_form(a)
    return one_one_matrix(rho, a.n), two_zero_matrix(rho, a.n)


def ricci_form_trace_residual(a):
    """Max-abs gap between the (1,1) block of the canonical Ricci form
    and the first Ricci trace of the curvature tensor.  An unconditional
    identity of the formulas; sensitive to every sign convention."""
    rho = chern_ricci_form(a)
    N = one_one_matrix(rho, a.n)
    return max_abs(N - ricci_first(chern_curvature(a)))


# ---------------------------------------------------------------------------
# the pluriclosed tensor

# pinned numerically: coefficient of phi_i^phi_k^phibar_j^phibar_l
# (i<k, j<l, canonical order) in del delbar omega equals this factor
# times skt_tensor[i, k, j, l].
SKT_FORM_FACTOR = -1.0j


def skt_tensor(a):
    """Five-term torsion-bilinear tensor S[i, k, j, l] whose vanishing is
    the pluriclosed condition.

        S = - T^r_{ik} conj(C^r_{jl}) - T^j_{ir} conj(D^k_{rl})
            + T^j_{kr} conj(D^i_{rl}) + T^l_{ir} conj(D^k_{rj})
            - T^l_{kr} conj(D^i_{rj})

    Antisymmetric in (i,k) and, after conjugation, in (j,l).
    """
    T = chern_torsion(a)
    Cc = np.conj(a.C)
    Dc = np.conj(a.D)
    return (
        -np.einsum("rik,rjl->ikjl", T, Cc)
        - np.einsum("jir,krl->ikjl", T, Dc)
        + np.einsum("jkr,irl->ikjl", T, Dc)
        + np.einsum("lir,krj->ikjl", T, Dc)
        - np.einsum("lkr,irj->ikjl", T, Dc)
    )


def skt_form_tensor_residual(a):
    """Gap between del delbar omega computed by the forms engine and the
    closed tensor expression, over canonical index positions."""
    n = a.n
    S = skt_tensor(a)
    ddbar = forms.partial_d(a, forms.partial_dbar(a, forms.kaehler_form(n)))
    worst = 0.0
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                for l in range(j + 1, n):
                    c = ddbar.get(((i + 1, k + 1), (j + 1, l + 1)), 0.0)
                    worst = max(worst, abs(c - SKT_FORM_FACTOR * S[i, k, j, l]))
    return worst


# ---------------------------------------------------------------------------
# scalar identities and closed-form Ricci cross-checks


def scalar_identity_residuals(a):
    """Residuals of trace identities satisfied by the curvature scalars.

    's' and 's_hat' check the double traces against expressions in the
    connection trace vectors (unconditional, no Jacobi needed).  'gap'
    checks s_hat = s - chi with chi = sum_r eta_r conj(nu_r), an
    identity of the Jacobi variety.
    """
    R = chern_curvature(a)
    s = chern_scalar(R)
    s_hat = chern_scalar_alt(R)
    zeta = chern_connection_trace(a)
    nu = chern_divergence(a)
    eta = torsion_trace(a)
    q = complex(np.einsum("trs,tsr->", a.D, np.conj(a.D)))
    s_pred = -complex(np.sum(nu * np.conj(zeta) + np.conj(nu) * zeta))
    s_hat_pred = -q - complex(np.sum(np.abs(nu) ** 2))
    chi = complex(np.sum(eta * np.conj(nu)))
    return {
        "s": abs(s - s_pred),
        "s_hat": abs(s_hat - s_hat_pred),
        "gap": abs(s_hat - (s - chi)),
    }


def ricci_closed_form_residuals(a):
    """Gaps between the curvature-trace Ricci matrices and their
    structure-constant expressions.

    The first Ricci form has an unconditional expression through the
    connection trace vector zeta.  The second and third only close up
    in terms of eta on unimodular algebras, so those two keys (and the
    quadratic expression for s) are None when the algebra is not
    unimodular.
    """
    D = a.D
    Dc = np.conj(D)
    zeta = chern_connection_trace(a)
    R = chern_curvature(a)
    ric1_closed = -(
        np.einsum("r,irj->ij", zeta, Dc)
        + np.einsum("r,jri->ij", np.conj(zeta), D)
    )
    out = {
        "ric1": max_abs(ricci_first(R) - ric1_closed),
        "ric2": None,
        "ric3": None,
        "s_quadratic": None,
    }
    if max_abs(unimodularity_defect(a)) <= a.tol:
        eta = torsion_trace(a)
        ric2_closed = (
            np.einsum("ris,rjs->ij", D, Dc)
            - np.einsum("jrs,irs->ij", D, Dc)
            - np.einsum("r,ijr->ij", eta, Dc)
            - np.einsum("r,jir->ij", np.conj(eta), D)
        )
        ric3_closed = -np.einsum("jrs,isr->ij", D, Dc) - np.einsum(
            "r,irj->ij", eta, Dc
        )
        q = complex(np.einsum("trs,tsr->", D, Dc))
        out["ric2"] = max_abs(ricci_second(R) - ric2_closed)
        out["ric3"] = max_abs(ricci_third(R) - ric3_closed)
        out["s_quadratic"] = abs(chern_scalar(R) + q)
    return out


# ---------------------------------------------------------------------------
# the property report


def _realpart(z, tol):
    z = complex(z)
    if abs(z.imag) > 100 * tol:
        raise ArithmeticError(
            f"expected a real scalar, got imaginary part {z.imag:.3e}"
        )
    return z.real


def property_report(a):
    """Classify the frame metric of an algebra against the standard
    special-metric conditions.

    Returns a dict with keys 'properties' (booleans, or None where a
    condition does not apply), 'residuals' (the numbers the booleans
    threshold), 'scalars' and 'jacobi_residual'.  The astheno condition
    is reported as None in complex dimension 2, where it is vacuous.

    Raises InvalidAlgebra when the Jacobi residual exceeds the
    tolerance; none of the predicates mean anything in that case.
    """
    n, tol = a.n, a.tol
    if a.jacobi_max > tol:
        raise InvalidAlgebra(
            "Jacobi residual %.3e exceeds tolerance %.3e; "
            "not a Lie algebra" % (a.jacobi_max, tol)
        )

    T = chern_torsion(a)
    R = chern_curvature(a)
    eta = torsion_trace(a)
    nu = chern_divergence(a)
    w = unimodularity_defect(a)
    rho_b = bismut_ricci_form(a)

    res = {}
    res["kaehler"] = max_abs(T)
    res["balanced"] = max_abs(eta)
    res["pluriclosed"] = forms.del_delbar_residual(a, 1)
    res["gauduchon"] = forms.del_delbar_residual(a, n - 1)
    res["astheno_kaehler"] = (
        None if n == 2 else forms.del_delbar_residual(a, n - 2)
    )
    res["chern_flat"] = max_abs(R)
    res["chern_kaehler_like"] = chern_torsion_derivative_residual(a)
    du, db = bismut_torsion_derivative_residuals(a)
    res["btp"] = max(du, db)
    res["bkl"] = max(res["btp"], res["pluriclosed"])
    res["cyt"] = forms.max_coeff(rho_b)
    res["chern_ricci_flat"] = forms.max_coeff(chern_ricci_form(a))
    res["unimodular"] = max_abs(w)

    props = {
        k: (None if v is None else bool(v <= tol)) for k, v in res.items()
    }

    s = _realpart(chern_scalar(R), tol)
    s_hat = _realpart(chern_scalar_alt(R), tol)
    s_b = _realpart(np.trace(one_one_matrix(rho_b, n)), tol)
    chi = _realpart(np.sum(eta * np.conj(nu)), tol)

    return {
        "n": n,
        "tol": tol,
        "jacobi_residual": list(a.jacobi),
        "properties": props,
        "residuals": res,
        "scalars": {
            "s": s,
            "s_hat": s_hat,
            "s_b": s_b,
            "chi": chi,
            "eta_norm_sq": float(np.sum(np.abs(eta) ** 2)),
        },
    }
