"""Seeded self-check battery behind the verify command.

Thirteen numbered criteria exercise the package end to end: the
tensor/forms dualities, trace and scalar identities, every family
closed form against the general engine, the normal-form generators and
the classifier, the paired factorization, and sign-flip sensitivity of
the core conventions.  All sampling is deterministic: criterion c draws
its sample i from ``rng_for(seed * 1000 + c, i)``.

Criterion 11 fails at present and is expected to.  Random draws of the
rank-r paired-block generator with r >= 2 produce algebras that are
integrable, unimodular and balanced but whose torsion is not parallel
under the skew-torsion connection: the per-index parallelism equations
force all columns of the two paired blocks to be mutually parallel,
capping the rank at one.  Only the traced consequences of those
equations admit higher rank, and the generator family was shaped by the
traced system.  The criterion keeps drawing r >= 2 anyway, because the
generator admits those parameters; its failure report separates this
documented obstruction from any genuine regression.
"""

from dataclasses import dataclass, field

import numpy as np

from . import forms
from . import hermitian
from .algebra import max_abs
from .almost_abelian import (
    aa_report,
    aa_residuals,
    aa_scalars,
    aa_astheno_profile,
    build_almost_abelian,
    spectral_pluriclosed_residual,
)
from .codim2 import (
    build_codim2,
    c2_report,
    chern_flat_normal_form,
    classify_btp,
    paired_takagi_factor,
)
from .errors import NotAstheno, NotCompatible, LieHermitianError
from . import sampling as sm
from .sampling import rng_for

DEFAULT_SEED = 20260818


@dataclass
class CriterionResult:
    number: int
    slug: str
    title: str
    passed: bool
    checks: int
    failures: list = field(default_factory=list)
    detail: str = ""

    def as_dict(self):
        return {
            "number": self.number,
            "slug": self.slug,
            "title": self.title,
            "passed": self.passed,
            "checks": self.checks,
            "failures": list(self.failures[:20]),
            "failure_count": len(self.failures),
            "detail": self.detail,
        }


class _Collector:
    """Accumulates named subchecks for one criterion."""

    def __init__(self):
        self.checks = 0
        self.failures = []

    def ok(self, cond, label):
        self.checks += 1
        if not cond:
            self.failures.append(label)

    def near(self, value, label, bound):
        self.ok(value <= bound, "%s (%.3e > %.3e)" % (label, value, bound))


def _result(number, slug, title, col, detail=""):
    return CriterionResult(
        number=number,
        slug=slug,
        title=title,
        passed=not col.failures,
        checks=col.checks,
        failures=col.failures,
        detail=detail,
    )


def _mixed_algebra(rng, index):
    """Rotating mix of sample sources used by the cross-cutting criteria.

    Returns (algebra, expect_valid) where expect_valid is None for the
    unconstrained general draws that may or may not satisfy Jacobi.
    """
    mode = index % 5
    n = int(rng.integers(2, 5))
    if mode == 0:
        return sm.random_general(rng, n), None
    if mode == 1:
        return build_almost_abelian(sm.aa_random(rng, n, unimodular=bool(index % 2))), True
    if mode == 2:
        return build_codim2(sm.c2_random(rng, n + 1, unimodular=bool(index % 2))), True
    if mode == 3:
        return sm.hopf_algebra(n), True
    return build_almost_abelian(sm.aa_nilpotent(rng, n)), True


def _unimodular_algebra(rng, index):
    n = int(rng.integers(2, 5))
    if index % 2:
        return build_almost_abelian(sm.aa_random(rng, n, unimodular=True))
    return build_codim2(sm.c2_random(rng, n + 1, unimodular=True))


def criterion_1(seed, count=200):
    """Jacobi residual and d-squared on generators vanish together."""
    col = _Collector()
    for i in range(count):
        rng = rng_for(seed * 1000 + 1, i)
        a, _ = _mixed_algebra(rng, i)
        bound = 10.0 * a.tol
        dd = max(
            forms.max_coeff(forms.exterior_d(a, forms.exterior_d(a, forms.phi(k))))
            for k in range(1, a.n + 1)
        )
        agree = (a.jacobi_max <= bound) == (dd <= bound)
        col.ok(agree, "draw %d: jacobi %.3e vs d^2 %.3e disagree" % (i, a.jacobi_max, dd))
    return _result(1, "duality", "bracket Jacobi residual matches d^2 on generators", col)


def criterion_2(seed, count=200):
    """Unimodular draws satisfy the top-degree del-delbar identity."""
    col = _Collector()
    for i in range(count):
        a = _unimodular_algebra(rng_for(seed * 1000 + 2, i), i)
        col.near(forms.del_delbar_residual(a, a.n - 1),
                 "draw %d" % i, 10.0 * a.tol)
    return _result(2, "gauduchon", "del delbar of omega^(n-1) vanishes when unimodular", col)


def criterion_3(seed, count=200):
    """Pluriclosed tensor and the forms engine agree exactly."""
    col = _Collector()
    for i in range(count):
        rng = rng_for(seed * 1000 + 3, i)
        a, valid = _mixed_algebra(rng, i)
        if valid is None and a.jacobi_max > a.tol:
            continue
        bound = 10.0 * a.tol
        col.near(hermitian.skt_form_tensor_residual(a), "entrywise draw %d" % i, bound)
        tens = max_abs(hermitian.skt_tensor(a))
        dd = forms.del_delbar_residual(a, 1)
        col.ok((tens <= bound) == (dd <= bound),
               "boolean draw %d: tensor %.3e vs form %.3e" % (i, tens, dd))
    return _result(3, "skt-agreement", "pluriclosed tensor equals the del-delbar coefficients", col)


def criterion_4(seed, count=100):
    """Scalar curvature values on unimodular codim-1 data."""
    col = _Collector()
    for i in range(count):
        rng = rng_for(seed * 1000 + 4, i)
        n = int(rng.integers(2, 6))
        d = sm.aa_random(rng, n, unimodular=True)
        s_closed, s_hat_closed = aa_scalars(d)
        a = build_almost_abelian(d)
        bound = 10.0 * a.tol
        col.near(abs(s_closed + d.lam ** 2), "s draw %d" % i, bound)
        col.near(abs(s_hat_closed + 2.0 * d.lam ** 2 + float(np.vdot(d.v, d.v).real)),
                 "s_hat draw %d" % i, bound)
        s_eng = hermitian.scalar_s(a)
        col.near(max(abs(s_eng[0] - s_closed), abs(s_eng[1] - s_closed)),
                 "engine s draw %d" % i, bound)
        col.near(abs(hermitian.scalar_s_hat(a) - s_hat_closed),
                 "engine s_hat draw %d" % i, bound)
    return _result(4, "aa-scalars", "codim-1 scalar curvature closed forms", col)


_AA_FIVE = ("kaehler", "balanced", "pluriclosed", "chern_flat", "astheno_kaehler")


def criterion_5(seed, per_n=500):
    """Closed-form predicate booleans against the engine, plus the two
    pluriclosed formulations against each other."""
    col = _Collector()
    for n in (2, 3, 4, 5):
        for i in range(per_n):
            rng = rng_for(seed * 1000 + 5, n * 10000 + i)
            kind = i % 5
            if kind == 0:
                d = sm.aa_random(rng, n, unimodular=True)
            elif kind == 1:
                d = sm.aa_random(rng, n, unimodular=False)
            elif kind == 2:
                d = sm.aa_pluriclosed(rng, n, unimodular=bool(i % 2))
            elif kind == 3:
                d = sm.aa_kaehler(rng, n)
            else:
                d = sm.aa_balanced(rng, n)
            try:
                rep = aa_report(d)
            except LieHermitianError as exc:
                col.ok(False, "n=%d draw %d: report raised %s" % (n, i, exc))
                continue
            col.ok(True, "")
            eng = rep["engine"]["properties"]
            for key in _AA_FIVE:
                if rep["properties"].get(key) is None:
                    continue
                col.ok(rep["properties"][key] == eng[key],
                       "n=%d draw %d: %s closed %s engine %s"
                       % (n, i, key, rep["properties"][key], eng[key]))
    # matrix equation vs spectral formulation of pluriclosed
    for i in range(400):
        rng = rng_for(seed * 1000 + 5, 900000 + i)
        n = int(rng.integers(2, 6))
        if i < 200:
            d = sm.aa_normal_matrix(rng, n, unimodular=bool(i % 2))
        else:
            d = sm.aa_random(rng, n, unimodular=bool(i % 2))
        tol10 = 10.0 * build_almost_abelian(d).tol
        mat = aa_residuals(d)["pluriclosed"]
        spec = spectral_pluriclosed_residual(d)
        col.ok((mat <= tol10) == (spec <= tol10),
               "formulations draw %d: matrix %.3e spectral %.3e" % (i, mat, spec))
    return _result(5, "aa-booleans", "codim-1 closed-form predicates match the engine", col)


def criterion_6(seed, count=100):
    """Torsion-parallel condition on codim-1 data: projection and refutation."""
    col = _Collector()
    for i in range(count):
        rng = rng_for(seed * 1000 + 6, i)
        n = int(rng.integers(2, 6))
        d = sm.aa_btp(rng, n)
        rep = aa_report(d)
        eng = rep["engine"]["properties"]
        col.ok(eng["btp"] and eng["bkl"],
               "projected draw %d not parallel (btp=%s bkl=%s)" % (i, eng["btp"], eng["bkl"]))
        H2 = d.A + d.A.conj().T
        col.ok(max(max_abs(H2), max_abs(d.A @ d.v)) <= 10.0 * build_almost_abelian(d).tol,
               "projected draw %d: constraint drifted" % i)
    for i in range(count):
        rng = rng_for(seed * 1000 + 6, 10000 + i)
        n = int(rng.integers(2, 6))
        d = sm.aa_btp_perturbed(rng, n)
        rep = aa_report(d)
        col.ok(not rep["engine"]["properties"]["btp"],
               "perturbed draw %d still parallel" % i)
        col.ok(aa_residuals(d)["btp"] >= 0.1,
               "perturbed draw %d residual too small" % i)
    return _result(6, "aa-btp", "skew-torsion parallelism constraint surface", col)


def criterion_7(seed, count=200):
    """Astheno condition coincides with pluriclosed in low dimension.

    The equality holds for unimodular data only, so it is asserted on
    the unimodular draws; the eigenvalue certificate must agree on every
    astheno positive, including the deliberately non-unimodular ones
    (the certificate family with two or more low eigenvalues never
    balances the trace).
    """
    col = _Collector()
    astheno_seen = 0
    for i in range(count):
        rng = rng_for(seed * 1000 + 7, i)
        n = 4 + (i % 2)
        if i % 3 == 0:
            d = sm.aa_astheno(rng, n)
        elif i % 3 == 1:
            d = sm.aa_pluriclosed(rng, n, unimodular=True)
        else:
            d = sm.aa_random(rng, n, unimodular=True)
        rep = aa_report(d)
        eng = rep["engine"]["properties"]
        if eng["unimodular"]:
            col.ok(eng["astheno_kaehler"] == eng["pluriclosed"],
                   "draw %d n=%d: astheno %s pluriclosed %s"
                   % (i, n, eng["astheno_kaehler"], eng["pluriclosed"]))
        if not eng["astheno_kaehler"]:
            continue
        astheno_seen += 1
        try:
            k, h, comm = aa_astheno_profile(d)
        except NotAstheno as exc:
            col.ok(False, "draw %d: profile refused an astheno sample (%s)" % (i, exc))
            continue
        tol10 = 10.0 * build_almost_abelian(d).tol
        col.near(comm, "draw %d commutator" % i, tol10)
        col.near(abs(h * (n - 2) + (n - 1 - k) * d.lam), "draw %d trace relation" % i,
                 100.0 * tol10)
        re_eigs = np.sort(np.linalg.eigvals(d.A).real)
        lo = np.sum(np.abs(re_eigs[:k] - h / 2.0)) if k else 0.0
        hi = np.sum(np.abs(re_eigs[k:] - (d.lam + h) / 2.0))
        col.near(lo + hi, "draw %d eigenvalue split" % i, 100.0 * tol10)
    detail = "%d astheno positives among %d draws" % (astheno_seen, count)
    return _result(7, "astheno", "astheno equals pluriclosed at k = n-2 (n = 4, 5)", col, detail)


def criterion_8(seed, count=200):
    """Curvature-flatness predicates: closed forms against the engine."""
    col = _Collector()
    ckl_flat_agree = True
    for i in range(count):
        rng = rng_for(seed * 1000 + 8, i)
        n = int(rng.integers(2, 6))
        kind = i % 4
        if kind == 0:
            d = sm.aa_chern_flat(rng, n)
        elif kind == 1:
            d = sm.aa_cyt(rng, n)
        else:
            d = sm.aa_random(rng, n, unimodular=True)
        rep = aa_report(d)
        eng = rep["engine"]["properties"]
        for key in ("chern_flat", "chern_kaehler_like", "cyt"):
            col.ok(rep["properties"][key] == eng[key],
                   "draw %d: %s closed %s engine %s" % (i, key, rep["properties"][key], eng[key]))
        if eng["chern_kaehler_like"] != eng["chern_flat"]:
            ckl_flat_agree = False
            col.ok(False, "draw %d: curvature-symmetric without being flat" % i)
    detail = "symmetry class collapses to flat: %s" % ckl_flat_agree
    return _result(8, "flat-classes", "flatness and curvature-symmetry closed forms", col, detail)


def criterion_9(seed, count=200):
    """Codim-2 closed-form predicate booleans against the engine."""
    col = _Collector()
    for i in range(count):
        rng = rng_for(seed * 1000 + 9, i)
        n = int(rng.integers(3, 6))
        d = sm.c2_random(rng, n, unimodular=bool(i % 2), scramble=bool(i % 3))
        try:
            rep = c2_report(d)
        except LieHermitianError as exc:
            col.ok(False, "draw %d: report raised %s" % (i, exc))
            continue
        eng = rep["engine"]["properties"]
        for key in ("kaehler", "balanced", "pluriclosed", "chern_flat"):
            col.ok(rep["properties"][key] == eng[key],
                   "draw %d: %s closed %s engine %s" % (i, key, rep["properties"][key], eng[key]))
    return _result(9, "c2-booleans", "codim-2 closed-form predicates match the engine", col)


def criterion_10(seed, count=200):
    """Codim-2 curvature data: flat normal form, trace rank, skew-torsion blocks."""
    col = _Collector()
    for i in range(count):
        rng = rng_for(seed * 1000 + 10, i)
        n = int(rng.integers(3, 6))
        d = sm.c2_random(rng, n, unimodular=bool(i % 2), scramble=True)
        a = build_codim2(d)
        bound = 10.0 * a.tol
        rep = c2_report(d)
        # (i) flat samples reconstruct to zero curvature through the normal form
        if rep["engine"]["properties"]["chern_flat"]:
            nf, _frame = chern_flat_normal_form(d)
            col.near(max_abs(hermitian.chern_curvature(build_codim2(nf))),
                     "draw %d flat reconstruction" % i, bound)
        # (ii) first trace has rank <= 1 and its sign follows the scalar
        R = hermitian.chern_curvature(a)
        ric1 = hermitian.ricci_first(R)
        col.ok(rep["ric1_rank"] <= 1, "draw %d: rank %d" % (i, rep["ric1_rank"]))
        s = hermitian.scalar_s(a)[0]
        eig = np.linalg.eigvalsh((ric1 + ric1.conj().T) / 2.0)
        lead = eig[np.argmax(np.abs(eig))]
        if abs(s) > bound:
            col.ok(np.sign(lead.real) == np.sign(s),
                   "draw %d: trace sign %.3e vs scalar %.3e" % (i, lead.real, s))
        # (iv) skew-torsion trace-form blocks and scalar against closed forms
        gaps = rep["gaps"]
        col.near(gaps["bismut_one_one"], "draw %d (1,1) block" % i, bound)
        col.near(gaps["bismut_two_zero"], "draw %d (2,0) block" % i, bound)
        sb_closed = rep["scalars"]["s_b"]
        sb_engine = rep["engine"]["scalars"]["s_b"]
        col.near(abs(sb_closed - sb_engine), "draw %d scalar s_b" % i, bound)
    return _result(10, "c2-curvature", "codim-2 curvature identities and trace blocks", col)


_DISCREPANCY_TAG = "rank>=2 paired-block draw"


def criterion_11(seed, per_family=50, classify_count=100):
    """Normal-form generators and the classifier.

    The rank >= 2 subfamily of the paired-block generator is flagged
    with a fixed tag in each failure message; every such failure is the
    documented obstruction described in the module docstring, not a
    regression.  Failures without the tag are regressions.
    """
    col = _Collector()
    documented = 0
    for kind_pos, kind in enumerate(("v1", "v2", "v0")):
        for i in range(per_family):
            rng = rng_for(seed * 1000 + 11, kind_pos * 1000 + i)
            n = int(rng.integers(3, 7))
            d = sm.c2_generator(rng, n, kind=kind)
            r_drawn = None
            if kind == "v0":
                r_drawn = int(np.linalg.matrix_rank(d.Z, tol=1e-8))
            tag = (" [%s]" % _DISCREPANCY_TAG) if (r_drawn or 0) >= 2 else ""
            rep = c2_report(d)
            eng = rep["engine"]["properties"]
            label = "%s draw %d (n=%d%s)%s" % (
                kind, i, n, "" if r_drawn is None else ", r=%d" % r_drawn, tag)
            checks = {"unimodular": eng["unimodular"], "btp": eng["btp"]}
            if kind == "v1":
                checks.update(bkl=eng["bkl"], pluriclosed=eng["pluriclosed"],
                              balanced=not eng["balanced"])
            elif kind == "v2":
                checks.update(balanced=not eng["balanced"],
                              pluriclosed=not eng["pluriclosed"])
            else:
                checks.update(balanced=eng["balanced"],
                              pluriclosed=not eng["pluriclosed"])
            bad = sorted(k for k, v in checks.items() if not v)
            col.ok(not bad, "%s: failed %s" % (label, bad))
            if bad and tag:
                documented += 1
    for i in range(classify_count):
        rng = rng_for(seed * 1000 + 11, 50000 + i)
        n = int(rng.integers(3, 7))
        kind = ("v1", "v2", "v0")[i % 3]
        d = sm.c2_generator(rng, n, kind=kind)
        expected = kind
        if kind == "v2" and n < 3:
            expected = "v1"
        r_drawn = int(np.linalg.matrix_rank(d.Z, tol=1e-8)) if kind == "v0" else None
        tag = (" [%s]" % _DISCREPANCY_TAG) if (r_drawn or 0) >= 2 else ""
        scrambled = sm.c2_scramble(rng, d)
        try:
            out = classify_btp(scrambled)
        except LieHermitianError as exc:
            col.ok(False, "classify draw %d (%s)%s: raised %s" % (i, kind, tag, exc))
            continue
        good = out["family"] == expected
        bound = 10.0 * build_codim2(d).tol
        if good and expected in ("v1", "v2"):
            good = abs(out["params"]["v2"] - np.linalg.norm(d.v)) <= bound
        if good and expected == "v2":
            zrow = np.linalg.svd(d.Z, compute_uv=False)
            good = abs(out["params"]["p"] - zrow[0]) <= bound
        if good and kind == "v0":
            want_S = np.sort(np.linalg.svd(d.Z, compute_uv=False))[::-1][:r_drawn]
            good = (out["params"]["r"] == r_drawn
                    and max_abs(np.sort(out["params"]["S"])[::-1] - want_S) <= bound)
        col.ok(good, "classify draw %d (%s%s)%s: got %s" % (
            i, kind, "" if r_drawn is None else " r=%d" % r_drawn, tag, out["family"]))
        if not good and tag:
            documented += 1
    undocumented = [f for f in col.failures if _DISCREPANCY_TAG not in f]
    detail = ("%d failures, %d carrying the documented rank>=2 obstruction, "
              "%d unexplained") % (len(col.failures), documented, len(undocumented))
    return _result(11, "btp-families", "torsion-parallel generators and classifier", col, detail)


def criterion_12(seed, count=200):
    """Paired factorization: invariants on compatible pairs, refusal otherwise."""
    col = _Collector()
    for i in range(count):
        rng = rng_for(seed * 1000 + 12, i)
        r = int(rng.integers(1, 5))
        b, z = sm.takagi_compatible_pair(rng, r)
        try:
            U, S, V, W = paired_takagi_factor(b, z)
        except LieHermitianError as exc:
            col.ok(False, "compatible draw %d raised %s" % (i, exc))
            continue
        Sd = np.diag(S)
        bound = 1e-8 * max(1.0, float(S[0]))
        col.near(max_abs(b - U @ Sd @ V.conj().T), "draw %d b" % i, bound)
        col.near(max_abs(z - U @ Sd @ W @ V.T), "draw %d z" % i, bound)
        col.near(max_abs(W - W.T), "draw %d W symmetry" % i, bound)
        col.near(max_abs(W @ Sd - Sd @ W), "draw %d WS commutation" % i, bound)
        col.ok(np.all(np.diff(S) <= 1e-12) and np.all(S > 0),
               "draw %d: S not positive descending" % i)
    for i in range(count):
        rng = rng_for(seed * 1000 + 12, 10000 + i)
        r = int(rng.integers(1, 5))
        b, z = sm.takagi_incompatible_pair(rng, r)
        try:
            paired_takagi_factor(b, z)
            col.ok(False, "incompatible draw %d accepted" % i)
        except NotCompatible:
            col.ok(True, "")
    return _result(12, "takagi", "paired symmetric factorization invariants", col)


def _mutation_probe(seed):
    """Quick identity set that must pass unmutated and break under either
    documented sign flip.  Returns the list of failing labels.  The
    family reports cross-check closed forms against the engine and raise
    when a mutation makes them disagree; that raise counts as detection.
    """
    bad = []
    for i in range(10):
        rng = rng_for(seed * 1000 + 13, i)
        n = int(rng.integers(2, 5))
        if i % 2:
            a = build_almost_abelian(sm.aa_random(rng, n, unimodular=True))
        else:
            a = build_codim2(sm.c2_random(rng, n + 1, unimodular=True))
        bound = 10.0 * a.tol
        if hermitian.ricci_form_trace_residual(a) > bound:
            bad.append("ricci-trace draw %d" % i)
        if hermitian.torsion_bianchi_residual(a) > 1000.0 * bound:
            bad.append("bianchi draw %d" % i)
        res = hermitian.scalar_identity_residuals(a)
        if max(res["s"], res["s_hat"]) > bound:
            bad.append("scalar draw %d" % i)
    for i in range(5):
        rng = rng_for(seed * 1000 + 13, 100 + i)
        d = sm.aa_btp(rng, int(rng.integers(2, 5)))
        try:
            if not aa_report(d)["engine"]["properties"]["btp"]:
                bad.append("projected-parallel draw %d" % i)
        except LieHermitianError as exc:
            bad.append("projected-parallel draw %d (%s)" % (i, type(exc).__name__))
    return bad


# The two documented convention mutations: the transpose term in the
# torsion and the second (connection-squared) term in the curvature.
MUTATIONS = (
    ("torsion-transpose-term", {"torsion_index": 2}),
    ("curvature-second-term", {"curvature_index": 1}),
)


def criterion_13(seed):
    """Single sign flips in the core conventions break the battery."""
    col = _Collector()
    baseline = _mutation_probe(seed)
    col.ok(not baseline, "baseline probe failed: %s" % baseline[:3])
    for name, kwargs in MUTATIONS:
        with hermitian.sign_mutation(**kwargs):
            broken = _mutation_probe(seed)
        col.ok(bool(broken), "mutation %r went undetected" % name)
        after = _mutation_probe(seed)
        col.ok(not after, "mutation %r leaked out of its scope" % name)
    return _result(13, "mutation", "sign-flip sensitivity of the conventions", col)


_CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
    13: criterion_13,
}

SLUGS = {
    1: "duality", 2: "gauduchon", 3: "skt-agreement", 4: "aa-scalars",
    5: "aa-booleans", 6: "aa-btp", 7: "astheno", 8: "flat-classes",
    9: "c2-booleans", 10: "c2-curvature", 11: "btp-families",
    12: "takagi", 13: "mutation",
}


def run_battery(seed=DEFAULT_SEED, name_filter=None):
    """Run the numbered criteria, optionally restricted by substring.

    ``name_filter`` matches against "criterion-N" and the slug, case
    insensitive.  Returns a list of CriterionResult in numeric order.
    """
    selected = []
    for number in sorted(_CRITERIA):
        label = "criterion-%d %s" % (number, SLUGS[number])
        if name_filter and name_filter.lower() not in label.lower():
            continue
        selected.append(number)
    return [_CRITERIA[number](seed) for number in selected]
