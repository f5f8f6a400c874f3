"""Command line front end.

Five subcommands over JSON spec files: ``check`` classifies the metric,
``tensors`` dumps the raw arrays, ``classify`` runs the normal-form
search, ``sample`` drives the seeded randomized invariant suites, and
``verify`` executes the full acceptance battery.  Reports are emitted
through the canonical JSON writer, so identical inputs and flags give
byte-identical output.

Exit codes are stable and documented: 0 for success including valid
negative answers (a metric that is simply not pluriclosed, a
classification answering NotBTP), 2 for unreadable or malformed input,
3 for well-formed input that fails a structural requirement (Jacobi,
integrability, unimodularity where demanded), 4 when a closed form and
the tensor engine disagree, and 1 for anything else the library
refuses.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from . import forms
from . import hermitian
from . import serial
from . import verify
from . import sampling as sm
from .algebra import jacobi_residual, max_abs, unimodularity_defect
from .almost_abelian import aa_report, build_almost_abelian
from .codim2 import build_codim2, c2_report, classify_btp, from_almost_abelian
from .errors import (
    AntisymmetryViolation,
    CrossCheckFailure,
    DimensionMismatch,
    DuplicateEntry,
    IndexOutOfRange,
    IntegrabilityViolation,
    InvalidAlgebra,
    InvalidDegree,
    LieHermitianError,
    NegativeLambda,
    NotUnimodular,
    NotUnitary,
    ParameterDomain,
    ParseError,
)

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_PARSE = 2
EXIT_STRUCTURE = 3
EXIT_CROSSCHECK = 4

_PARSE_CLASSES = (
    ParseError,
    ParameterDomain,
    DimensionMismatch,
    IndexOutOfRange,
    DuplicateEntry,
    AntisymmetryViolation,
    NotUnitary,
    InvalidDegree,
)
_STRUCTURE_CLASSES = (
    InvalidAlgebra,
    IntegrabilityViolation,
    NotUnimodular,
    NegativeLambda,
)


def exit_code_for(exc):
    if isinstance(exc, _PARSE_CLASSES):
        return EXIT_PARSE
    if isinstance(exc, _STRUCTURE_CLASSES):
        return EXIT_STRUCTURE
    if isinstance(exc, CrossCheckFailure):
        return EXIT_CROSSCHECK
    return EXIT_OTHER


def _error_payload(exc):
    """JSON-able description of a refusal, written to stderr.

    Structured attachments ride along when the exception carries them,
    in particular the integrability residual matrices, so a failing
    spec can be debugged from the error output alone.
    """
    out = {"error": type(exc).__name__, "message": str(exc)}
    res = getattr(exc, "residuals", None)
    if res is not None:
        out["residuals"] = serial.jsonable(res)
    if isinstance(exc, CrossCheckFailure):
        out["quantity"] = exc.name
        out["closed_form"] = serial.jsonable(exc.closed)
        out["engine"] = serial.jsonable(exc.engine)
    return out


# ---------------------------------------------------------------- output


def _fmt_scalar(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _text_lines(prefix, value, lines):
    if isinstance(value, dict):
        for key in sorted(value):
            _text_lines(prefix + "." + key if prefix else key, value[key], lines)
    elif isinstance(value, (list, tuple)):
        if len(value) <= 6 and not any(isinstance(x, (dict, list, tuple)) for x in value):
            lines.append("%s: %s" % (prefix, json.dumps(list(value))))
        else:
            lines.append("%s: [%d entries]" % (prefix, len(value)))
    else:
        lines.append("%s: %s" % (prefix, _fmt_scalar(value)))


def _render(report, fmt):
    if fmt == "json":
        return serial.canonical_json(report)
    lines = []
    _text_lines("", report, lines)
    return "\n".join(lines) + "\n"


def _emit(report, args):
    serial.write_text(_render(report, args.format), args.output)


# ----------------------------------------------------------------- input


def _load(args):
    spec = serial.load_spec(args.path)
    if args.tol is not None:
        spec = dict(spec)
        spec["tolerance"] = float(args.tol)
        serial.validate_spec(spec)
    family, data = serial.materialize(spec)
    return spec, family, data


def _structure_checks(a):
    dd = max(
        forms.max_coeff(forms.exterior_d(a, forms.exterior_d(a, forms.phi(k))))
        for k in range(1, a.n + 1)
    )
    return {
        "jacobi_residual": a.jacobi_max,
        "d_squared_residual": dd,
        "unimodularity_defect": max_abs(unimodularity_defect(a)),
        "curvature_hermitian_residual": hermitian.curvature_hermitian_residual(
            hermitian.chern_curvature(a)),
    }


# ------------------------------------------------------------- commands


def cmd_check(args):
    spec, family, data = _load(args)
    a = serial.algebra_of(family, data)
    report = serial.report_header("check", tol=a.tol)
    report["input"] = spec
    report["family"] = family
    report["n"] = a.n
    report["report"] = hermitian.property_report(a)
    if family == "almost_abelian":
        report["family_report"] = aa_report(data)
    elif family != "general":
        report["family_report"] = c2_report(data)
    report["structure"] = _structure_checks(a)
    _emit(serial.jsonable(report), args)
    return EXIT_OK


def cmd_tensors(args):
    spec, family, data = _load(args)
    a = serial.algebra_of(family, data)
    cut = a.tol
    T = hermitian.chern_torsion(a)
    R = hermitian.chern_curvature(a)
    b11, b20 = hermitian.bismut_ricci_blocks(a)
    report = serial.report_header("tensors", tol=a.tol)
    report["input"] = spec
    report["family"] = family
    report["n"] = a.n
    report["sparse"] = {
        "C": serial.sparse_tensor3(a.C, tol=cut, antisymmetric=True),
        "D": serial.sparse_tensor3(a.D, tol=cut),
        "torsion": serial.sparse_tensor3(T, tol=cut, antisymmetric=True),
        "curvature": serial.sparse_tensor4(R, tol=cut),
    }
    report["matrices"] = {
        "ricci_first": serial.cmat(hermitian.ricci_first(R)),
        "ricci_second": serial.cmat(hermitian.ricci_second(R)),
        "ricci_third": serial.cmat(hermitian.ricci_third(R)),
        "bismut_one_one": serial.cmat(b11),
        "bismut_two_zero": serial.cmat(b20),
    }
    report["vectors"] = {
        "torsion_trace": serial.cvec(hermitian.torsion_trace(a)),
        "connection_trace": serial.cvec(hermitian.chern_connection_trace(a)),
        "bracket_trace": serial.cvec(hermitian.bracket_trace(a)),
        "divergence": serial.cvec(hermitian.chern_divergence(a)),
    }
    report["scalars"] = hermitian.property_report(a)["scalars"]
    report["structure"] = _structure_checks(a)
    _emit(serial.jsonable(report), args)
    return EXIT_OK


def cmd_classify(args):
    spec, family, data = _load(args)
    if family == "general":
        raise ParameterDomain(
            "classification expects a codimension-two family; "
            "rebuild the spec with an explicit family")
    if family == "almost_abelian":
        data = from_almost_abelian(data)
    out = classify_btp(data)
    report = serial.report_header("classify", tol=data.tol)
    report["input"] = spec
    report["classification"] = {
        "family": out["family"],
        "params": out["params"],
        "frame": serial.cmat(out["frame"]) if out["frame"] is not None else None,
        "residuals": out["residuals"],
    }
    _emit(serial.jsonable(report), args)
    return EXIT_OK


_SAMPLE_FAMILIES = ("general", "almost_abelian", "codim2", "btpv1", "btpv2", "btpv0")


def _sample_general(rng, tol):
    a = sm.random_general(rng, int(rng.integers(2, 5)))
    bound = 10.0 * a.tol
    dd = max(
        forms.max_coeff(forms.exterior_d(a, forms.exterior_d(a, forms.phi(k))))
        for k in range(1, a.n + 1)
    )
    checks = {"duality": (a.jacobi_max <= bound) == (dd <= bound)}
    return a, checks


def _sample_aa(rng, tol):
    unimod = bool(rng.integers(0, 2))
    d = sm.aa_random(rng, int(rng.integers(2, 6)), unimodular=unimod)
    a = build_almost_abelian(d)
    bound = 10.0 * a.tol
    checks = {"cross_check": True}
    try:
        aa_report(d)
    except CrossCheckFailure:
        checks["cross_check"] = False
    checks["jacobi"] = a.jacobi_max <= bound
    if unimod:
        checks["gauduchon"] = forms.del_delbar_residual(a, a.n - 1) <= bound
        res = hermitian.scalar_identity_residuals(a)
        checks["scalar_identities"] = max(res["s"], res["s_hat"]) <= bound
    return d, checks


def _sample_c2(rng, tol):
    unimod = bool(rng.integers(0, 2))
    d = sm.c2_random(rng, int(rng.integers(3, 6)), unimodular=unimod)
    a = build_codim2(d)
    bound = 10.0 * a.tol
    checks = {"cross_check": True}
    try:
        c2_report(d)
    except CrossCheckFailure:
        checks["cross_check"] = False
    checks["jacobi"] = a.jacobi_max <= bound
    if max_abs(unimodularity_defect(a)) <= bound:
        checks["gauduchon"] = forms.del_delbar_residual(a, a.n - 1) <= bound
    return d, checks


def _sample_generator(kind):
    def draw(rng, tol):
        d = sm.c2_generator(rng, int(rng.integers(3, 7)), kind=kind)
        eng = c2_report(d)["engine"]["properties"]
        checks = {"unimodular": eng["unimodular"], "torsion_parallel": eng["btp"]}
        if kind == "v1":
            checks["bkl"] = eng["bkl"]
            checks["pluriclosed"] = eng["pluriclosed"]
        elif kind == "v2":
            checks["not_balanced"] = not eng["balanced"]
            checks["not_pluriclosed"] = not eng["pluriclosed"]
        else:
            checks["balanced"] = eng["balanced"]
            checks["not_pluriclosed"] = not eng["pluriclosed"]
        scrambled = sm.c2_scramble(rng, d)
        try:
            out = classify_btp(scrambled)
            expected = kind if not (kind == "v2" and d.n < 3) else "v1"
            checks["classify_roundtrip"] = out["family"] == expected
        except LieHermitianError:
            checks["classify_roundtrip"] = False
        return d, checks
    return draw


_SAMPLERS = {
    "general": _sample_general,
    "almost_abelian": _sample_aa,
    "codim2": _sample_c2,
    "btpv1": _sample_generator("v1"),
    "btpv2": _sample_generator("v2"),
    "btpv0": _sample_generator("v0"),
}


def cmd_sample(args):
    """Seeded random draws with per-family invariant suites.

    A failing draw is an answer, not an error, so the exit code stays
    zero; every failing draw is additionally written out as a
    standalone spec file that reproduces the finding through the check
    command.
    """
    if args.count < 1:
        raise ParameterDomain("count must be at least 1")
    draw = _SAMPLERS[args.family]
    outdir = os.path.dirname(args.output) if args.output else ""
    tallies = {}
    failures = []
    emitted = []
    for i in range(args.count):
        rng = sm.rng_for(args.seed, i)
        try:
            data, checks = draw(rng, args.tol)
        except LieHermitianError as exc:
            data, checks = None, {"construction": False}
            failed = ["construction (%s)" % type(exc).__name__]
        else:
            failed = sorted(k for k, v in checks.items() if not v)
        for name, good in checks.items():
            slot = tallies.setdefault(name, {"pass": 0, "fail": 0})
            slot["pass" if good else "fail"] += 1
        if failed:
            entry = {"index": i, "failed": failed}
            if data is not None:
                spec = serial.spec_from_data(data)
                entry["spec"] = spec
                fname = "%s-failure-%d.spec.json" % (args.family, i)
                serial.write_text(serial.canonical_json(serial.jsonable(spec)),
                                  os.path.join(outdir, fname))
                emitted.append(fname)
            failures.append(entry)
    report = serial.report_header("sample", tol=args.tol, seed=args.seed)
    report["generator"] = sm.GENERATOR_LABEL
    report["family"] = args.family
    report["count"] = args.count
    report["tallies"] = tallies
    report["failures"] = failures
    report["failure_files"] = emitted
    _emit(serial.jsonable(report), args)
    return EXIT_OK


def cmd_verify(args):
    results = verify.run_battery(seed=args.seed, name_filter=args.filter)
    if args.format == "json":
        report = serial.report_header("verify", seed=args.seed)
        report["results"] = [r.as_dict() for r in results]
        report["passed"] = all(r.passed for r in results)
        _emit(serial.jsonable(report), args)
    else:
        lines = []
        for r in results:
            line = "%s criterion-%d %s checks=%d" % (
                "PASS" if r.passed else "FAIL", r.number, r.slug, r.checks)
            if r.detail:
                line += "  " + r.detail
            lines.append(line)
            for f in r.failures[:10]:
                lines.append("     " + f)
        lines.append("%d/%d criteria pass" % (
            sum(r.passed for r in results), len(results)))
        serial.write_text("\n".join(lines) + "\n", args.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_OTHER


# ------------------------------------------------------------------ glue


def _common_flags(p, seed_default=None):
    p.add_argument("--tol", type=float, default=None,
                   help="tolerance override")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None, metavar="PATH",
                   help="write the report here instead of stdout")
    if seed_default is not None:
        p.add_argument("--seed", type=int, default=seed_default)


def build_parser():
    top = argparse.ArgumentParser(
        prog="liehermitian",
        description="left-invariant Hermitian geometry from structure constants")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="metric predicates for one spec file")
    p.add_argument("path")
    _common_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tensors", help="torsion, curvature and trace dumps")
    p.add_argument("path")
    _common_flags(p)
    p.set_defaults(func=cmd_tensors)

    p = sub.add_parser("classify", help="normal-form search for one spec file")
    p.add_argument("path")
    _common_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sample", help="seeded random invariant suites")
    p.add_argument("family", choices=_SAMPLE_FAMILIES)
    p.add_argument("--count", type=int, default=20)
    _common_flags(p, seed_default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run the acceptance battery")
    p.add_argument("--filter", default=None, metavar="NAME",
                   help="run only criteria whose name contains NAME")
    _common_flags(p, seed_default=verify.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)
    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LieHermitianError as exc:
        sys.stderr.write(serial.canonical_json(_error_payload(exc)))
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
