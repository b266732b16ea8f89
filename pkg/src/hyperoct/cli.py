"""Command-line interface: ``hyperoct <command> ...``.

Exit codes: 0 on success, 1 when a verification fails or an input is invalid,
2 on usage errors. Reports are deterministic; every randomized check uses a
fixed default seed.
"""

import argparse
import json
import sys

from .algebra import AlgebraError, format_linear, load_algebra
from .category import (
    EnumerationCapExceeded,
    MorphismSyntaxError,
    enumerate_hom,
    format_morphism,
    ifas_compose,
    parse_morphism,
    to_deltaH,
)
from .degree_zero import WellDefinednessFailure, ho0, verify_exactness
from .operads import Truncation, verify_evaluation, verify_module_axioms, verify_operad_axioms, verify_tuple_category
from .reduction import CertificateSyntaxError, parse_certificate, reduce, verify_certificate
from .scalars import QQ, GF, parse_ring
from .simplicial import verify_quotient, verify_simplicial

DEFAULT_SEED = 0
MORPHISM_GRAMMAR = (
    "morphism grammar: HOM n m : f0 | f1 | ... | fm\n"
    "  each fiber fj lists source elements in order as i^+ (label 1) or i^- (label t)"
)


class UsageError(Exception):
    pass


def _emit(out, fmt, text_lines, record):
    if fmt == "json":
        out.write(json.dumps(record, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _morphism(text):
    try:
        return parse_morphism(text)
    except (MorphismSyntaxError, ValueError) as exc:
        raise UsageError("%s\n%s" % (exc, MORPHISM_GRAMMAR))


def _ring(text):
    try:
        return parse_ring(text)
    except ValueError as exc:
        raise UsageError(str(exc))


def _load(path, ring=None):
    try:
        return load_algebra(path, ring)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror))


# -- commands ------------------------------------------------------------------------


def cmd_algebra_check(args, out):
    try:
        A = _load(args.file, _ring(args.ring) if args.ring else None)
    except AlgebraError as exc:
        _emit(out, args.format, ["invalid: %s" % exc], {"valid": False, "error": str(exc)})
        return 1
    lines = [
        "valid involutive algebra over %s" % A.ring,
        "dimension %d" % A.dimension,
        "basis %s" % " ".join(A.names),
        "commutative %s" % ("yes" if A.is_commutative() else "no"),
        "trivial involution %s" % ("yes" if A.has_trivial_involution() else "no"),
        "canonical form:",
    ] + A.to_text().splitlines()
    record = {
        "valid": True,
        "ring": str(A.ring),
        "dimension": A.dimension,
        "basis": list(A.names),
        "commutative": A.is_commutative(),
        "trivial_involution": A.has_trivial_involution(),
        "canonical": A.to_text(),
    }
    _emit(out, args.format, lines, record)
    return 0


def cmd_ho0(args, out):
    try:
        A = _load(args.file, _ring(args.ring) if args.ring else None)
    except AlgebraError as exc:
        _emit(out, args.format, ["invalid: %s" % exc], {"valid": False, "error": str(exc)})
        return 1
    try:
        r = ho0(A)
    except WellDefinednessFailure as exc:
        _emit(out, args.format, ["FAIL: %s" % exc], {"error": str(exc), "ideal": False})
        return 1
    ideal = r.ideal
    lines = ["HO_0 of a %d-dimensional algebra over %s" % (A.dimension, A.ring)]
    record = {
        "ring": str(A.ring),
        "algebra_dimension": A.dimension,
        "relation_rank": ideal.span_rank,
        "ideal": {
            "closed": ideal.is_ideal,
            "span_rank": ideal.span_rank,
            "augmented_rank": ideal.augmented_rank,
        },
    }
    if A.ring.is_field:
        lines.append("dimension %d" % r.dimension)
        lines.append("quotient basis %s" % (" ".join(r.basis_names) or "(none)"))
        names = ["[%s]" % n for n in r.basis_names]
        table = []
        for k in range(r.dimension):
            for l in range(r.dimension):
                table.append(["[%s]" % r.basis_names[k], "[%s]" % r.basis_names[l], format_linear(r.table[k, l], names, A.ring)])
        unit = format_linear(r.unit, names, A.ring)
        lines.append("unit %s" % unit)
        lines.append("multiplication table:")
        lines.extend("  %s * %s = %s" % tuple(row) for row in table)
        record.update({"dimension": r.dimension, "quotient_basis": r.basis_names, "unit": unit, "table": table})
    else:
        lines.append("free rank %d" % r.free_rank)
        lines.append("torsion %s" % (" ".join(str(t) for t in r.torsion) or "(none)"))
        record.update({"free_rank": r.free_rank, "torsion": r.torsion})
    lines.append(
        "ideal check %s (span rank %d, augmented rank %d)"
        % ("pass" if ideal.is_ideal else "FAIL", ideal.span_rank, ideal.augmented_rank)
    )
    _emit(out, args.format, lines, record)
    return 0 if ideal.is_ideal else 1


def cmd_reduce(args, out):
    f = _morphism(args.morphism)
    if f.target_rank != 0:
        raise UsageError("reduce needs a morphism with target [0]\n" + MORPHISM_GRAMMAR)
    cert = reduce(f)
    verdict = verify_certificate(cert)
    if args.format == "json":
        record = {
            "start": format_morphism(cert.start),
            "steps": [
                {"witness": format_morphism(s.witness), "before": format_morphism(s.before), "after": format_morphism(s.after)}
                for s in cert.steps
            ],
            "valid": verdict.ok,
        }
        _emit(out, "json", [], record)
    else:
        out.write(cert.to_text())
    return 0 if verdict.ok else 1


def cmd_verify_cert(args, out):
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (args.file, exc.strerror))
    try:
        cert = parse_certificate(text)
    except CertificateSyntaxError as exc:
        _emit(out, args.format, ["malformed certificate: %s" % exc], {"valid": False, "error": str(exc)})
        return 1
    v = verify_certificate(cert)
    _emit(out, args.format, [v.line(), "steps %d" % len(cert)], {"valid": v.ok, "index": v.index, "condition": v.condition, "steps": len(cert)})
    return 0 if v.ok else 1


def _report_record(rep):
    return {"name": rep.name, "ok": rep.ok, "checked": rep.checked, "failures": [[law, repr(inst)] for law, inst in rep.failures]}


def _emit_reports(out, fmt, reports):
    lines = []
    for rep in reports:
        lines.extend(rep.lines())
    _emit(out, fmt, lines, {"reports": [_report_record(r) for r in reports], "ok": all(r.ok for r in reports)})
    return 0 if all(r.ok for r in reports) else 1


def cmd_verify_operad(args, out):
    rep = verify_operad_axioms(max_m=args.max, max_k=args.max, max_total=args.max_total, max_free=args.max_free)
    return _emit_reports(out, args.format, [rep])


def cmd_verify_module(args, out):
    reps = [verify_module_axioms(args.max_m, args.max_j, args.rank_cap, samples=args.samples, seed=args.seed)]
    if not args.skip_tuples:
        reps.append(verify_tuple_category(Truncation(args.alphabet, 1, 2), samples=args.samples, seed=args.seed))
        reps.append(
            verify_evaluation(args.alphabet, args.word_length, args.tuple_length, args.max_letters, samples=args.samples, seed=args.seed)
        )
    return _emit_reports(out, args.format, reps)


def cmd_verify_exactness(args, out):
    if args.n is not None:
        cases = [(args.n, _ring(args.ring) if args.ring else QQ)]
    elif args.ring:
        cases = [(n, _ring(args.ring)) for n in range(args.max_n + 1)]
    else:
        cases = [(n, QQ) for n in range(min(args.max_n, 2) + 1)] + [(n, GF(2)) for n in range(args.max_n + 1)]
    try:
        reps = [verify_exactness(n, R) for n, R in cases]
    except EnumerationCapExceeded as exc:
        raise UsageError(str(exc))
    lines = [line for r in reps for line in r.lines()]
    record = {
        "ok": all(r.ok for r in reps),
        "cases": [
            {
                "n": r.n,
                "ring": str(r.ring),
                "hom_size": r.hom_size,
                "composite_zero": r.composite_zero,
                "rank_kernel_epsilon": r.rank_kernel_epsilon,
                "rank_image_rho": r.rank_image_rho,
                "ok": r.ok,
            }
            for r in reps
        ],
    }
    _emit(out, args.format, lines, record)
    return 0 if record["ok"] else 1


def cmd_verify_simplicial(args, out):
    A = None
    if args.algebra:
        try:
            A = _load(args.algebra)
        except AlgebraError as exc:
            _emit(out, args.format, ["invalid: %s" % exc], {"valid": False, "error": str(exc)})
            return 1
    reps = [
        verify_simplicial(A, samples=args.samples, max_length=args.max_length, seed=args.seed),
        verify_quotient(A, samples=args.samples, max_length=args.max_length, seed=args.seed),
    ]
    return _emit_reports(out, args.format, reps)


def cmd_hom_enumerate(args, out):
    try:
        homs = enumerate_hom(args.n, args.m, args.cap)
    except EnumerationCapExceeded as exc:
        raise UsageError(str(exc))
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = []
    for f in homs:
        dh = str(to_deltaH(f)) if f.source_rank >= 0 else "()"
        rows.append((format_morphism(f), dh))
    if args.format == "json":
        _emit(out, "json", [], {"count": len(rows), "morphisms": [{"morphism": a, "deltaH": b} for a, b in rows]})
    else:
        lines = [a if not args.deltaH else "%s    %s" % (a, b) for a, b in rows]
        lines.append("count %d" % len(rows))
        _emit(out, "text", lines, None)
    return 0


def cmd_hom_compose(args, out):
    g, f = _morphism(args.g), _morphism(args.f)
    try:
        gf = ifas_compose(g, f)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(out, args.format, [format_morphism(gf)], {"composite": format_morphism(gf)})
    return 0


# -- parser ----------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("%s\n%s" % (message, self.format_usage().rstrip()))


def build_parser():
    p = _Parser(prog="hyperoct", description="Hyperoctahedral category, bar construction and degree-zero homology.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def fmt(q):
        q.add_argument("--format", choices=("text", "json"), default="text")

    alg = sub.add_parser("algebra", help="algebra files")
    alg_sub = alg.add_subparsers(dest="action", parser_class=_Parser)
    alg_sub.required = True
    chk = alg_sub.add_parser("check", help="validate an algebra file")
    chk.add_argument("file")
    chk.add_argument("--ring")
    fmt(chk)
    chk.set_defaults(func=cmd_algebra_check)

    h = sub.add_parser("ho0", help="degree-zero hyperoctahedral homology")
    h.add_argument("file")
    h.add_argument("--ring", help="override the ground ring: Z, Q or Fp")
    fmt(h)
    h.set_defaults(func=cmd_ho0)

    r = sub.add_parser("reduce", help="reduction certificate for a morphism to [0]")
    r.add_argument("--morphism", required=True)
    fmt(r)
    r.set_defaults(func=cmd_reduce)

    vc = sub.add_parser("verify-cert", help="check a reduction certificate file")
    vc.add_argument("file")
    fmt(vc)
    vc.set_defaults(func=cmd_verify_cert)

    v = sub.add_parser("verify", help="verification suites")
    v_sub = v.add_subparsers(dest="suite", parser_class=_Parser)
    v_sub.required = True
    op = v_sub.add_parser("operad")
    op.add_argument("--max", type=int, default=3)
    op.add_argument("--max-total", type=int, default=None)
    op.add_argument("--max-free", type=int, default=4)
    fmt(op)
    op.set_defaults(func=cmd_verify_operad)
    mo = v_sub.add_parser("module")
    mo.add_argument("--max-m", type=int, default=2)
    mo.add_argument("--max-j", type=int, default=2)
    mo.add_argument("--rank-cap", type=int, default=3)
    mo.add_argument("--alphabet", type=int, default=3)
    mo.add_argument("--word-length", type=int, default=4)
    mo.add_argument("--tuple-length", type=int, default=3)
    mo.add_argument("--max-letters", type=int, default=4)
    mo.add_argument("--samples", type=int, default=200)
    mo.add_argument("--seed", type=int, default=DEFAULT_SEED)
    mo.add_argument("--skip-tuples", action="store_true")
    fmt(mo)
    mo.set_defaults(func=cmd_verify_module)
    ex = v_sub.add_parser("exactness")
    ex.add_argument("--n", type=int)
    ex.add_argument("--max-n", type=int, default=3)
    ex.add_argument("--ring")
    fmt(ex)
    ex.set_defaults(func=cmd_verify_exactness)
    si = v_sub.add_parser("simplicial")
    si.add_argument("--algebra")
    si.add_argument("--samples", type=int, default=100)
    si.add_argument("--max-length", type=int, default=3)
    si.add_argument("--seed", type=int, default=DEFAULT_SEED)
    fmt(si)
    si.set_defaults(func=cmd_verify_simplicial)

    hom = sub.add_parser("hom", help="hom-sets of Delta H")
    hom_sub = hom.add_subparsers(dest="action", parser_class=_Parser)
    hom_sub.required = True
    en = hom_sub.add_parser("enumerate")
    en.add_argument("n", type=int)
    en.add_argument("m", type=int)
    en.add_argument("--cap", type=int, default=None)
    en.add_argument("--deltaH", action="store_true", help="also print the (phi, g) form")
    fmt(en)
    en.set_defaults(func=cmd_hom_enumerate)
    co = hom_sub.add_parser("compose", help="g o f")
    co.add_argument("g")
    co.add_argument("f")
    fmt(co)
    co.set_defaults(func=cmd_hom_compose)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
