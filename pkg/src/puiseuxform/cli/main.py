"""Command line entry points: polygon, expand, verify, check-lemmas, gen."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from ..algebra import INFINITY, OneForm, rat_str
from ..expansion import (
    Limits,
    characteristic_poly,
    expand_branches,
    invariance_residual,
    lemma_checks,
    series_text,
    verify_bound,
)
from ..oracle import STANDARD_SIGNATURES, gen_case
from ..polygon import MalformedFormError, multiplicity, polygon_of, support, y_order
from .parser import FormError, ParseError, parse_form, poly_to_text
from .svg import emit_svg


def _add_form_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--a", default="0", help="dx coefficient, e.g. '-3*x^2'")
    sp.add_argument("--b", default="0", help="dy coefficient, e.g. '2*y'")
    sp.add_argument(
        "--form",
        metavar="FILE",
        help="read the dx coefficient from the first non-blank line "
        "of FILE and the dy coefficient from the second",
    )


def _add_limit_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--max-exp", default="40", metavar="Q",
                    help="stop a branch once exponents exceed Q (default 40)")
    sp.add_argument("--max-ram", type=int, default=16, metavar="N",
                    help="maximum accumulated ramification (default 16)")
    sp.add_argument("--max-branches", type=int, default=64, metavar="N",
                    help="maximum number of reported branches (default 64)")
    sp.add_argument("--dicritical-samples", default="1", metavar="LIST",
                    help="comma-separated coefficients sampled from dicritical "
                    "families (default '1')")


def _load_form(args) -> OneForm:
    if args.form:
        lines = [
            ln.strip()
            for ln in Path(args.form).read_text(encoding="utf-8").splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")
        ]
        if len(lines) != 2:
            raise FormError(
                "form file must hold exactly two coefficient lines, found %d"
                % len(lines)
            )
        return parse_form(lines[0], lines[1])
    return parse_form(args.a, args.b)


def _rat_flag(flag: str, text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("%s: %s" % (flag, exc)) from None


def _rat_list_flag(flag: str, text: str) -> tuple[Fraction, ...]:
    return tuple(
        _rat_flag(flag, chunk.strip())
        for chunk in text.split(",")
        if chunk.strip()
    )


def _limits(args) -> Limits:
    samples = _rat_list_flag("--dicritical-samples", args.dicritical_samples)
    if not samples:
        raise ValueError("--dicritical-samples must list at least one coefficient")
    return Limits(
        max_exponent=_rat_flag("--max-exp", args.max_exp),
        max_ramification=args.max_ram,
        max_branches=args.max_branches,
        dicritical_samples=samples,
    )


def _pt(p) -> list[str]:
    return [rat_str(p.i), rat_str(p.j)]


def _pt_text(p) -> str:
    return "(%s, %s)" % (rat_str(p.i), rat_str(p.j))


def _char_poly_text(phi) -> str:
    if phi.dicritical:
        return "0"
    chunks = []
    for j, co in sorted(phi.coeffs, reverse=True):
        parts = []
        if abs(co) != 1 or j == 0:
            parts.append(rat_str(abs(co)))
        if j != 0:
            parts.append("c" if j == 1 else "c^%d" % j)
        body = "*".join(parts)
        if not chunks:
            chunks.append(body if co > 0 else "-" + body)
        else:
            chunks.append((" + " if co > 0 else " - ") + body)
    return "".join(chunks)


def _polygon_payload(w: OneForm) -> dict:
    np = polygon_of(w)
    sides = []
    for s in np.sides:
        phi = characteristic_poly(w, support(np, s.coslope))
        sides.append(
            {
                "start": _pt(s.start),
                "end": _pt(s.end),
                "coslope": rat_str(s.coslope),
                "phi": _char_poly_text(phi),
                "dicritical": phi.dicritical,
            }
        )
    return {
        "cloud": [_pt(p) for p in np.cloud],
        "polygon": {
            "vertices": [_pt(v) for v in np.vertices],
            "sides": sides,
        },
        "y_order": y_order(w),
        "multiplicity": multiplicity(w),
    }


def _step_payload(s) -> dict:
    return {
        "mu": rat_str(s.mu),
        "c": rat_str(s.c),
        "characteristic": s.characteristic,
        "dicritical": s.dicritical,
        "contact": s.contact_kind,
        "q_before": s.q_before,
        "q_after": s.q_after,
    }


def _branch_payload(b, w: OneForm | None = None) -> dict:
    payload = {
        "series": series_text(b.steps),
        "steps": [_step_payload(s) for s in b.steps],
        "r": b.r,
        "exact": b.exact,
        "truncated_at": None if b.truncated_at is None else rat_str(b.truncated_at),
    }
    if w is not None:
        res = invariance_residual(w, b)
        payload["residual"] = "infinity" if res is INFINITY else rat_str(res)
    return payload


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _step_text(s) -> str:
    flags = []
    if s.characteristic:
        flags.append("characteristic")
    if s.dicritical:
        flags.append("dicritical")
    tail = (" " + ", ".join(flags)) if flags else ""
    return "mu=%s c=%s q:%d->%d [%s]%s" % (
        rat_str(s.mu), rat_str(s.c), s.q_before, s.q_after, s.contact_kind, tail,
    )


def _branch_status(b) -> str:
    if b.exact:
        return "exact"
    if b.truncated_at is None:
        return "truncated before the first term"
    return "truncated at mu=%s" % rat_str(b.truncated_at)


def cmd_polygon(args) -> int:
    w = _load_form(args)
    np = polygon_of(w)
    if args.support and not args.svg:
        raise ValueError("--support requires --svg")
    if args.svg:
        if args.support:
            mus = list(_rat_list_flag("--support", args.support))
        else:
            mus = [s.coslope for s in np.sides] or [Fraction(1)]
        emit_svg(np, args.svg, support_mus=mus, title="Newton polygon")
    if args.json:
        _emit_json(_polygon_payload(w))
        return 0
    print("cloud points:", ", ".join(_pt_text(p) for p in np.cloud))
    print("vertices:", ", ".join(_pt_text(v) for v in np.vertices))
    if np.sides:
        for s in np.sides:
            phi = characteristic_poly(w, support(np, s.coslope))
            print(
                "side %s -- %s  co-slope %s  Phi(c) = %s%s"
                % (
                    _pt_text(s.start),
                    _pt_text(s.end),
                    rat_str(s.coslope),
                    _char_poly_text(phi),
                    "  (dicritical)" if phi.dicritical else "",
                )
            )
    else:
        print("sides: none")
    print("y-order:", y_order(w))
    print("multiplicity:", multiplicity(w))
    if args.svg:
        print("svg written to", args.svg)
    return 0


def cmd_expand(args) -> int:
    w = _load_form(args)
    result = expand_branches(w, _limits(args))
    if args.json:
        _emit_json(
            {
                "branches": [_branch_payload(b, w) for b in result.branches],
                "notes": list(result.notes),
            }
        )
        return 0
    print("branches (%d):" % len(result.branches))
    for i, b in enumerate(result.branches, 1):
        print("  [%d] y = %s" % (i, series_text(b.steps)))
        print("      r = %d (%s)" % (b.r, _branch_status(b)))
        for s in b.steps:
            print("      %s" % _step_text(s))
    if result.notes:
        print("notes:")
        for note in result.notes:
            print("  -", note)
    return 0


def cmd_verify(args) -> int:
    w = _load_form(args)
    result = expand_branches(w, _limits(args))
    report = verify_bound(w, result.branches)
    if args.json:
        _emit_json(
            {
                "branches": [_branch_payload(b, w) for b in result.branches],
                "notes": list(result.notes),
                "max_r": report.max_r,
                "y_order": report.y_order,
                "multiplicity": report.multiplicity,
                "bound_ok": report.ok,
            }
        )
        return 0 if report.ok else 1
    for i, b in enumerate(result.branches, 1):
        print(
            "branch [%d] y = %s: r = %d (%s)"
            % (i, series_text(b.steps), b.r, _branch_status(b))
        )
    print("max r =", report.max_r)
    print("y-order =", report.y_order)
    print("multiplicity =", report.multiplicity)
    print(
        "bound max r <= y-order <= multiplicity:",
        "PASS" if report.ok else "FAIL",
    )
    return 0 if report.ok else 1


def cmd_check_lemmas(args) -> int:
    w = _load_form(args)
    result = expand_branches(w, _limits(args))
    reports = [lemma_checks(tr) for tr in result.traces]
    counts = {"pass": 0, "fail": 0, "vacuous": 0}
    payload_traces = []
    for tr, rep in zip(result.traces, reports):
        steps_payload = []
        for entry in rep.steps:
            row = {"mu": rat_str(entry.mu)}
            for name, check in (
                ("l1", entry.l1), ("l2", entry.l2),
                ("l3", entry.l3), ("corollary", entry.corollary),
            ):
                counts[check.status] += 1
                row[name] = {"status": check.status, "detail": check.detail}
            steps_payload.append(row)
        payload_traces.append(
            {"series": series_text(s.step for s in tr), "steps": steps_payload}
        )
    ok = all(rep.ok for rep in reports)
    if args.json:
        _emit_json({"traces": payload_traces, "ok": ok})
        return 0 if ok else 1
    for tr, rep in zip(result.traces, reports):
        print("path y ~ %s" % series_text(s.step for s in tr))
        for entry in rep.steps:
            cells = []
            for name, check in (
                ("L1", entry.l1), ("L2", entry.l2),
                ("L3", entry.l3), ("corollary", entry.corollary),
            ):
                cell = "%s=%s" % (name, check.status)
                if check.status == "fail":
                    cell += " (%s)" % check.detail
                cells.append(cell)
            print("  mu=%s: %s" % (rat_str(entry.mu), "  ".join(cells)))
    print(
        "checks: %d passed, %d failed, %d vacuous"
        % (counts["pass"], counts["fail"], counts["vacuous"])
    )
    print("lemma verdict:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_gen(args) -> int:
    if args.signature is not None:
        signature = tuple(
            Fraction(c.strip()) for c in args.signature.split(",") if c.strip()
        )
    else:
        signature = STANDARD_SIGNATURES[args.seed % len(STANDARD_SIGNATURES)]
    case = gen_case(signature, args.seed)
    if args.json:
        _emit_json(
            {
                "signature": [rat_str(e) for e in case.signature],
                "seed": case.seed,
                "a": poly_to_text(case.form.a),
                "b": poly_to_text(case.form.b),
                "curve": poly_to_text(case.curve),
                "branch": _branch_payload(case.branch, case.form),
                "r": case.r,
                "extra_line": None
                if case.extra_line is None
                else rat_str(case.extra_line),
            }
        )
        return 0
    print(
        "signature:",
        ", ".join(rat_str(e) for e in case.signature) if case.signature else "(none)",
    )
    print("seed:", case.seed)
    print("planted branch: y =", series_text(case.branch.steps))
    print("r =", case.r)
    if case.extra_line is not None:
        print("extra smooth factor: y = %s*x" % rat_str(case.extra_line))
    print("curve f =", poly_to_text(case.curve))
    print("a =", poly_to_text(case.form.a))
    print("b =", poly_to_text(case.form.b))
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puiseuxform",
        description="Newton polygons and exact invariant-branch expansion "
        "for plane singular 1-forms a(x,y) dx + b(x,y) dy",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("polygon", help="print the cloud, hull, y-order and multiplicity")
    _add_form_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--svg", metavar="PATH", help="also draw the polygon as SVG")
    sp.add_argument("--support", metavar="LIST",
                    help="comma-separated co-slopes of support lines to draw")
    sp.set_defaults(func=cmd_polygon)

    sp = sub.add_parser("expand", help="expand the invariant branches term by term")
    _add_form_args(sp)
    _add_limit_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("verify", help="check max r <= y-order <= multiplicity")
    _add_form_args(sp)
    _add_limit_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser(
        "check-lemmas",
        help="machine-check the per-step polygon facts along every expansion path",
    )
    _add_form_args(sp)
    _add_limit_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check_lemmas)

    sp = sub.add_parser("gen", help="generate a form with a planted branch")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--signature", metavar="LIST",
                    help="comma-separated characteristic exponents, e.g. '3/2,7/4' "
                    "(empty string for an unramified case)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gen)
    return parser


_VALUE_FLAGS = frozenset(
    {
        "--a", "--b", "--form", "--svg", "--support", "--seed", "--signature",
        "--max-exp", "--max-ram", "--max-branches", "--dicritical-samples",
    }
)


def _normalize_argv(argv) -> list[str]:
    # let expression values lead with a minus sign: --a -3*x^2
    argv = list(sys.argv[1:] if argv is None else argv)
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None) -> int:
    args = build_arg_parser().parse_args(_normalize_argv(argv))
    try:
        return args.func(args)
    except (ParseError, FormError, MalformedFormError) as exc:
        print("error:", exc, file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print("error:", exc, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
