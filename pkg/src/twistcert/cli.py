"""Command-line front end.

Exit codes: 0 = verified/ok, 1 = verification failed, 2 = usage or
realizability error.  Output is plain text with stable field ordering;
nothing here depends on time, locale or dict-iteration accidents.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .certificates import (
    Certificate,
    MembershipRecord,
    build_certificate,
    verify_certificate,
)
from .homology import ASSIGNMENTS, UndefinedDet, det_hom, evaluate_rep
from .presentation import (
    ScriptSyntaxError,
    UnknownRule,
    even_power_presentation,
    format_script,
    parse_script,
    torus_presentation,
    verify_script,
)
from .surfaces import (
    FLAVORS,
    CurveClass,
    OutOfScope,
    SurfaceSpec,
    Unrealizable,
    classify,
    scl_upper_bound,
    select_case,
)
from .words import WordSyntaxError, word

_GRAMMAR_HELP = """\
word grammar:   whitespace-separated tokens; token = name or name^-1 with
                name matching [a-z][a-z0-9]*; '( w )^n' expands the group
                w to its n-th power; empty input is the identity word.

script format:  line 1        start: <word>
                per step      step <k>: <RULE>(<params>) <LR|RL> @ <position>
                last line     end: <word>
                '#' begins a comment; step labels count from 1.
"""

_CERT_FLAVORS = {
    "extended": "extended-group",
    "twist": "twist-subgroup",
    "even": "even-power-extended",
    "even-twist": "even-power-twist",
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistcert",
        description="Generate and verify commutator certificates for powers of Dehn twists.",
        epilog=_GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-script", help="replay a proof script file")
    p.add_argument("path", type=Path)
    p.add_argument("--rules", choices=["torus", "torus+h", "even-power"],
                   default="torus+h", help="rule set to resolve steps against")

    p = sub.add_parser("rep-check", help="evaluate a word in an integer homology assignment")
    p.add_argument("--word", required=True)
    p.add_argument("--assignment", choices=sorted(ASSIGNMENTS), default="genus3")

    p = sub.add_parser("det", help="determinant homomorphism and twist-subgroup membership")
    p.add_argument("--word", required=True)
    p.add_argument("--genus", type=int, required=True, help="nonorientable genus")
    p.add_argument("--k", type=int, default=None,
                   help="orientable-complement embedding parameter; genus = 2(k+3)")
    p.add_argument("--r-det", type=int, choices=[1, -1], default=None,
                   help="recorded reflection determinant for other embeddings")

    p = sub.add_parser("classify", help="normalise a curve class and list applicable cases")
    p.add_argument("--surface", required=True, help="o:<g> or n:<g>")
    p.add_argument("--curve", required=True,
                   help="sep:<side>+<side> (side = o<g>|n<g>), nonsep, nonsep:oc, nonsep:nc")

    p = sub.add_parser("certify", help="build a commutator certificate")
    p.add_argument("--surface", required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--flavor", required=True, choices=sorted(_CERT_FLAVORS))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--n-range",
                       help="inclusive range a..b; write --n-range=-3..3 for negative bounds")
    p.add_argument("--r-det", type=int, choices=[1, -1], default=None,
                   help="recorded reflection determinant for the embedding")
    p.add_argument("--max-n", type=int, default=32, help="largest |n| a script is generated for")
    p.add_argument("--emit-script", type=Path, default=None,
                   help="also write the proof script to this path")

    p = sub.add_parser("verify-cert", help="re-verify a certificate file")
    p.add_argument("path", type=Path)

    return parser


def run(argv: list[str]) -> int:
    """Dispatch a command line; returns the exit code instead of raising."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (WordSyntaxError, ScriptSyntaxError, UnknownRule, Unrealizable,
            UndefinedDet, ValueError, OSError) as exc:
        if isinstance(exc, OutOfScope):
            kind = "out of scope (conjectural)" if exc.conjectural else "out of scope"
            print(f"error: {kind}: {exc}", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "verify-script":
        return _cmd_verify_script(args)
    if args.command == "rep-check":
        return _cmd_rep_check(args)
    if args.command == "det":
        return _cmd_det(args)
    if args.command == "classify":
        return _cmd_classify(args)
    if args.command == "certify":
        return _cmd_certify(args)
    if args.command == "verify-cert":
        return _cmd_verify_cert(args)
    raise AssertionError(f"unhandled command {args.command!r}")


def _presentation(name: str):
    if name == "torus":
        return torus_presentation()
    if name == "torus+h":
        return torus_presentation(with_h=True)
    return even_power_presentation()


def _cmd_verify_script(args: argparse.Namespace) -> int:
    script = parse_script(args.path.read_text(), _presentation(args.rules))
    report = verify_script(script)
    print(f"start: {script.start}")
    print(f"steps: {len(script.steps)}")
    if report.ok:
        print(f"ok: end word reached: {report.final}")
    else:
        print(f"FAIL at step {report.failed_step}: {report.message}")
    return 0 if report.ok else 1


def _cmd_rep_check(args: argparse.Namespace) -> int:
    assignment = ASSIGNMENTS[args.assignment]()
    w = word(args.word)
    matrix = evaluate_rep(w, assignment)
    print(f"assignment: {assignment.assignment_id} (dimension {assignment.space.dim})")
    print(matrix)
    print(f"identity: {'yes' if matrix.is_identity() else 'no'}")
    return 0


def _cmd_det(args: argparse.Namespace) -> int:
    surface = SurfaceSpec(orientable=False, genus=args.genus)
    if args.k is not None and args.genus != 2 * (args.k + 3):
        raise Unrealizable(f"k={args.k} belongs to genus {2 * (args.k + 3)}, not {args.genus}")
    value = det_hom(word(args.word), surface, k=args.k, r_det=args.r_det)
    verdict = "in twist subgroup" if value == 1 else "not in twist subgroup"
    print(f"{value:+d} ({verdict})")
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    surface = SurfaceSpec.parse(args.surface)
    curve = classify(surface, CurveClass.parse(args.curve))
    print(f"surface: {surface}")
    print(f"curve: {curve}")
    for flavor in FLAVORS:
        try:
            case = select_case(surface, curve, flavor)
        except OutOfScope as exc:
            tag = " (conjectural)" if exc.conjectural else ""
            print(f"{flavor}: out of scope{tag}: {exc}")
            continue
        extra = ""
        if case.theorem == "R4-even-power":
            extra = f", twist variant {'available' if case.twist_admissible else 'unavailable'}"
        bound = scl_upper_bound(case)
        print(f"{flavor}: {case.case_id} (y = {case.y_choice}{extra}); scl upper bound {bound.value}")
    return 0


def _cmd_certify(args: argparse.Namespace) -> int:
    surface = SurfaceSpec.parse(args.surface)
    curve = CurveClass.parse(args.curve)
    flavor = _CERT_FLAVORS[args.flavor]
    if args.n_range is not None:
        lo_text, _, hi_text = args.n_range.partition("..")
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise Unrealizable(f"cannot parse range {args.n_range!r}; expected a..b") from None
        ns = list(range(lo, hi + 1))
    else:
        ns = [args.n]
    for n in ns:
        if abs(n) > args.max_n:
            raise Unrealizable(f"|n| = {abs(n)} exceeds the script limit {args.max_n}; "
                               "raise --max-n to force generation")
    first = True
    for n in ns:
        cert = build_certificate(surface, curve, n, flavor, args.r_det)
        if not first:
            print()
        print(format_certificate(cert), end="")
        first = False
        if args.emit_script is not None:
            path = args.emit_script if len(ns) == 1 else args.emit_script.with_name(
                f"{args.emit_script.stem}_n{n}{args.emit_script.suffix}")
            path.write_text(format_script(cert.script))
    return 0


def _cmd_verify_cert(args: argparse.Namespace) -> int:
    cert = parse_certificate(args.path.read_text())
    report = verify_certificate(cert)
    print(f"flavor: {cert.flavor}")
    print(f"n: {cert.n}")
    print(f"script steps: {len(cert.script.steps)}")
    print(str(report))
    return 0 if report.ok else 1


# --- certificate text format -------------------------------------------------


def _opt(value) -> str:
    return "-" if value is None else str(value)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def format_certificate(cert: Certificate) -> str:
    """Serialise a certificate as a key: value document with the proof
    script inlined (two-space indented) at the end."""
    member = cert.membership
    lines = [
        "twistcert-certificate: 1",
        f"flavor: {cert.flavor}",
        f"surface: {cert.surface}",
        f"curve: {cert.curve}",
        f"theorem: {cert.case.theorem}",
        f"case: {cert.case.case_id}",
        f"genus-bound: {cert.case.genus_bound_used}",
        f"y-choice: {cert.case.y_choice}",
        f"k: {_opt(cert.case.k)}",
        f"r-det: {_opt(cert.case.r_det if cert.case.r_det is None else f'{cert.case.r_det:+d}')}",
        f"forced-rh: {_yesno(cert.case.forced_rh)}",
        "twist-admissible: " + ("-" if cert.case.twist_admissible is None
                                else _yesno(cert.case.twist_admissible)),
        f"n: {cert.n}",
        f"target: {cert.target}",
        f"x: {cert.x}",
        f"y: {cert.y}",
        f"assignment: {cert.assignment_id}",
        f"homology-check: {'pass' if cert.homology_ok else 'fail'}",
    ]
    if member is None:
        lines += ["membership-x: -", "membership-y: -", "membership-note: -"]
    else:
        lines += [
            f"membership-x: {member.det_x:+d}",
            "membership-y: " + ("conditional" if member.det_y is None else f"{member.det_y:+d}"),
            f"membership-note: {member.note}",
        ]
    lines.append("script:")
    for script_line in format_script(cert.script).splitlines():
        lines.append(f"  {script_line}")
    return "\n".join(lines) + "\n"


class CertificateSyntaxError(ValueError):
    pass


def parse_certificate(text: str) -> Certificate:
    from .surfaces import TheoremCase

    fields: dict[str, str] = {}
    script_lines: list[str] = []
    in_script = False
    for raw in text.splitlines():
        if in_script:
            script_lines.append(raw[2:] if raw.startswith("  ") else raw)
            continue
        line = raw.strip()
        if not line:
            continue
        if line == "script:":
            in_script = True
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise CertificateSyntaxError(f"cannot parse certificate line {line!r}")
        fields[key.strip()] = value.strip()

    if fields.get("twistcert-certificate") != "1":
        raise CertificateSyntaxError("missing or unsupported certificate version")

    class _Fields(dict):
        def __missing__(self, key):
            raise CertificateSyntaxError(f"certificate is missing the {key!r} field")

    fields = _Fields(fields)

    def opt_int(key: str) -> int | None:
        return None if fields[key] == "-" else int(fields[key])

    flavor = fields["flavor"]
    surface = SurfaceSpec.parse(fields["surface"])
    curve = CurveClass.parse(fields["curve"])
    case = TheoremCase(
        theorem=fields["theorem"],
        case_id=fields["case"],
        genus_bound_used=int(fields["genus-bound"]),
        y_choice=fields["y-choice"],
        surface=surface,
        curve=curve,
        k=opt_int("k"),
        r_det=opt_int("r-det"),
        forced_rh=fields["forced-rh"] == "yes",
        twist_admissible=(None if fields["twist-admissible"] == "-"
                          else fields["twist-admissible"] == "yes"),
    )
    presentation = (even_power_presentation() if flavor.startswith("even-power")
                    else torus_presentation(with_h=True))
    script = parse_script("\n".join(script_lines), presentation)
    membership = None
    if fields["membership-x"] != "-":
        det_y = None if fields["membership-y"] == "conditional" else int(fields["membership-y"])
        membership = MembershipRecord(int(fields["membership-x"]), det_y,
                                      fields["membership-y"] == "conditional",
                                      fields["membership-note"])
    return Certificate(
        flavor=flavor,
        n=int(fields["n"]),
        surface=surface,
        curve=curve,
        case=case,
        target=word(fields["target"]),
        x=word(fields["x"]),
        y=word(fields["y"]),
        script=script,
        assignment_id=fields["assignment"],
        homology_ok=fields["homology-check"] == "pass",
        membership=membership,
    )


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
