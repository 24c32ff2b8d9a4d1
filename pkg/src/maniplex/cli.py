"""Command-line front end: generate, check, certify, and export.

Exit codes: 0 success, 1 semantic failure (axiom or certification), 2
I/O or parse failure.  All file output is byte-deterministic for a fixed
input and version; wall-clock timings go to stderr only.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .certify import FAIL, PASS, Check, all_ok, checks_to_json
from .core import (
    FormatError,
    Maniplex,
    dumps_json,
    faces,
    maniplex_from_json,
    maniplex_to_json,
    to_dot,
    validate,
)
from .corpus import corpus_names, platonic, torus_44
from .cosets import CosetCapExceeded
from .counterexample import (
    BuildError,
    EThetaOverlap,
    ThetaNotFound,
    BStarResult,
    build_B,
    build_B_star,
    build_E_theta,
    find_theta,
)
from .coxeter import schreier_correspondence, verdict as classify
from .extension import extend, verify_extension
from .poset import is_faithful, is_polytopal, pos_of, poset_to_dot, poset_to_json_dict


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_maniplex(path: str) -> tuple[Maniplex, str]:
    data = Path(path).read_bytes()
    return maniplex_from_json(data.decode("utf-8")), _sha256(data)


def _certificate(digest: str, checks: list[Check], **extras: object) -> str:
    doc = {
        "version": __version__,
        "input_digest": digest,
        "ok": all_ok(checks),
        "checks": checks_to_json(checks),
    }
    doc.update(extras)
    return dumps_json(doc)


def _check_detail(checks: list[Check], name: str) -> object:
    for check in checks:
        if check.name == name:
            return check.detail
    return None


def _first_failure(checks: list[Check]) -> Optional[str]:
    for check in checks:
        if check.status == FAIL:
            return check.name
    return None


def cmd_check(args: argparse.Namespace) -> int:
    m, digest = _load_maniplex(args.input)
    report = validate(m)
    doc = {
        "version": __version__,
        "input_digest": digest,
        "ok": report.ok,
        "structural": report.structural,
        "violations": [{"axiom": v.axiom, "witness": v.witness} for v in report.violations],
    }
    _emit(dumps_json(doc), args.output)
    return 0 if report.ok else 1


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "torus":
        m = torus_44(args.b, args.c)
    else:
        m = platonic(args.name)
    _emit(maniplex_to_json(m), args.output)
    return 0


def cmd_build_b(args: argparse.Namespace) -> int:
    b = build_B()
    _emit(maniplex_to_json(b), args.output)
    return 0


def _voltage_doc(digest: str, theta_flags, edges) -> str:
    return dumps_json(
        {
            "version": __version__,
            "input_digest": digest,
            "theta": list(theta_flags),
            "edges": [list(e) for e in sorted(edges)],
        }
    )


def cmd_find_theta(args: argparse.Namespace) -> int:
    m, digest = _load_maniplex(args.input)
    report = validate(m)
    if not report.ok:
        print("error: input is not a valid maniplex", file=sys.stderr)
        return 1
    theta = find_theta(m)
    marked = build_E_theta(m, theta)
    _emit(_voltage_doc(digest, theta.flags, marked.edges), args.output)
    return 0


def _bstar_certificate(result: BStarResult, digest: str) -> str:
    faith = is_faithful(result.bstar)
    v = classify(result.bstar)
    return _certificate(
        digest,
        result.checks,
        flags=result.bstar.flag_count,
        faithful=faith.faithful,
        polytopal=is_polytopal(result.bstar),
        witness=list(result.witness) if result.witness is not None else None,
        poset_iso=any(
            c.name == "poset-projects-isomorphically" and c.status == PASS
            for c in result.checks
        ),
        verdict={"sparse": v.sparse, "semisparse": v.semisparse},
    )


def cmd_build_bstar(args: argparse.Namespace) -> int:
    out = _outdir(args.output)
    result = build_B_star()
    b_text = maniplex_to_json(result.b)
    (out / "b.json").write_text(b_text, encoding="utf-8")
    (out / "voltage-theta.json").write_text(
        _voltage_doc(_sha256(b_text.encode("utf-8")), result.theta.flags, result.e_theta.edges),
        encoding="utf-8",
    )
    bstar_text = maniplex_to_json(result.bstar)
    (out / "bstar.json").write_text(bstar_text, encoding="utf-8")
    cert = _bstar_certificate(result, _sha256(bstar_text.encode("utf-8")))
    (out / "certificate.json").write_text(cert, encoding="utf-8")
    if not result.ok:
        print(f"error: certification failed at {_first_failure(result.checks)}", file=sys.stderr)
        return 1
    return 0


def cmd_counterexample(args: argparse.Namespace) -> int:
    if args.rank < 4:
        raise ValueError(f"rank must be at least 4, got {args.rank}")
    out = _outdir(args.output)
    result = build_B_star()
    bstar_text = maniplex_to_json(result.bstar)
    (out / "maniplex-rank4.json").write_text(bstar_text, encoding="utf-8")
    cert = _bstar_certificate(result, _sha256(bstar_text.encode("utf-8")))
    (out / "certificate-rank4.json").write_text(cert, encoding="utf-8")
    if not result.ok:
        print(f"error: certification failed at {_first_failure(result.checks)}", file=sys.stderr)
        return 1
    m = result.bstar
    for rank in range(5, args.rank + 1):
        facet = faces(m, m.rank - 1)[0]
        res = verify_extension(m, facet, check_connectivity=rank <= 5 or args.full)
        text = maniplex_to_json(res.extension)
        (out / f"maniplex-rank{rank}.json").write_text(text, encoding="utf-8")
        cert = _certificate(
            _sha256(text.encode("utf-8")),
            res.checks,
            rank=rank,
            flags=res.extension.flag_count,
            faithful=_check_detail(res.checks, "extension-faithful-observed"),
        )
        (out / f"certificate-rank{rank}.json").write_text(cert, encoding="utf-8")
        if not res.ok:
            print(
                f"error: certification failed at rank {rank}: {_first_failure(res.checks)}",
                file=sys.stderr,
            )
            return 1
        m = res.extension
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    m, _ = _load_maniplex(args.input)
    if args.format == "dot":
        text = to_dot(m)
    elif args.format == "hasse-dot":
        text = poset_to_dot(pos_of(m), include_extremes=not args.no_extremes)
    else:
        text = dumps_json(poset_to_json_dict(pos_of(m)))
    _emit(text, args.output)
    return 0


def cmd_extend(args: argparse.Namespace) -> int:
    m, digest = _load_maniplex(args.input)
    report = validate(m)
    if not report.ok:
        print("error: input is not a valid maniplex", file=sys.stderr)
        return 1
    facet_list = faces(m, m.rank - 1)
    if not 0 <= args.facet < len(facet_list):
        raise ValueError(f"facet index {args.facet} out of range (0..{len(facet_list) - 1})")
    facet = facet_list[args.facet]
    if not args.verify:
        _emit(maniplex_to_json(extend(m, facet)), args.output)
        return 0
    out = _outdir(args.output) if args.output else None
    res = verify_extension(m, facet)
    text = maniplex_to_json(res.extension)
    cert = _certificate(
        digest,
        res.checks,
        rank=res.extension.rank,
        flags=res.extension.flag_count,
        facet=args.facet,
    )
    if out is None:
        sys.stdout.write(cert)
    else:
        (out / "extension.json").write_text(text, encoding="utf-8")
        (out / "certificate.json").write_text(cert, encoding="utf-8")
    if not res.ok:
        print(f"error: certification failed at {_first_failure(res.checks)}", file=sys.stderr)
        return 1
    return 0


def cmd_verdict(args: argparse.Namespace) -> int:
    m, digest = _load_maniplex(args.input)
    report = validate(m)
    if not report.ok:
        print("error: input is not a valid maniplex", file=sys.stderr)
        return 1
    if not 0 <= args.base < m.flag_count:
        raise ValueError(f"base flag {args.base} out of range (0..{m.flag_count - 1})")
    v = classify(m, args.base)
    schreier = schreier_correspondence(m, args.base)
    doc = {
        "version": __version__,
        "input_digest": digest,
        "base": args.base,
        "sparse": v.sparse,
        "semisparse": v.semisparse,
        "summary": v.summary,
        "witness": v.witness,
        "schreier_ok": schreier.ok,
    }
    _emit(dumps_json(doc), args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maniplex",
        description="Flag graphs, face posets, voltage covers, and extension pipelines.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p: argparse.ArgumentParser, needs_input: bool = True, out_help: str = "output file (default: stdout)") -> None:
        if needs_input:
            p.add_argument("--input", "-i", required=True, help="maniplex JSON file")
        p.add_argument("--output", "-o", default=None, help=out_help)

    p = sub.add_parser("check", help="validate a maniplex file against the axioms")
    add_io(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a corpus maniplex")
    gen_sub = p.add_subparsers(dest="family", required=True)
    pt = gen_sub.add_parser("torus", help="torus map {4,4} with translation vector (b, c)")
    pt.add_argument("--b", type=int, required=True)
    pt.add_argument("--c", type=int, required=True)
    pt.add_argument("--output", "-o", default=None)
    pt.set_defaults(func=cmd_gen)
    pp = gen_sub.add_parser("platonic", help="named small map")
    pp.add_argument("--name", required=True, choices=corpus_names())
    pp.add_argument("--output", "-o", default=None)
    pp.set_defaults(func=cmd_gen)

    p = sub.add_parser("build-b", help="build the certified 96-flag rank-4 base maniplex")
    add_io(p, needs_input=False)
    p.set_defaults(func=cmd_build_b)

    p = sub.add_parser("find-theta", help="find the marked flag set and its voltage edges")
    add_io(p)
    p.set_defaults(func=cmd_find_theta)

    p = sub.add_parser("build-bstar", help="run the full double-cover pipeline into a directory")
    p.add_argument("--output", "-o", required=True, help="output directory")
    p.set_defaults(func=cmd_build_bstar)

    p = sub.add_parser("counterexample", help="build the rank-n example by iterated extension")
    p.add_argument("--rank", type=int, required=True, help="target rank (>= 4)")
    p.add_argument("--output", "-o", required=True, help="output directory")
    p.add_argument("--full", action="store_true", help="force connectivity checks above rank 5")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("export", help="render a maniplex or its face poset")
    p.add_argument("--format", required=True, choices=("dot", "hasse-dot", "json"))
    p.add_argument("--no-extremes", action="store_true", help="omit least and greatest faces")
    add_io(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("extend", help="extend a maniplex over one of its facets")
    add_io(p, out_help="output file, or directory with --verify")
    p.add_argument("--facet", type=int, default=0, help="index into the sorted facet list")
    p.add_argument("--verify", action="store_true", help="also emit a certificate")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("verdict", help="classify a maniplex as sparse / semisparse")
    add_io(p)
    p.add_argument("--base", type=int, default=0, help="base flag for the coset picture")
    p.set_defaults(func=cmd_verdict)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rc = args.func(args)
    except (BuildError, ThetaNotFound, EThetaOverlap, CosetCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        elapsed = time.perf_counter() - start
        print(f"[time] {args.command}: {elapsed:.3f}s", file=sys.stderr)
    return rc


if __name__ == "__main__":
    sys.exit(main())
