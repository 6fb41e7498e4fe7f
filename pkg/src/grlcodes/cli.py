"""Command-line front end.

Exit statuses: 0 success, 1 verification mismatch, 2 usage error or
invariant violation, 3 enumeration budget exceeded.  Data goes to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .code import (
    InfeasibleError,
    LinearCode,
    classify,
    code_report,
    is_hermitian_self_orthogonal,
    min_distance_exact,
)
from .families import ConstructionError, FamilyParams, construct, iter_params
from .field import extension_of, make_field
from .grl import (
    GrlSpec,
    build_grl_generator,
    nmds_criterion_s2,
    nmds_criterion_s3,
    so_criterion_s2,
    so_criterion_s3,
)
from .linalg import from_gfmat, to_gfmat
from .quantum import (
    format_report,
    load_known_codes,
    report_to_csv,
    report_to_json,
    table2_report,
)
from .worked_examples import all_examples, check_example

log = logging.getLogger("grlcodes")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# ----------------------------------------------------------------------
# commands


def cmd_field_info(args) -> int:
    F = make_field(args.p, args.m, args.modulus)
    info = F.to_dict()
    info.update(q=F.q, primitive=int(F.primitive))
    if args.elements:
        info["elements"] = [F.format(a) for a in range(F.q)]
    _dump(info)
    return EXIT_OK


def _nmds_criterion(spec: GrlSpec):
    if spec.s == 2:
        return nmds_criterion_s2(spec)
    if spec.s == 3:
        return nmds_criterion_s3(spec)
    return None


def _so_criterion(spec: GrlSpec, ext):
    if spec.s == 2:
        return so_criterion_s2(spec, ext)
    if spec.s == 3:
        return so_criterion_s3(spec, ext)
    return None


def cmd_construct(args) -> int:
    params = FamilyParams(args.family, args.q, args.m, args.k)
    spec, trace = construct(params)
    C = build_grl_generator(spec)
    if args.gfmat:
        sys.stdout.write(to_gfmat(C.gen))
        return EXIT_OK
    hso = is_hermitian_self_orthogonal(C, trace.ext)
    crit = _nmds_criterion(spec)
    if crit is not None and crit.holds:
        cls = classify(C, d=C.n - C.k, d_dual=C.k)
        report = code_report(C, cls, hso)
    else:
        report = {"n": C.n, "k": C.k, "hermitian_self_orthogonal": hso}
    out = {
        "family": params.family, "q": params.q, "m": params.m, "k": params.k,
        "code": report,
        "spec": spec.to_dict(),
        "trace": trace.to_dict(),
    }
    if args.json:
        _dump(out)
    else:
        print(f"family {params.family} q={params.q} m={params.m} k={params.k}: "
              f"[{C.n},{C.k}]_{spec.spec.q} hermitian_so={str(hso).lower()}")
        print(spec.to_json())
        print(json.dumps(trace.to_dict()))
    return EXIT_OK


def _load_spec(path: str) -> GrlSpec:
    with open(path) as fh:
        data = json.load(fh)
    if "spec" in data and isinstance(data["spec"], dict):
        data = data["spec"]
    return GrlSpec.from_dict(data)


def cmd_verify(args) -> int:
    try:
        spec = _load_spec(args.spec).validate()
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: cannot read spec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: invariant violation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    run_all = not (args.nmds or args.hso or args.distance)
    C = build_grl_generator(spec)
    out: dict = {"n": C.n, "k": C.k, "q": spec.spec.q}
    status = EXIT_OK
    crit = None
    if args.nmds or run_all:
        crit = _nmds_criterion(spec)
        out["nmds_criterion"] = None if crit is None else crit.to_dict()
        if args.nmds and not (crit is not None and crit.holds):
            status = EXIT_MISMATCH
    if args.hso or run_all:
        if spec.spec.m % 2:
            out["hermitian_self_orthogonal"] = None
            if args.hso:
                print("error: field is not a quadratic extension", file=sys.stderr)
                return EXIT_USAGE
        else:
            ext = extension_of(spec.spec)
            hso = is_hermitian_self_orthogonal(C, ext)
            so = _so_criterion(spec, ext)
            out["hermitian_self_orthogonal"] = hso
            out["so_criterion"] = None if so is None else so.to_dict()
            if so is not None and so.holds != hso:
                print("mismatch: self-orthogonality criterion disagrees with the gram matrix",
                      file=sys.stderr)
                status = EXIT_MISMATCH
            if args.hso and not hso:
                status = EXIT_MISMATCH
    if args.distance:
        d = min_distance_exact(C, workers=args.threads)
        cls = classify(C, d=d, evidence="exact")
        out["classification"] = cls.to_dict()
        if crit is not None and crit.holds != (cls.label == "NMDS"):
            print("mismatch: NMDS criterion disagrees with enumeration", file=sys.stderr)
            status = EXIT_MISMATCH
    _dump(out)
    return status


def _read_code(path: str) -> LinearCode:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        if "spec" in data and isinstance(data["spec"], dict):
            data = data["spec"]
        return build_grl_generator(GrlSpec.from_dict(data).validate())
    return LinearCode(from_gfmat(text))


def cmd_classify(args) -> int:
    try:
        C = _read_code(args.file)
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: cannot read code: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: invariant violation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    d = min_distance_exact(C, workers=args.threads)
    cls = classify(C, d=d, evidence="exact")
    hso = None
    if C.spec.m % 2 == 0:
        hso = is_hermitian_self_orthogonal(C, extension_of(C.spec))
    _dump(code_report(C, cls, hso))
    return EXIT_OK


def cmd_examples(args) -> int:
    status = EXIT_OK
    for ex in all_examples():
        if args.only and ex.number not in args.only:
            continue
        results = check_example(ex, samples=args.samples)
        ok = all(r.ok for r in results)
        C = ex.code
        hso = is_hermitian_self_orthogonal(C, ex.ext)
        crit = _nmds_criterion(ex.spec)
        nmds = crit is not None and crit.holds
        print(f"{'PASS' if ok else 'FAIL'} example {ex.number} {ex.summary()} "
              f"hermitian_so={str(hso).lower()} nmds={str(nmds).lower()}")
        for r in results:
            if not r.ok:
                print(f"  failed check {r.name}: {r.detail}", file=sys.stderr)
            elif args.verbose:
                print(f"  ok {r.name} {r.detail}")
        if not ok:
            status = EXIT_MISMATCH
    return status


def cmd_table2(args) -> int:
    known = load_known_codes(args.known) if args.known else None
    rows = table2_report(
        args.q,
        known,
        families=args.families,
        cells="all" if args.all else "published",
    )
    if args.format == "csv":
        sys.stdout.write(report_to_csv(rows))
    elif args.format == "json":
        print(report_to_json(rows))
    else:
        print(format_report(rows))
    return EXIT_OK


def _sweep_one(params: FamilyParams, distance: bool) -> tuple[str, bool]:
    try:
        spec, trace = construct(params)
    except ConstructionError as exc:
        return f"FAIL {params} construction: {exc}", False
    C = build_grl_generator(spec)
    ok = C.k == params.k and is_hermitian_self_orthogonal(C, trace.ext)
    notes = [f"[{C.n},{C.k}]_{spec.spec.q}", f"gram0={str(ok).lower()}"]
    if params.family in (1, 2):
        good = nmds_criterion_s2(spec).holds
        ok &= good
        notes.append(f"nmds={str(good).lower()}")
    elif distance:
        try:
            d = min_distance_exact(C)
            good = d >= spec.n - C.k + 2  # spec.n counts evaluation points only
            ok &= good
            notes.append(f"d={d}")
        except InfeasibleError:
            notes.append("d=skipped")
    return f"{'PASS' if ok else 'FAIL'} family {params.family} q={params.q} " \
           f"m={params.m} k={params.k} " + " ".join(notes), ok


_SWEEP_QS = {1: (4, 5, 7, 8, 9), 2: (5, 7, 9), 3: (5, 7, 8, 9), 4: (7, 8, 9)}


def cmd_sweep(args) -> int:
    cells = []
    for fam in args.families:
        for q in (args.q or _SWEEP_QS[fam]):
            try:
                cells.extend(iter_params(fam, q))
            except ValueError as exc:
                log.warning("skipping family %d q=%d: %s", fam, q, exc)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(lambda p: _sweep_one(p, args.distance), cells))
    else:
        results = [_sweep_one(p, args.distance) for p in cells]
    failures = 0
    for line, ok in results:
        print(line)
        failures += not ok
    print(f"{len(results) - failures}/{len(results)} passed", file=sys.stderr)
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grlcodes", description="GRL code toolkit")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("field-info", help="describe GF(p^m)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--modulus", type=_int_list, help="coefficients low to high")
    s.add_argument("--elements", action="store_true", help="list every element")
    s.set_defaults(func=cmd_field_info)

    s = sub.add_parser("construct", help="build a family member")
    s.add_argument("--family", type=int, required=True, choices=(1, 2, 3, 4))
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--gfmat", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="check a GRL spec")
    s.add_argument("--spec", required=True, help="GrlSpec JSON (or construct --json output)")
    s.add_argument("--nmds", action="store_true")
    s.add_argument("--hso", action="store_true")
    s.add_argument("--distance", action="store_true", help="exact distance by enumeration")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("classify", help="classify a code from a GFMAT or JSON file")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("examples", help="replay the six reference instances")
    s.add_argument("--only", type=_int_list)
    s.add_argument("--samples", type=int, default=100_000)
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("table2", help="quantum parameter comparison table")
    s.add_argument("--q", type=_int_list)
    s.add_argument("--known", help="known-codes CSV (n,k,d,d_is_bound,q,source)")
    s.add_argument("--families", type=_int_list, default=[1, 2, 3, 4])
    s.add_argument("--all", action="store_true", help="every in-range cell, not only the published ones")
    s.add_argument("--format", choices=("table", "csv", "json"), default="table")
    s.set_defaults(func=cmd_table2)

    s = sub.add_parser("sweep", help="construct and check every in-range family member")
    s.add_argument("--families", type=_int_list, default=[1, 2, 3, 4])
    s.add_argument("--q", type=_int_list)
    s.add_argument("--distance", action="store_true",
                   help="enumerate distances of families 3-4 where affordable")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "table2" and args.all and not args.q:
        print("error: --all needs --q", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
