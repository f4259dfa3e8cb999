"""Command line interface: ``mam <command> <config file> [options]``.

Exit codes: 0 success, 1 numerical failure, 2 usage, 3 invalid input
(parse errors, weak hyperbolicity violated, ...), 4 resource cap exceeded.
"""
import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .classify import COMPLEX, REAL, classify_Z, classify_Z_plus, classify_Z_s, open_book_report
from .config import check_condition_K, check_weak_hyperbolicity, derive, parse_configuration
from .contact import contact_suite
from .cyclic import cyclic_partition, rotate_to_index
from .errors import MamError, ParseError, TooLarge, ValidationError, Unsupported
from .expressions import expression_json
from .fixtures import emit_fixture_suite
from .homology import DEFAULT_CAP, brute_force_homology, homology_Z
from .polytope import build_face_lattice, verify_simple

SCHEMA = 1
EXIT_OK, EXIT_NUMERIC, EXIT_USAGE, EXIT_INVALID, EXIT_TOO_LARGE = 0, 1, 2, 3, 4


def _lattice(cfg):
    lat = build_face_lattice(cfg)
    if lat.empty_manifold:
        raise ValidationError("the origin is outside the hull: Z is empty")
    return lat


def _flavor(args):
    return COMPLEX if args.complex else REAL


def cmd_check(cfg, args):
    wh = check_weak_hyperbolicity(cfg)
    result = {"weak_hyperbolicity": wh.as_json(),
              "condition_K": check_condition_K(cfg).as_json()}
    if wh.ok:
        result["empty_manifold"] = build_face_lattice(cfg).empty_manifold
    lines = [f"weakly hyperbolic: {'yes' if wh.ok else 'no'}"
             + ("" if wh.ok else f" (witness {set(wh.witness)})")]
    if wh.ok:
        lines.append(f"empty manifold: {'yes' if result['empty_manifold'] else 'no'}")
    lines.append(f"condition K basis: {[list(b) for b in check_condition_K(cfg).basis]}")
    return result, lines, (EXIT_OK if wh.ok else EXIT_INVALID)


def cmd_lattice(cfg, args):
    lat = build_face_lattice(cfg)
    result = lat.as_json()
    lines = [f"empty manifold: {'yes' if lat.empty_manifold else 'no'}"]
    if not lat.empty_manifold:
        result["simple"] = verify_simple(lat)
        result["euler_characteristic"] = lat.euler_characteristic()
        by_dim = {}
        for d in lat.dims.values():
            by_dim[d] = by_dim.get(d, 0) + 1
        lines.append(f"dim P = {lat.dim_P}; faces by dimension: "
                     + ", ".join(f"{d}:{by_dim[d]}" for d in sorted(by_dim)))
        lines.append(f"simple: {result['simple']}")
    return result, lines, EXIT_OK


def cmd_homology(cfg, args):
    if args.complex:
        cfg = derive(cfg, "complexify")
    lat = _lattice(cfg)
    h = homology_Z(lat, exclude=args.index)
    result = {"homology": h.as_json(), "exclude": args.index}
    lines = [f"H_*: {h}", f"ranks: {list(h.ranks)}"]
    if args.oracle:
        o = brute_force_homology(lat, exclude=args.index, cap=args.cap)
        result["oracle"] = o.as_json()
        result["agree"] = o == h
        lines.append(f"formula == oracle: {str(o == h).lower()}")
    return result, lines, EXIT_OK


def cmd_partition(cfg, args):
    part = cyclic_partition(cfg)
    if args.index is not None:
        part = rotate_to_index(part, args.index)
    result = part.as_json()
    lines = [f"sizes {list(part.sizes)}, l = {part.ell}, d = {list(part.d)}"]
    return result, lines, EXIT_OK


def cmd_classify(cfg, args):
    part = cyclic_partition(cfg)
    flavor = _flavor(args)
    expr, status = classify_Z(part, flavor)
    result = {"flavor": flavor, "expression": str(expr),
              "structure": expression_json(expr), "status": status.as_json()}
    lines = [f"Z ({flavor}): {expr}  [{status.verdict}]"]
    if args.index is not None:
        plus, pstatus = classify_Z_plus(rotate_to_index(part, args.index), flavor)
        result["half"] = {"index": args.index, "expression": str(plus),
                          "structure": expression_json(plus),
                          "status": pstatus.as_json()}
        lines.append(f"Z_+ at x{args.index}: {plus}  [{pstatus.verdict}]")
    if args.s is not None:
        zs = classify_Z_s(part, args.s)
        result["Z_s"] = {"s": args.s, "expression": str(zs)}
        lines.append(f"Z_(n,s) with s = {args.s}: {zs}")
    return result, lines, EXIT_OK


def cmd_openbook(cfg, args):
    i = args.index if args.index is not None else 1
    report = open_book_report(cfg, i, _flavor(args))
    result = report.as_json()
    result["index"] = i
    lines = [f"total:     {report.total}", f"binding:   {report.binding}",
             f"page:      {report.page}", f"monodromy: {report.monodromy}",
             f"status:    {report.status.verdict} ({report.status.notes})"]
    lines += [f"note: {note}" for note in report.notes]
    return result, lines, EXIT_OK


def cmd_contact(cfg, args):
    s = args.s if args.s is not None else 1
    suite = contact_suite(cfg, s, samples=args.samples, seed=args.seed,
                          tol=args.tol)
    result = {"summary": suite["summary"],
              "generic": [x.as_json() for x in suite["generic"]],
              "on_W": [x.as_json() for x in suite["on_W"]],
              "escapes": [p.as_json() for p in suite["escapes"]]}
    sm = suite["summary"]
    lines = [f"s = {s}, samples = {args.samples}, seed = {args.seed}",
             f"value off W in [{sm['min_value_off_W']:.6g}, {sm['max_value_off_W']:.6g}]",
             f"max |value| on W: {sm['max_abs_value_on_W']:.3g} (scale {sm['scale']:.6g})",
             f"kernel dims: {sm['kernel_dims']}",
             f"escapes: {sm['escapes_ok']}/{sm['escapes']} within "
             f"{sm['max_escape_steps']} steps, Legendrian defect "
             f"{sm['max_legendrian_defect']:.3g}"]
    ok = (sm["min_value_off_W"] > 0 and sm["escapes_ok"] == sm["escapes"]
          and set(sm["kernel_dims"]) <= {"generic:1,0", "W:3,2"})
    return result, lines, EXIT_OK if ok else EXIT_NUMERIC


COMMANDS = {"check": cmd_check, "lattice": cmd_lattice, "homology": cmd_homology,
            "partition": cmd_partition, "classify": cmd_classify,
            "openbook": cmd_openbook, "contact": cmd_contact}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mam", description="Moment-angle manifold calculator")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("config", help="configuration file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--complex", action="store_true",
                       help="complex manifold instead of the real one")
        p.add_argument("--index", type=int, help="distinguished coordinate (1-based)")
        p.add_argument("--oracle", action="store_true",
                       help="also run the brute-force homology oracle")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                       help="simplex cap for the oracle")
        p.add_argument("--s", type=int, help="number of extra w variables")
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-8)
    p = sub.add_parser("fixtures", help="write the fixture corpus")
    p.add_argument("directory")
    p.add_argument("--json", action="store_true")
    return parser


def _emit(args, payload, lines, out):
    if args.json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    echo = ["mam"] + list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    if args.command == "fixtures":
        paths = emit_fixture_suite(args.directory)
        payload = {"schema": SCHEMA, "command": echo,
                   "result": {"files": [p.name for p in paths]}}
        _emit(args, payload, [str(p) for p in paths], out)
        return EXIT_OK

    report = {"schema": SCHEMA, "command": echo, "warnings": []}
    try:
        with open(args.config, "rb") as fh:
            raw = fh.read()
        report["input_sha256"] = hashlib.sha256(raw).hexdigest()
        cfg = parse_configuration(raw.decode("utf-8"))
        result, lines, code = COMMANDS[args.command](cfg, args)
    except OSError as err:
        print(f"mam: {err}", file=sys.stderr)
        return EXIT_USAGE
    except MamError as err:
        if isinstance(err, TooLarge):
            code = EXIT_TOO_LARGE
        elif isinstance(err, (ValidationError, ParseError, Unsupported)):
            code = EXIT_INVALID
        else:
            code = EXIT_NUMERIC
        report["error"] = {"code": err.code, "message": str(err)}
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
        _emit(args, report, [f"error ({err.code}): {err}"], out)
        return code
    except (IndexError, ValueError) as err:
        report["error"] = {"code": "invalid", "message": str(err)}
        _emit(args, report, [f"error: {err}"], out)
        return EXIT_INVALID
    report["result"] = result
    report["exit_code"] = code
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    _emit(args, report, lines, out)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
