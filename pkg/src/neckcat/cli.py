"""Command-line front end.

Subcommands wrap single library calls and print either human-readable
text or JSON (``--json``); both modes report identical verdicts.  Output
is canonically sorted and timestamp-free so runs can be compared
verbatim.  Exit codes: 0 on success or a passing verification, 1 on a
verification failure, 2 on usage or parse errors.

Necklace syntax: joint form ``0,2,3``, bead form ``2v1`` (``e`` or ``0``
for the point); map syntax ``src>tgt:0,0,1``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import maps as nm
from .checks import CHECK_NAMES, run_check, run_day_rep
from .day import PresheafError
from .maps import MapError, NecMap, classify, compose, hom_set, parse_map
from .necklace import Necklace, NecklaceError, enumerate_necklaces, parse_necklace
from .reedy import nec_truncation

JSON_EXPORT_MAX_SPINE = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neckcat",
        description="Necklace-category toolkit: enumeration, hom-sets, factorizations, "
        "Reedy and Day-convolution verification sweeps.",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all necklaces up to a spine bound")
    p.add_argument("--max-spine", type=int, default=4)

    p = sub.add_parser("hom", help="list all maps between two necklaces")
    p.add_argument("src")
    p.add_argument("tgt")

    p = sub.add_parser("classify", help="classification flags of a map")
    p.add_argument("map")

    p = sub.add_parser("factor", help="factor a map")
    p.add_argument("map")
    p.add_argument(
        "--mode",
        choices=("epi-mono", "active-inert", "full-chain"),
        default="epi-mono",
    )

    p = sub.add_parser("check", help="run a verification sweep")
    p.add_argument("name", choices=CHECK_NAMES)
    p.add_argument("--max-spine", type=int, default=4)

    p = sub.add_parser("day", help="Day-convolution queries")
    day_sub = p.add_subparsers(dest="day_command", required=True)
    q = day_sub.add_parser("rep", help="compare a convolution of representables with the wedge representable")
    q.add_argument("x1")
    q.add_argument("x2")
    q.add_argument("--max-spine", type=int, default=4)

    p = sub.add_parser("export", help="export a category")
    p.add_argument("what", choices=("nec-cat",))
    p.add_argument("--max-spine", type=int, default=4)
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")

    return parser


def _necklace_payload(n: Necklace) -> dict:
    return {
        "joints": list(n.joints),
        "beads": list(n.beads),
        "spine": n.spine,
        "dim": n.dim,
        "degree": list(n.degree),
    }


def _map_payload(f: NecMap) -> dict:
    payload = f.to_json_dict()
    payload["text"] = str(f)
    return payload


def _emit(text_lines: list[str], payload: dict, as_json: bool, out=None) -> None:
    stream = out or sys.stdout
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True), file=stream)
    else:
        for line in text_lines:
            print(line, file=stream)


def _cmd_enumerate(args) -> int:
    necklaces = enumerate_necklaces(args.max_spine)
    payload = {
        "max_spine": args.max_spine,
        "count": len(necklaces),
        "necklaces": [_necklace_payload(n) for n in necklaces],
    }
    lines = [
        f"{','.join(str(j) for j in n.joints)}\t{n}\tspine={n.spine} beads={n.bead_count} dim={n.dim}"
        for n in necklaces
    ]
    lines.append(f"total: {len(necklaces)}")
    _emit(lines, payload, args.json)
    return 0


def _cmd_hom(args) -> int:
    src = parse_necklace(args.src)
    tgt = parse_necklace(args.tgt)
    maps = hom_set(src, tgt)
    payload = {
        "src": src.to_json_dict(),
        "tgt": tgt.to_json_dict(),
        "count": len(maps),
        "maps": [_map_payload(f) for f in maps],
    }
    lines = [str(f) for f in maps]
    lines.append(f"total: {len(maps)}")
    _emit(lines, payload, args.json)
    return 0


def _cmd_classify(args) -> int:
    f = parse_map(args.map)
    flags = classify(f)
    payload = {
        "map": _map_payload(f),
        "active": flags.active,
        "inert": flags.inert,
        "mono": flags.mono,
        "epi": flags.epi,
        "bead_reducing": flags.bead_reducing,
        "spine_collapsing": flags.spine_collapsing,
    }
    lines = [
        f"{name}: {'yes' if value else 'no'}"
        for name, value in (
            ("active", flags.active),
            ("inert", flags.inert),
            ("mono", flags.mono),
            ("epi", flags.epi),
            ("bead-reducing", flags.bead_reducing),
            ("spine-collapsing", flags.spine_collapsing),
        )
    ]
    _emit(lines, payload, args.json)
    return 0


def _cmd_factor(args) -> int:
    f = parse_map(args.map)
    if args.mode == "epi-mono":
        epi, mono = nm.factor_epi_mono(f)
        parts = [("epi", epi), ("mono", mono)]
    elif args.mode == "active-inert":
        active, inert = nm.factor_active_inert(f)
        parts = [("active", active), ("inert", inert)]
    else:
        epi, mono = nm.factor_epi_mono(f)
        bead_reducing, spine_collapsing = nm.factor_bead_spine(epi)
        parts = [("bead-reducing", bead_reducing), ("spine-collapsing", spine_collapsing), ("mono", mono)]
    composite = parts[0][1]
    for _, part in parts[1:]:
        composite = compose(part, composite)
    assert composite == f, "factor parts must compose back to the input"
    payload = {
        "map": _map_payload(f),
        "mode": args.mode,
        "parts": [{"role": role, **_map_payload(part)} for role, part in parts],
    }
    lines = [f"{role}: {part}" for role, part in parts]
    _emit(lines, payload, args.json)
    return 0


def _cmd_check(args) -> int:
    report = run_check(args.name, args.max_spine)
    payload = report.to_json_dict()
    lines = [f"check {args.name} (max spine {args.max_spine}): {'PASS' if payload['pass'] else 'FAIL'}"]
    if args.name == "monoidal":
        for key, value in payload["hypotheses"].items():
            lines.append(f"  {key}: {'yes' if value else 'no'}")
    for failure in payload["failures"]:
        lines.append(f"  failure: {failure}")
    _emit(lines, payload, args.json)
    return 0 if payload["pass"] else 1


def _cmd_day_rep(args) -> int:
    x1 = parse_necklace(args.x1)
    x2 = parse_necklace(args.x2)
    report = run_day_rep(x1, x2, args.max_spine)
    payload = report.to_json_dict()
    lines = [
        f"day rep {x1} {x2} (window {args.max_spine}): "
        f"{'PASS' if report.passed else 'FAIL'}"
    ]
    for entry in payload["objects"]:
        lines.append(
            f"  {entry['necklace']}: classes={entry['classes']} target={entry['target']} "
            f"bijective={'yes' if entry['bijective'] else 'no'}"
        )
    _emit(lines, payload, args.json)
    return 0 if report.passed else 1


def _cmd_export(args) -> int:
    reedy = nec_truncation(args.max_spine)
    if args.dot:
        text = reedy.cat.to_dot()
    else:
        if args.max_spine > JSON_EXPORT_MAX_SPINE:
            print(
                f"error: JSON export materializes the composition table and is limited to "
                f"--max-spine <= {JSON_EXPORT_MAX_SPINE}; use --dot for larger windows",
                file=sys.stderr,
            )
            return 2
        text = json.dumps(reedy.cat.to_json_dict(), indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "hom":
            return _cmd_hom(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "factor":
            return _cmd_factor(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "day":
            return _cmd_day_rep(args)
        if args.command == "export":
            return _cmd_export(args)
    except (NecklaceError, MapError, PresheafError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
