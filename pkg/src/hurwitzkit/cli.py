"""Command-line front end.

Standard output carries the machine-readable result (presentation text,
verdict lines, or a single JSON document with --json) and is
byte-for-byte deterministic; progress and timing go to standard error.

Exit codes: 0 success, 1 usage or parse error, 2 validation or
verification failure, 3 violated internal invariant.
"""

import argparse
import hashlib
import json
import sys
import time

from .abelian import abelianization, is_irreducible_c
from .baumslag import CLAIM_GROUPS, all_reports
from .errors import HurwitzKitError, InternalInvariantError, ParseError, ValidationError
from .kernels import derive_kernel
from .presentations import (
    c_graph,
    is_tree,
    parse_presentation,
    presentation_to_text,
    validate_c,
    validate_hurwitz,
)
from .projective import derive_projective_kernel, projective_quotient, simplify
from .words import word_to_text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _read_input(path):
    with open(path, "rb") as handle:
        data = handle.read()
    digest = hashlib.sha256(data).hexdigest()
    return data.decode("utf-8"), {"path": path, "sha256": digest}


def _emit_json(doc):
    print(json.dumps(doc, indent=2))


def _load_hurwitz(path, degree=None):
    text, source = _read_input(path)
    pres = parse_presentation(text)
    cp = validate_c(pres)
    hp = validate_hurwitz(cp, len(pres.generators) if degree is None else degree)
    return hp, source


def cmd_validate(args):
    text, source = _read_input(args.file)
    pres = parse_presentation(text)
    cp = validate_c(pres)
    doc = {"command": "validate", "input": source}
    doc.update(cp.to_json_dict())
    lines = [f"valid C-presentation: {len(cp.generators)} generators, "
             f"{len(cp.crelations)} C-relations"]
    if args.degree is not None:
        hp = validate_hurwitz(cp, args.degree)
        doc["degree"] = hp.degree
        lines.append(f"valid Hurwitz presentation of degree {hp.degree}")
    doc["valid"] = True
    doc["warnings"] = []
    if args.json:
        _emit_json(doc)
    else:
        print("\n".join(lines))
    return 0


def cmd_abelianize(args):
    text, source = _read_input(args.file)
    pres = parse_presentation(text)
    ab = abelianization(pres)
    irreducible = None
    try:
        irreducible = is_irreducible_c(validate_c(pres))
    except ValidationError:
        pass
    doc = {
        "command": "abelianize",
        "input": source,
        "abelianization": {
            "free_rank": ab.free_rank,
            "torsion": list(ab.torsion),
            "description": str(ab),
        },
        "irreducible_c": irreducible,
        "warnings": [],
    }
    if args.json:
        _emit_json(doc)
    elif irreducible:
        print(f"{ab} (irreducible C-group)")
    else:
        print(str(ab))
    return 0


def cmd_kernel(args):
    hp, source = _load_hurwitz(args.file)
    doc = {"command": "kernel", "input": source, "warnings": []}
    if args.projective is not None:
        pp = projective_quotient(hp, args.projective)
        fk = derive_projective_kernel(pp)
        pres = fk.presentation()
        doc["mode"] = "projective"
        doc["power"] = pp.power
        doc["modulus"] = pp.modulus
        doc["expansion"] = {g: word_to_text(w) for g, w in fk.expansion.items()}
        doc["provenance"] = [list(p) for p in fk.provenance]
        doc["coset_table"] = [list(row) for row in fk.coset_table]
    else:
        kp = derive_kernel(hp)
        pres = kp.presentation()
        doc["mode"] = "affine"
        doc["degree"] = kp.degree
        doc["expansion"] = {g: word_to_text(w) for g, w in kp.expansion.items()}
        doc["provenance"] = [list(p) for p in kp.provenance]
        if kp.normalized is not None:
            doc["normalized"] = kp.normalized.presentation.to_json_dict()
            doc["normalized"]["central"] = kp.normalized.central
            doc["normalized"]["weights"] = dict(kp.normalized.weights)
        if kp.notice:
            doc["warnings"].append(kp.notice)
    doc["simplified"] = bool(args.simplify)
    if args.simplify:
        pres = simplify(pres)
    doc["kernel"] = pres.to_json_dict()
    if args.json:
        _emit_json(doc)
    else:
        print(presentation_to_text(pres))
    return 0


def cmd_graph(args):
    text, source = _read_input(args.file)
    cp = validate_c(parse_presentation(text))
    graph = c_graph(cp)
    tree = is_tree(graph)
    doc = {
        "command": "graph",
        "input": source,
        "vertices": list(cp.generators),
        "edges": [[cp.generators[c.i], cp.generators[c.j]] for c in cp.crelations],
        "tree": tree,
        "warnings": [],
    }
    if args.json:
        _emit_json(doc)
    else:
        print(f"tree: {'yes' if tree else 'no'}")
    return 0


def cmd_simplify(args):
    text, source = _read_input(args.file)
    pres = parse_presentation(text)
    reduced = simplify(pres)
    doc = {
        "command": "simplify",
        "input": source,
        "presentation": reduced.to_json_dict(),
        "removed_generators": [g for g in pres.generators
                               if g not in reduced.generators],
        "warnings": [],
    }
    if args.json:
        _emit_json(doc)
    else:
        print(presentation_to_text(reduced))
    return 0


def cmd_verify(args):
    groups = "all" if args.claims == "all" else [args.claims]
    reports = all_reports(groups)
    ok = all(report.ok for report in reports)
    if args.json:
        doc = {
            "command": "verify",
            "claims": [
                {"group": report.name, "label": line.label,
                 "ok": line.ok, "detail": line.detail}
                for report in reports for line in report.lines
            ],
            "notes": [f"[{report.name}] {note}"
                      for report in reports for note in report.notes],
            "ok": ok,
            "warnings": [],
        }
        _emit_json(doc)
    else:
        for report in reports:
            print(report.render())
    return 0 if ok else 2


def build_parser():
    parser = _Parser(prog="hurwitzkit",
                     description="presentations of Hurwitz C-groups and the "
                                 "kernels of their degree maps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check C- and Hurwitz-presentation shape")
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=None,
                   help="also require the first DEGREE generators to have "
                        "central product")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("abelianize", help="abelianization and irreducibility")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("kernel", help="derive a presentation of the degree kernel")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--affine", action="store_true",
                       help="kernel of the map onto the integers (default)")
    group.add_argument("--projective", type=int, metavar="K",
                       help="kernel in the quotient by the K-th power of the "
                            "central element")
    p.add_argument("--simplify", action="store_true",
                   help="eliminate pinned generators from the output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("graph", help="conjugation graph and tree check")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("simplify", help="eliminate pinned generators")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("verify", help="re-derive the worked-example claims")
    p.add_argument("--claims", choices=["all"] + sorted(CLAIM_GROUPS),
                   default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, ValueError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return 2
    except HurwitzKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - started
    print(f"{args.command}: done in {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
