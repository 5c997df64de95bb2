"""Command-line front end.

Every subcommand prints a single machine-readable JSON document to
standard output; ``--pretty`` switches to indented rendering.  Identical
arguments and seeds produce byte-identical output, which is why per-suite
wall times go to standard error instead.

Exit codes: 0 on success, 1 when a verification check fails or a
computation cannot be completed, 2 on usage errors.
"""

import argparse
import json
import sys

from . import complexes as cx
from . import linalg as la
from . import polyvect as pv
from . import suites
from . import weights as wt
from .graphs import (BI_ORD, ONE, GraphVector, canonicalize,
                     enumerate_classes, key_str, parse_key, parse_term_json,
                     vector_json)

_COLOURS = (ONE, BI_ORD, "bi-sym")


# ----------------------------------------------------------------- #
#  input parsing
# ----------------------------------------------------------------- #


def parse_graph_vector(text):
    """A graph vector from a canonical text key or the JSON term format.

    A bare key contributes coefficient one; JSON input is either a single
    term object or a list of them.
    """
    text = text.strip()
    if not text.startswith(("{", "[")):
        term = parse_key(text)
        vec = GraphVector(term[0])
        res = canonicalize(term)
        if res is not None:
            vec.add_term(res[0], res[1])
        return vec
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    vec = None
    for entry in data:
        term, coeff = parse_term_json(entry)
        if vec is None:
            vec = GraphVector(term[0])
        res = canonicalize(term)
        if res is not None:
            vec.add_term(res[0], coeff * res[1])
    if vec is None:
        raise ValueError("empty graph vector")
    return vec


def _single_term(text):
    """A raw graph term (not canonicalized) for the weight estimator."""
    text = text.strip()
    if text.startswith("{"):
        term, _ = parse_term_json(json.loads(text))
        return term
    return parse_key(text)


def read_config(path):
    """key = value lines; blank lines and # comments ignored."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError("malformed config line: %r" % line)
            key, val = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


_INT_OPTS = ("max_vertices", "max_edges", "samples", "seed", "hbar_order",
             "truncation", "degree", "dim")


def _merge_config(args):
    if not getattr(args, "config", None):
        return
    conf = read_config(args.config)
    for key, raw in conf.items():
        if not hasattr(args, key) or getattr(args, key) is not None:
            continue
        if key in _INT_OPTS:
            setattr(args, key, int(raw))
        elif key == "pretty":
            setattr(args, key, raw.lower() in ("1", "true", "yes"))
        else:
            setattr(args, key, raw)


# ----------------------------------------------------------------- #
#  output
# ----------------------------------------------------------------- #


def _emit(obj, pretty):
    if pretty:
        text = json.dumps(obj, sort_keys=True, indent=2)
    else:
        text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    sys.stdout.write(text + "\n")


# ----------------------------------------------------------------- #
#  subcommands
# ----------------------------------------------------------------- #


def _cmd_enumerate(args):
    colour = args.colour
    if colour == ONE:
        blacks = args.vertices if args.vertices is not None else args.blacks
        if blacks is None:
            raise ValueError("one-colour enumeration needs --vertices")
        whites = 0
    else:
        if args.whites is None or args.blacks is None:
            raise ValueError("two-coloured enumeration needs --whites and --blacks")
        whites, blacks = args.whites, args.blacks
    if args.edges is None:
        raise ValueError("enumeration needs --edges")
    flags = {}
    if args.gc2:
        flags = {"connected": True, "trivalent_black": True}
    if args.connected:
        flags["connected"] = True
    if args.trivalent_black:
        flags["trivalent_black"] = True
    if args.no_solely_black:
        flags["no_solely_black"] = True
    keys = enumerate_classes(colour, whites, blacks, args.edges, **flags)
    _emit({"colour": colour, "whites": whites, "blacks": blacks,
           "edges": args.edges, "flags": sorted(flags),
           "count": len(keys), "classes": [key_str(k) for k in keys]},
          args.pretty)
    return 0


def _cmd_delta(args):
    vec = parse_graph_vector(args.graph)
    out = cx.complex_differential(args.complex, vec)
    _emit({"complex": args.complex, "input": vector_json(vec),
           "output": vector_json(out)}, args.pretty)
    return 0


def _cmd_bracket(args):
    left = parse_graph_vector(args.left)
    right = parse_graph_vector(args.right)
    colour = cx.COMPLEXES[args.complex][0]
    if colour == ONE:
        out = cx.bracket_gc(left, right).vector
    elif colour == BI_ORD:
        out = cx.bracket_def(left, right).vector
    else:
        raise ValueError("cone brackets need paired input; "
                         "use the library interface")
    _emit({"complex": args.complex, "output": vector_json(out)}, args.pretty)
    return 0


def _cmd_cohomology(args):
    if args.degree is None:
        raise ValueError("cohomology needs --degree")
    cap = args.max_vertices
    if cap is None:
        raise ValueError("cohomology needs --max-vertices")
    dim = la.cohomology_dim(args.complex, args.degree, cap)
    _emit({"complex": args.complex, "degree": args.degree,
           "max_vertices": cap, "dimension": dim}, args.pretty)
    return 0


def _suite_opts(args):
    return {"max_vertices": args.max_vertices, "max_edges": args.max_edges,
            "samples": args.samples, "seed": args.seed,
            "hbar_order": args.hbar_order}


def _cmd_verify(args):
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    unknown = [n for n in names if n not in suites.SUITES]
    if unknown:
        raise ValueError("unknown suite %r (known: %s)"
                         % (unknown[0], ", ".join(suites.SUITES)))
    opts = _suite_opts(args)
    reports = []
    for name in names:
        rep = suites.run_suite(name, opts)
        sys.stderr.write("# %s: %.2fs\n" % (name, rep.elapsed))
        reports.append(rep)
    if len(reports) == 1:
        _emit(reports[0].to_json(), args.pretty)
    else:
        _emit({"suites": [r.to_json() for r in reports],
               "passed": all(r.passed for r in reports)}, args.pretty)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_weight(args):
    term = _single_term(args.graph)
    mc = wt.McSpec(samples=args.samples if args.samples is not None else 100000,
                   seed=args.seed if args.seed is not None else 0)
    gauge = wt.GaugeSpec(white_order=args.order, pin=args.pin)
    est = wt.weight(term, mc, gauge)
    out = est.to_json()
    out["seed"] = mc.seed
    _emit(out, args.pretty)
    return 0


def _cmd_represent(args):
    term = _single_term(args.graph)
    if args.dim is None:
        raise ValueError("representation needs --dim")
    white = [pv.parse_polyvector(a, args.dim) for a in args.arg or []]
    black = None
    if args.black_arg:
        blacks = [pv.parse_polyvector(a, args.dim) for a in args.black_arg]
        black = blacks[0] if len(blacks) == 1 else blacks
    result = pv.phi(term, white, black)
    _emit({"graph": key_str(term), "dim": args.dim,
           "result": repr(result)}, args.pretty)
    return 0


_GAUGE_ELEMENTS = ("cone-k4", "s-k4", "shat-k4")


def _cmd_gauge(args):
    from .graphs import k4

    trunc = args.truncation if args.truncation is not None else 6
    if args.h == "cone-k4":
        h = cx.MacElement(None, GraphVector.single(k4()))
    elif args.h == "s-k4":
        h = cx.splitting_s(k4())
    elif args.h == "shat-k4":
        h = cx.splitting_s_hat(k4())
    else:
        h = cx.MacElement(parse_graph_vector(args.h), None)
    g = cx.gauge_transform(cx.mc_gamma0(), h, trunc)
    res = cx.mc_residual(g, truncation=trunc)
    _emit({"h": args.h, "truncation": trunc,
           "result": {"two_coloured": vector_json(g.def_part),
                      "one_colour": vector_json(g.gc_part)},
           "residual_zero": res.is_zero()}, args.pretty)
    return 0


def _cmd_project(args):
    vec = parse_graph_vector(args.graph)
    rep, inside = cx.quotient_project(vec, args.ideal)
    _emit({"ideal": args.ideal, "input": vector_json(vec),
           "representative": vector_json(rep.vector),
           "in_ideal": inside}, args.pretty)
    return 0


# ----------------------------------------------------------------- #
#  argument plumbing
# ----------------------------------------------------------------- #


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-vertices", type=int, default=None)
    common.add_argument("--max-edges", type=int, default=None)
    common.add_argument("--hbar-order", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--pretty", action="store_true", default=None)
    common.add_argument("--config", default=None,
                        help="key=value file for caps and seeds; flags win")

    top = argparse.ArgumentParser(
        prog="gcwb",
        description="Graph-complex workbench: enumeration, differentials, "
                    "verification suites, weights, and representations.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common],
                       help="count and list canonical classes")
    p.add_argument("--colour", choices=_COLOURS, default=ONE)
    p.add_argument("--vertices", type=int, default=None)
    p.add_argument("--whites", type=int, default=None)
    p.add_argument("--blacks", type=int, default=None)
    p.add_argument("--edges", type=int, default=None)
    p.add_argument("--gc2", action="store_true",
                   help="connected with all vertices at least trivalent")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--trivalent-black", action="store_true")
    p.add_argument("--no-solely-black", action="store_true")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("delta", parents=[common],
                       help="differential of a vector in a named complex")
    p.add_argument("--complex", required=True, choices=sorted(cx.COMPLEXES))
    p.add_argument("--graph", required=True)
    p.set_defaults(fn=_cmd_delta)

    p = sub.add_parser("bracket", parents=[common],
                       help="Lie bracket of two vectors")
    p.add_argument("--complex", required=True, choices=sorted(cx.COMPLEXES))
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(fn=_cmd_bracket)

    p = sub.add_parser("cohomology", parents=[common],
                       help="capped cohomology dimension at one degree")
    p.add_argument("--complex", required=True, choices=sorted(cx.COMPLEXES))
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(fn=_cmd_cohomology)

    p = sub.add_parser("verify", parents=[common],
                       help="run a named verification suite, or all of them")
    p.add_argument("suite", help="suite name or 'all': "
                   + ", ".join(suites.SUITES))
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("weight", parents=[common],
                       help="Monte Carlo configuration-space weight")
    p.add_argument("--graph", required=True)
    p.add_argument("--order", choices=("ascending", "descending"),
                   default="ascending")
    p.add_argument("--pin", choices=("auto", "white2", "first-black"),
                   default="auto")
    p.set_defaults(fn=_cmd_weight)

    p = sub.add_parser("represent", parents=[common],
                       help="evaluate a graph as a multidifferential operator")
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--arg", action="append",
                   help="white-vertex polyvector, repeatable, in label order")
    p.add_argument("--black-arg", action="append",
                   help="black-vertex polyvector; one value is broadcast")
    p.set_defaults(fn=_cmd_represent)

    p = sub.add_parser("gauge", parents=[common],
                       help="gauge-transform the standard structure")
    p.add_argument("--h", required=True,
                   help="one of %s, or a two-coloured vector"
                   % (", ".join(_GAUGE_ELEMENTS),))
    p.add_argument("--truncation", type=int, default=None)
    p.set_defaults(fn=_cmd_gauge)

    p = sub.add_parser("project", parents=[common],
                       help="reduce a vector to a quotient representative")
    p.add_argument("--ideal", required=True, choices=sorted(cx.IDEALS))
    p.add_argument("--graph", required=True)
    p.set_defaults(fn=_cmd_project)

    return top


def run(argv=None):
    """Parse arguments, dispatch, and return the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        _merge_config(args)
        if getattr(args, "pretty", None) is None:
            args.pretty = False
        return args.fn(args)
    except (ValueError, KeyError, OSError) as err:
        sys.stderr.write("error: %s\n" % (err,))
        return 2
    except RuntimeError as err:
        sys.stderr.write("error: %s\n" % (err,))
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
