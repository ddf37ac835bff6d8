"""Command-line front end.  Exit codes: 0 success, 1 domain error (JSON on
stderr), 2 usage error."""

import argparse
import json
import sys

from . import _bits, __version__
from .congruence import (brute_congruences, con_lattice, directly_forces, forcing_upsets,
                         quotient, refinement_lattice)
from .constructions import (TwoSetRelation, classify_lattice, classify_relation, double_lattice, double_system,
                            extremal_analysis, interval_system, markowsky_roundtrip,
                            markowsky_system)
from .covers import canonical_join_rep, cj_complex, cov
from .errors import DocumentError, LatticeError
from .extraction import extract_system, ftfsdl_roundtrip
from .generators import (KNOWN_LATTICE_COUNTS, boolean, chain, doubling_random, downsets_of,
                         exhaustive_lattices, random_poset, tamari, weak_order_sn)
from .lattice import Lattice, is_semidistributive
from .relations import pairs_lattice, system_from_relation
from .serialize import (dumps, lattice_dot, load, relation_from_document, render_dot, system_dot,
                        system_from_document, lattice_from_document, to_document)

GENERATORS = ("chain", "boolean", "downsets_of_poset", "weak_order_sn", "tamari",
              "doubling_random", "exhaustive_enum", "random_poset")


def _setname(labels, subset):
    return "{" + ",".join(labels[i] for i in sorted(subset)) + "}"


def _parse_set(sys_, text):
    text = (text or "").strip().strip("{}")
    names = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return sys_.subset(names)
    except ValueError:
        raise DocumentError(f"unknown label in {text!r}") from None


def _system(doc):
    if doc["kind"] == "lattice":
        return extract_system(lattice_from_document(doc)).system
    return system_from_document(doc)


def _lattice(doc, cap):
    if doc["kind"] == "system":
        to, labels = relation_from_document(doc)
        P = pairs_lattice(to, cap=cap)
        names = [_setname(labels, _bits.members(m)) for m in P.masks]
        return Lattice(P.lattice.leq, names)
    return lattice_from_document(doc)


def _element(L, text):
    if L.labels is not None and text in L.labels:
        return L.labels.index(text)
    try:
        k = int(text)
    except ValueError:
        raise DocumentError(f"unknown element {text!r}") from None
    if not 0 <= k < L.size:
        raise DocumentError(f"element {k} out of range")
    return k


class Output:
    def __init__(self, args):
        self.args = args

    def emit(self, obj=None, text=None, dot=None, **meta):
        fmt = self.args.format
        if fmt == "dot":
            if dot is None:
                raise DocumentError("this command has no DOT output")
            out = dot
        elif fmt == "text" and text is not None:
            out = text if text.endswith("\n") else text + "\n"
        else:
            out = dumps(to_document(obj, command=self.args.command, **meta))
        if self.args.output:
            with open(self.args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, out):
    doc = load(args.file)
    if doc["kind"] == "system":
        s = system_from_document(doc)
        out.emit({"valid": True, "kind": "system", "size": s.n})
    elif doc["kind"] == "lattice":
        L = lattice_from_document(doc)
        out.emit({"valid": True, "kind": "lattice", "size": L.size})
    else:
        raise DocumentError(f"cannot validate a {doc['kind']} document")


def cmd_pairs(args, out):
    doc = load(args.file)
    to, labels = relation_from_document(doc)
    P = pairs_lattice(to, cap=args.cap)
    if args.count:
        out.emit({"count": len(P)}, text=str(len(P)))
        return
    L = _lattice(doc, args.cap)
    out.emit(L, dot=lattice_dot(L),
             pairs=[{"torsion": sorted(labels[i] for i in p.torsion),
                     "free": sorted(labels[i] for i in p.free)} for p in P.pairs])


def cmd_extract(args, out):
    ex = extract_system(lattice_from_document(load(args.file)))
    out.emit(ex.system, dot=system_dot(ex.system))


def cmd_roundtrip(args, out):
    rep = ftfsdl_roundtrip(lattice_from_document(load(args.file)))
    out.emit({"verified": True, "size": rep.size}, text=str(rep))


def cmd_covers(args, out):
    s = _system(load(args.file))
    sets = [_parse_set(s, args.set)] if args.set is not None else pairs_lattice(s).torsion_sets
    rows = []
    for X in sets:
        data = cov(s, X)
        rows.append({"closed_set": _setname(s.labels, X),
                     "cov": [s.labels[c] for c in data.cov],
                     "lower_covers": {s.labels[c]: _setname(s.labels, d)
                                      for c, d in data.lower_covers.items()}})
    text = "\n".join(f"{r['closed_set']}: " + ", ".join(f"{c} -> {d}" for c, d in r["lower_covers"].items())
                     for r in rows)
    out.emit({"covers": rows}, text=text)


def cmd_cjr(args, out):
    s = _system(load(args.file))
    rows = []
    for X in pairs_lattice(s).torsion_sets:
        rep = sorted(canonical_join_rep(s, X), key=lambda t: sorted(t))
        rows.append({"closed_set": _setname(s.labels, X),
                     "cjr": [_setname(s.labels, t) for t in rep]})
    text = "\n".join(f"{r['closed_set']} = join of [{' '.join(r['cjr'])}]" for r in rows)
    out.emit({"cjr": rows}, text=text)


def cmd_cjcomplex(args, out):
    s = _system(load(args.file))
    cx = cj_complex(s, verify=args.verify)
    edges = [[s.labels[a], s.labels[b]] for a, b in cx.edges]
    dot = "graph cj {\n" + "".join(f"  {v} [label=\"{s.labels[v]}\"];\n" for v in cx.vertices)
    dot += "".join(f"  {a} -- {b};\n" for a, b in cx.edges) + "}\n"
    out.emit({"vertices": list(s.labels), "edges": edges, "flag": cx.flag}, dot=dot)


def cmd_forcing(args, out):
    s = _system(load(args.file))
    f = directly_forces(s)
    edges = [{"from": s.labels[x], "to": s.labels[y], "condition": tag}
             for (x, y), tag in sorted(f.tags.items())]
    text = "\n".join(f"{e['from']} ~> {e['to']} ({e['condition']})" for e in edges)
    out.emit({"edges": edges, "acyclic": f.is_acyclic()}, text=text)


def cmd_quotients(args, out):
    s = _system(load(args.file))
    f = directly_forces(s)
    P = pairs_lattice(s, cap=args.cap)
    rows = []
    for U in forcing_upsets(s, f):
        q = quotient(s, U, pairs=P, forcing=f)
        rows.append({"upset": _setname(s.labels, U), "size": len(q.quotient)})
    out.emit({"quotients": rows},
             text="\n".join(f"{r['upset']}: {r['size']}" for r in rows))


def cmd_con(args, out):
    doc = load(args.file)
    if doc["kind"] == "lattice":
        L = lattice_from_document(doc)
        if not is_semidistributive(L).semidistributive:
            C = refinement_lattice(brute_congruences(L, cap=args.cap))
            out.emit(C, dot=lattice_dot(C, "congruences"), method="brute_force")
            return
        s = extract_system(L).system
    else:
        s = system_from_document(doc)
    C = con_lattice(s)
    named = Lattice(C.lattice.leq, [_setname(s.labels, d) for d in C.downsets])
    out.emit(named, dot=lattice_dot(named, "congruences"), method="forcing_downsets")


def cmd_interval(args, out):
    s = _system(load(args.file))
    r = interval_system(s, _parse_set(s, args.lo), _parse_set(s, args.hi))
    out.emit(r, dot=system_dot(r))


def cmd_double(args, out):
    doc = load(args.file)
    if doc["kind"] == "lattice":
        L = lattice_from_document(doc)
        D = double_lattice(L, _element(L, args.lo), _element(L, args.hi))
        out.emit(D, dot=lattice_dot(D))
        return
    s = system_from_document(doc)
    r = double_system(s, _parse_set(s, args.lo), _parse_set(s, args.hi), verify=True)
    out.emit(r, dot=system_dot(r))


def cmd_markowsky(args, out):
    L = _lattice(load(args.file), args.cap)
    markowsky_roundtrip(L)
    rel = markowsky_system(L)
    named = TwoSetRelation(tuple(L.label(j) for j in rel.left),
                           tuple(L.label(m) for m in rel.right), rel.adj)
    out.emit(named, roundtrip_verified=True)


def cmd_extremal(args, out):
    L = _lattice(load(args.file), args.cap)
    cert = extremal_analysis(L)
    mu = None if cert.mu is None else {L.label(j): L.label(m) for j, m in cert.mu.items()}
    rep = {"extremal": cert.extremal, "chain": [L.label(x) for x in cert.chain],
           "length": cert.length, "n_jirr": cert.n_jirr, "n_mirr": cert.n_mirr, "mu": mu}
    out.emit(rep, text=f"extremal: {cert.extremal} (chain {cert.length}, "
                       f"{cert.n_jirr} join-irreducibles, {cert.n_mirr} meet-irreducibles)")


def _mark(flag):
    return "yes" if flag else "no"


def cmd_classify(args, out):
    doc = load(args.file)
    if doc["kind"] == "system":
        to, _ = relation_from_document(doc)
        c = classify_relation(to)
    else:
        c = classify_lattice(lattice_from_document(doc))
    d = c.to_dict()
    text = "\n".join(f"{k}: {_mark(v)}" for k, v in d.items() if isinstance(v, bool))
    out.emit(d, text=text)


def cmd_generate(args, out):
    kind, n = args.kind, args.n
    if kind == "chain":
        obj = chain(n)
    elif kind == "boolean":
        obj = boolean(n)
    elif kind == "weak_order_sn":
        obj = weak_order_sn(n)
    elif kind == "tamari":
        obj = tamari(n)
    elif kind == "doubling_random":
        obj = doubling_random(args.steps if args.steps is not None else n, args.seed)
    elif kind == "downsets_of_poset":
        obj = downsets_of(random_poset(n, args.seed, args.p))
    elif kind == "random_poset":
        # as a system: x -> y iff x >= y
        obj = system_from_relation(random_poset(n, args.seed, args.p).T)
    elif kind == "exhaustive_enum":
        found = exhaustive_lattices(n)
        if args.index is None:
            out.emit({"n": n, "count": len(found), "known": KNOWN_LATTICE_COUNTS.get(n)},
                     text=str(len(found)))
            return
        obj = found[args.index]
    else:  # pragma: no cover - argparse restricts choices
        raise DocumentError(kind)
    out.emit(obj, dot=lattice_dot(obj) if isinstance(obj, Lattice) else system_dot(obj),
             generator={"kind": kind, "n": n, "seed": args.seed, "steps": args.steps})


def cmd_render(args, out):
    sys.stdout.write(render_dot(load(args.file)))


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--cap", type=int, default=1 << 20, help="size limit for enumerations")
    common.add_argument("-o", "--output", help="write to a file instead of stdout")

    p = argparse.ArgumentParser(prog="sdlattice", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"sdlattice {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, file=True):
        sp = sub.add_parser(name, parents=[common], help=help)
        if file:
            sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check a system or lattice document")
    add("pairs", cmd_pairs, "lattice of maximal orthogonal pairs").add_argument(
        "--count", action="store_true")
    add("extract", cmd_extract, "factorization system of a semidistributive lattice")
    add("roundtrip", cmd_roundtrip, "verify lattice -> system -> pairs isomorphism")
    add("covers", cmd_covers, "lower covers of closed sets").add_argument(
        "--set", help="one closed set, e.g. 1,3 (default: all)")
    add("cjr", cmd_cjr, "canonical join representations")
    add("cjcomplex", cmd_cjcomplex, "canonical join complex").add_argument(
        "--verify", action="store_true", help="compare with a brute-force face list")
    add("forcing", cmd_forcing, "direct forcing relation with witnesses")
    add("quotients", cmd_quotients, "all forcing-upsets and quotient sizes")
    add("con", cmd_con, "congruence lattice")
    for name, fn, help in (("interval", cmd_interval, "system of an interval"),
                           ("double", cmd_double, "double an interval")):
        sp = add(name, fn, help)
        sp.add_argument("--lo", required=True)
        sp.add_argument("--hi", required=True)
    add("markowsky", cmd_markowsky, "join/meet-irreducible relation of any lattice")
    add("extremal", cmd_extremal, "extremality certificate")
    add("classify", cmd_classify, "one-stop classification report")
    g = add("generate", cmd_generate, "build a lattice or system", file=False)
    g.add_argument("kind", choices=GENERATORS)
    g.add_argument("n", type=int, nargs="?", default=3)
    g.add_argument("--steps", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--p", type=float, default=0.3, help="edge probability for random posets")
    g.add_argument("--index", type=int, help="which lattice of an exhaustive enumeration")
    add("render", cmd_render, "DOT text for a lattice or system")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.fn(args, Output(args))
    except LatticeError as e:
        sys.stderr.write(json.dumps({"error": e.to_dict()}, sort_keys=True) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
