"""JSON documents and DOT rendering.

A document is ``{"kind": ..., "payload": ..., "meta": ...}`` with kind one of
``lattice``, ``system``, ``two_set_relation`` or ``report``.  Payloads:

* lattice: ``{"size", "labels", "covers"}``; a cover ``[a, b]`` means ``a`` is
  covered by ``b``.  A full ``"leq"`` matrix may be given instead of covers.
* system: ``{"labels", "arrows", "onto", "into"}`` as label pairs, loops
  implied; ``onto``/``into`` are optional and computed when absent.
* two_set_relation: ``{"left", "right", "arrows"}``.

Canonical text is ``json.dumps(sort_keys=True, indent=2)`` plus a newline.
"""

import json

import numpy as np

from . import __version__
from .constructions import TwoSetRelation
from .errors import DocumentError, InvalidSystem, KindMismatch
from .lattice import Lattice, lattice_from_covers
from .relations import FactSystem, diagnose, fact, relation_from_pairs, validate_system

KINDS = ("lattice", "system", "two_set_relation", "report")


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def document(kind, payload, **meta):
    if kind not in KINDS:
        raise KindMismatch(f"unknown kind {kind!r}")
    return {"kind": kind, "payload": payload, "meta": {"tool": f"sdlattice {__version__}", **meta}}


def _pairs(rel, labels, loops=False):
    return [[labels[a], labels[b]] for a, b in np.argwhere(rel).tolist() if loops or a != b]


def lattice_payload(L):
    return {"size": L.size, "labels": list(L.labels) if L.labels else None,
            "covers": [list(map(int, c)) for c in L.covers]}


def system_payload(sys):
    lab = list(sys.labels)
    return {"labels": lab, "arrows": _pairs(sys.to, lab), "onto": _pairs(sys.onto, lab),
            "into": _pairs(sys.into, lab)}


def two_set_payload(rel, names=str):
    left = [names(x) for x in rel.left]
    right = [names(y) for y in rel.right]
    arrows = [[left[a], right[b]] for a, b in np.argwhere(rel.adj).tolist()]
    return {"left": left, "right": right, "arrows": arrows}


def to_document(obj, **meta):
    if isinstance(obj, Lattice):
        return document("lattice", lattice_payload(obj), **meta)
    if isinstance(obj, FactSystem):
        return document("system", system_payload(obj), **meta)
    if isinstance(obj, TwoSetRelation):
        return document("two_set_relation", two_set_payload(obj), **meta)
    return document("report", obj, **meta)


def parse(text):
    """Parse a document; a bare lattice or system payload is wrapped automatically."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    if "kind" not in data:
        if "arrows" in data and "left" in data:
            data = {"kind": "two_set_relation", "payload": data}
        elif "arrows" in data:
            data = {"kind": "system", "payload": data}
        elif "covers" in data or "leq" in data:
            data = {"kind": "lattice", "payload": data}
        else:
            raise KindMismatch("cannot tell the document kind")
    if data["kind"] not in KINDS:
        raise KindMismatch(f"unknown kind {data['kind']!r}")
    data.setdefault("meta", {})
    data.setdefault("payload", {})
    return data


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None


def _label_index(labels, pairs, what):
    pos = {str(x): i for i, x in enumerate(labels)}
    try:
        return [(pos[str(a)], pos[str(b)]) for a, b in pairs]
    except KeyError as e:
        raise DocumentError(f"unknown label {e.args[0]!r} in {what}") from None
    except (TypeError, ValueError):
        raise DocumentError(f"{what} must be a list of pairs") from None


def lattice_from_document(doc):
    if doc["kind"] != "lattice":
        raise KindMismatch(f"expected a lattice, got {doc['kind']}")
    p = doc["payload"]
    if not isinstance(p, dict) or not ("leq" in p or "size" in p):
        raise KindMismatch("payload does not describe a lattice")
    labels = p.get("labels")
    try:
        if "leq" in p:
            return Lattice(np.array(p["leq"], dtype=bool), labels)
        size = int(p["size"])
        edges = [(int(a), int(b)) for a, b in p.get("covers", [])]
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"malformed lattice payload: {e}") from None
    if size < 1 or any(not (0 <= v < size) for e in edges for v in e):
        raise DocumentError("cover endpoints must lie in range(size)")
    return lattice_from_covers(edges, size, labels)


def relation_from_document(doc):
    """``(to, labels)`` for a system document, without validating any axiom."""
    if doc["kind"] != "system":
        raise KindMismatch(f"expected a system, got {doc['kind']}")
    p = doc["payload"]
    labels = [str(x) for x in p.get("labels", [])]
    to = relation_from_pairs(len(labels), _label_index(labels, p.get("arrows", []), "arrows"))
    return to, labels


def system_from_document(doc):
    to, labels = relation_from_document(doc)
    p = doc["payload"]
    onto = into = None
    if "onto" in p:
        onto = relation_from_pairs(len(labels), _label_index(labels, p["onto"], "onto"))
    if "into" in p:
        into = relation_from_pairs(len(labels), _label_index(labels, p["into"], "into"))
    try:
        return validate_system(to, onto, into, labels=labels)
    except InvalidSystem as e:
        e.witness = {k: [labels[v] if isinstance(v, int) else v for v in w]
                     for k, w in e.witness.items()}
        raise


def two_set_from_document(doc):
    if doc["kind"] != "two_set_relation":
        raise KindMismatch(f"expected a two_set_relation, got {doc['kind']}")
    p = doc["payload"]
    left, right = [str(x) for x in p["left"]], [str(y) for y in p["right"]]
    lp, rp = {x: i for i, x in enumerate(left)}, {y: i for i, y in enumerate(right)}
    adj = np.zeros((len(left), len(right)), dtype=bool)
    for a, b in p.get("arrows", []):
        adj[lp[str(a)], rp[str(b)]] = True
    return TwoSetRelation(tuple(left), tuple(right), adj)


# ---------------------------------------------------------------------------
# DOT


def _q(s):
    return '"' + str(s).replace('"', r'\"') + '"'


def lattice_dot(L, name="lattice"):
    """Hasse diagram, bottom at the bottom."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  {i} [label={_q(L.label(i))}];" for i in range(L.size)]
    lines += [f"  {a} -> {b};" for a, b in L.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def system_dot(sys, name="system"):
    """Arrows without loops; an arrow that is also onto or into is drawn
    with a double head or a tailed style respectively."""
    lines = [f"digraph {name} {{"]
    lines += [f"  {i} [label={_q(sys.labels[i])}];" for i in range(sys.n)]
    for a, b in np.argwhere(sys.to).tolist():
        if a == b:
            continue
        if sys.onto[a, b] and sys.into[a, b]:
            style = 'arrowhead=normalnormal, arrowtail=inv, dir=both, label="onto+into"'
        elif sys.onto[a, b]:
            style = 'arrowhead=normalnormal, label="onto"'
        elif sys.into[a, b]:
            style = 'arrowtail=inv, dir=both, label="into"'
        else:
            style = 'style=solid'
        lines.append(f"  {a} -> {b} [{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_dot(doc):
    if doc["kind"] == "lattice":
        return lattice_dot(lattice_from_document(doc))
    if doc["kind"] == "system":
        # drawn even when the axioms fail, with onto/into from Fact
        to, labels = relation_from_document(doc)
        onto, into = fact(to)
        return system_dot(FactSystem(to, onto, into, labels, diagnose(to, onto, into)))
    raise KindMismatch(f"cannot render a {doc['kind']} document")
