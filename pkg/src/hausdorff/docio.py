"""Document input and output.

Sets, functions, and planar scenes travel as small JSON documents whose
numbers are integers or exact rational strings "p/q"; floats are
rejected so no binary rounding sneaks into an exact pipeline.  Parsing
gives back catalog values, printing emits a canonical document, and the
two compose to the identity on every supported value.
"""

import json
from fractions import Fraction
from typing import Union

from .errors import ParseError, ValidationError
from ._numeric import parse_rational, render_rational
from .hvalue import FiniteList, Geometric, HPair, PSeries
from .hintegral import (ALL_REALS, AllReals, Const, PiecewiseFunction, Poly,
                        SeriesValues)
from .setalg import (GEOMETRIC, HARMONIC, Atom, CantorAffine, CountableSeq,
                     FinitePoints, Interval, RepSet, diff)
from .deficiency import (ConvexPolygon, PlanarAtom, PlanarSet, Points2D,
                         Segment)

__all__ = ["parse_document", "parse_set", "parse_function", "parse_planar",
           "print_document", "pair_payload", "render_pair", "Document"]

Document = Union[RepSet, PiecewiseFunction, PlanarSet]


def _fail(msg: str) -> ParseError:
    return ParseError(msg)


def _rat(node, where: str) -> Fraction:
    try:
        return parse_rational(node)
    except ValidationError as exc:
        raise _fail(f"{where}: {exc}") from exc


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc


# ---------------------------------------------------------------------------
# sets

def _deletions(obj: dict, where: str):
    raw = obj.get("delete", [])
    if not isinstance(raw, list):
        raise _fail(f"{where}: delete takes a list of points")
    return tuple(_rat(p, where + ".delete") for p in raw)


def parse_set(node, where: str = "set") -> RepSet:
    if not isinstance(node, dict):
        raise _fail(f"{where}: expected an object")
    keys = [k for k in node if k != "delete"]
    if not keys and "delete" in node:
        # difference form: {"delete": [base, removed]}
        body = node["delete"]
        if not (isinstance(body, list) and len(body) == 2):
            raise _fail(f"{where}: delete takes [base, removed]")
        base = parse_set(body[0], where + ".delete[0]")
        removed = parse_set(body[1], where + ".delete[1]")
        return diff(base, removed)
    if len(keys) != 1:
        raise _fail(f"{where}: expected exactly one of "
                    "points/seq/interval/cantor/union/delete")
    key = keys[0]
    body = node[key]
    dels = _deletions(node, where)
    if key == "points":
        if dels:
            raise _fail(f"{where}: point sets delete by omission")
        if not isinstance(body, list):
            raise _fail(f"{where}: points takes a list")
        return RepSet.of(FinitePoints(_rat(p, where) for p in body))
    if key == "interval":
        if not (isinstance(body, list) and len(body) == 2):
            raise _fail(f"{where}: interval takes [lo, hi]")
        lo = None if body[0] is None else _rat(body[0], where)
        hi = None if body[1] is None else _rat(body[1], where)
        return RepSet.of(Interval(lo, hi, dels))
    if key == "cantor":
        if not isinstance(body, dict):
            raise _fail(f"{where}: cantor takes an object with t and s")
        return RepSet.of(CantorAffine(_rat(body.get("t", 0), where),
                                      _rat(body.get("s", 1), where), dels))
    if key == "seq":
        if not isinstance(body, dict) or "kind" not in body:
            raise _fail(f"{where}: seq needs a kind")
        kind = body["kind"]
        a = _rat(body.get("a", 0), where)
        b = _rat(body.get("b", 1), where)
        if kind == "harmonic":
            return RepSet.of(CountableSeq(HARMONIC, a, b, deletions=dels))
        if kind == "geometric":
            q = _rat(body.get("q", Fraction(1, 2)), where)
            return RepSet.of(CountableSeq(GEOMETRIC, a, b, q, deletions=dels))
        raise _fail(f"{where}: unknown sequence kind {kind!r}")
    if key == "union":
        if not isinstance(body, list):
            raise _fail(f"{where}: union takes a list")
        atoms = []
        for i, sub in enumerate(body):
            atoms.extend(parse_set(sub, f"{where}.union[{i}]").atoms)
        # overlap is not an error here: normalization merges
        return RepSet.from_atoms(atoms)
    raise _fail(f"{where}: unknown set form {key!r}")


# ---------------------------------------------------------------------------
# functions

def _parse_series(body, where: str):
    if not isinstance(body, dict) or "kind" not in body:
        raise _fail(f"{where}: series needs a kind")
    kind = body["kind"]
    if kind == "geometric":
        return Geometric(_rat(body.get("a", 1), where),
                         _rat(body.get("r", Fraction(1, 2)), where))
    if kind == "finite":
        values = body.get("values")
        if not isinstance(values, list):
            raise _fail(f"{where}: finite series needs values")
        return FiniteList(_rat(v, where) for v in values)
    if kind == "pseries":
        return PSeries(_rat(body.get("c", 1), where),
                       _rat(body.get("p", 2), where))
    raise _fail(f"{where}: unknown series kind {kind!r}")


def _parse_expr(node, where: str):
    if not isinstance(node, dict) or len(node) != 1:
        raise _fail(f"{where}: expected one of poly/const/series")
    key, body = next(iter(node.items()))
    if key == "const":
        return Const(_rat(body, where))
    if key == "poly":
        if not isinstance(body, list):
            raise _fail(f"{where}: poly takes a coefficient list")
        coeffs = [_rat(c, where) for c in body]
        return Poly(coeffs) if any(coeffs) else Const(0)
    if key == "series":
        return SeriesValues(_parse_series(body, where))
    raise _fail(f"{where}: unknown expression {key!r}")


def parse_function(node, where: str = "function") -> PiecewiseFunction:
    if not isinstance(node, dict) or "terms" not in node:
        raise _fail(f"{where}: expected an object with terms")
    raw_terms = node["terms"]
    if not isinstance(raw_terms, list):
        raise _fail(f"{where}: terms takes a list")
    terms = []
    for i, item in enumerate(raw_terms):
        spot = f"{where}.terms[{i}]"
        if not isinstance(item, dict) or "set" not in item or "expr" not in item:
            raise _fail(f"{spot}: each term needs a set and an expr")
        carrier = parse_set(item["set"], spot + ".set")
        expr = _parse_expr(item["expr"], spot + ".expr")
        for atom in carrier.atoms:
            terms.append((atom, expr))
    domain = node.get("domain", "all")
    if domain == "all":
        region = ALL_REALS
    else:
        region = parse_set(domain, where + ".domain")
    return PiecewiseFunction(terms, domain=region)


# ---------------------------------------------------------------------------
# planar scenes

def _point2(node, where: str):
    if not (isinstance(node, list) and len(node) == 2):
        raise _fail(f"{where}: a planar point is [x, y]")
    return (_rat(node[0], where), _rat(node[1], where))


def parse_planar(node, where: str = "planar") -> PlanarSet:
    if not isinstance(node, dict) or "planar" not in node:
        raise _fail(f"{where}: expected an object with a planar list")
    body = node["planar"]
    if not isinstance(body, list):
        raise _fail(f"{where}: planar takes a list of atoms")
    atoms = []
    for i, item in enumerate(body):
        spot = f"{where}[{i}]"
        if not isinstance(item, dict) or len(item) != 1:
            raise _fail(f"{spot}: expected one of points2d/segment/polygon")
        key, payload = next(iter(item.items()))
        if key == "points2d":
            atoms.append(Points2D(_point2(p, spot) for p in payload))
        elif key == "segment":
            if not (isinstance(payload, list) and len(payload) == 2):
                raise _fail(f"{spot}: segment takes two endpoints")
            atoms.append(Segment(_point2(payload[0], spot),
                                 _point2(payload[1], spot)))
        elif key == "polygon":
            if not isinstance(payload, list):
                raise _fail(f"{spot}: polygon takes a vertex list")
            atoms.append(ConvexPolygon(_point2(p, spot) for p in payload))
        else:
            raise _fail(f"{spot}: unknown planar atom {key!r}")
    return PlanarSet(atoms)


# ---------------------------------------------------------------------------
# entry points

def parse_document(text: str) -> Document:
    """Parse a JSON document into a set, a function, or a planar scene,
    deciding by shape."""
    node = _load(text)
    if not isinstance(node, dict):
        raise _fail("a document is a JSON object")
    if "terms" in node:
        return parse_function(node)
    if "planar" in node:
        return parse_planar(node)
    return parse_set(node)


def _set_payload(s: RepSet):
    docs = [_atom_payload(atom) for atom in s.atoms]
    if len(docs) == 1:
        return docs[0]
    return {"union": docs}


def _atom_payload(atom: Atom):
    doc = {}
    if isinstance(atom, FinitePoints):
        return {"points": [render_rational(p) for p in atom.points]}
    if isinstance(atom, Interval):
        doc["interval"] = [None if atom.lo is None else render_rational(atom.lo),
                           None if atom.hi is None else render_rational(atom.hi)]
    elif isinstance(atom, CantorAffine):
        doc["cantor"] = {"t": render_rational(atom.t),
                         "s": render_rational(atom.s)}
    elif isinstance(atom, CountableSeq):
        body = {"kind": atom.family, "a": render_rational(atom.a),
                "b": render_rational(atom.b)}
        if atom.q is not None:
            body["q"] = render_rational(atom.q)
        doc["seq"] = body
    else:
        raise ValidationError(f"cannot serialize {atom!r}")
    if atom.deletions:
        doc["delete"] = [render_rational(d) for d in sorted(atom.deletions)]
    return doc


def _series_payload(series):
    if isinstance(series, Geometric):
        return {"kind": "geometric", "a": render_rational(series.a),
                "r": render_rational(series.r)}
    if isinstance(series, FiniteList):
        return {"kind": "finite",
                "values": [render_rational(v) for v in series.values]}
    if isinstance(series, PSeries):
        return {"kind": "pseries", "c": render_rational(series.c),
                "p": render_rational(series.p)}
    raise ValidationError(f"cannot serialize {series!r}")


def _expr_payload(expr):
    if isinstance(expr, Const):
        return {"const": render_rational(expr.value)}
    if isinstance(expr, Poly):
        return {"poly": [render_rational(c) for c in expr.coeffs]}
    if isinstance(expr, SeriesValues):
        return {"series": _series_payload(expr.series)}
    raise ValidationError(f"cannot serialize {expr!r}")


def _function_payload(f: PiecewiseFunction):
    terms = [{"set": _atom_payload(atom), "expr": _expr_payload(expr)}
             for atom, expr in f.terms]
    domain = "all" if isinstance(f.domain, AllReals) else _set_payload(f.domain)
    return {"terms": terms, "domain": domain}


def _planar_payload(scene: PlanarSet):
    docs = []
    for atom in scene.atoms:
        if isinstance(atom, Points2D):
            docs.append({"points2d": [[render_rational(x), render_rational(y)]
                                      for x, y in atom.pts]})
        elif isinstance(atom, Segment):
            docs.append({"segment": [[render_rational(atom.a[0]),
                                      render_rational(atom.a[1])],
                                     [render_rational(atom.b[0]),
                                      render_rational(atom.b[1])]]})
        else:
            docs.append({"polygon": [[render_rational(x), render_rational(y)]
                                     for x, y in atom.vertices]})
    return {"planar": docs}


def print_document(value) -> str:
    """Canonical JSON for a set, function, planar scene, or result pair;
    parse_document inverts it for the document types."""
    if isinstance(value, RepSet):
        payload = _set_payload(value)
    elif isinstance(value, PiecewiseFunction):
        payload = _function_payload(value)
    elif isinstance(value, PlanarSet):
        payload = _planar_payload(value)
    elif isinstance(value, HPair):
        payload = pair_payload(value)
    else:
        raise ValidationError(f"cannot serialize {value!r}")
    return json.dumps(payload)


def pair_payload(p: HPair) -> dict:
    return {"d": p.d.render(), "m": p.m.render()}


def render_pair(p: HPair) -> str:
    return p.render()
