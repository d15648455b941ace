"""JSON interchange for rings, Hopf algebras, bundles, cleavings, witnesses.

Scalars and ring elements are strings so that exact values survive the trip
("3/4", "2 mod 7", "z^2-1").  A document is first checked against the
shipped schema, then resolved name by name; every diagnostic carries the
JSON pointer of the offending spot.  Serialization always emits the
explicit normal form (constructor shorthands like "sweedler" parse but are
not reproduced), and parse of a serialized document rebuilds equal objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources

import jsonschema

from .errors import BadScalarError, SchemaError, UnresolvedReferenceError
from .fields import Field, PrimeField, QQ, SimpleExtension
from .rings import (BaseMorphism, BaseRing, adjoin_root, base_ring,
                    extend_with_t, inclusion_morphism)
from .hopf import (Bialgebra, HopfAlgebra, cyclic_group_algebra, dual_hopf,
                   hopf_from_bialgebra, sweedler_h4, taft)
from .comod import ComoduleAlgebra, HModuleMap, trivial_bundle
from .bundles import AbgParams, abg_bundle, kummer_bundle
from .homotopy import (ROOT_ADJUNCTION, EtaleStep, HomotopyWitness,
                       _frozen_matrix)

FREE, LAURENT, ROOT = "free", "laurent", "root"


@dataclass
class Document:
    """The resolved object graph of one interchange file."""

    field: Field
    rings: dict = dc_field(default_factory=dict)
    hopf_algebras: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    bundles: dict = dc_field(default_factory=dict)
    cleavings: dict = dc_field(default_factory=dict)
    witnesses: dict = dc_field(default_factory=dict)


def _schema():
    text = resources.files("hopfgal").joinpath("schema.json").read_text()
    return json.loads(text)


def validate_raw(obj) -> None:
    """Structural check against the shipped schema; SchemaError on failure."""
    validator = jsonschema.Draft202012Validator(_schema())
    err = jsonschema.exceptions.best_match(validator.iter_errors(obj))
    if err is not None:
        pointer = "/" + "/".join(str(p) for p in err.absolute_path)
        raise SchemaError(pointer, err.message)


def _scalar(K: Field, text, pointer):
    try:
        return K.parse(text)
    except BadScalarError as exc:
        raise BadScalarError(f"at {pointer}: {exc}") from None


def _element(ring: BaseRing, text, pointer):
    try:
        return ring.parse_element(text)
    except BadScalarError as exc:
        raise BadScalarError(f"at {pointer}: {exc}") from None


def _ref(table: dict, name, pointer):
    if name not in table:
        raise UnresolvedReferenceError(pointer, name)
    return table[name]


def _index(labels: dict, label, pointer):
    if label not in labels:
        raise UnresolvedReferenceError(pointer, label)
    return labels[label]


# ------------------------------------------------------------------ fields


def parse_field(spec, pointer="/field") -> Field:
    if isinstance(spec, str):
        if spec == "Q":
            return QQ
        if spec.startswith("F"):
            return PrimeField(int(spec[1:]))
        raise SchemaError(pointer, f"unknown field {spec!r}")
    base = parse_field(spec["base"], pointer + "/base")
    modulus = tuple(_scalar(base, c, f"{pointer}/modulus/{i}")
                    for i, c in enumerate(spec["modulus"]))
    return SimpleExtension(base, spec["var"], modulus)


def field_spec(K: Field):
    if K == QQ:
        return "Q"
    if isinstance(K, PrimeField):
        return f"F{K.p}"
    return {"base": field_spec(K.base), "var": K.var,
            "modulus": [K.base.format(c) for c in K.modulus]}


# ------------------------------------------------------------------- rings


def parse_ring(K: Field, spec, pointer) -> BaseRing:
    R = base_ring(K)
    for i, g in enumerate(spec["gens"]):
        here = f"{pointer}/gens/{i}"
        kind = g["kind"]
        if kind == FREE:
            R = R.add_free(g["name"], grade=g.get("grade", 0))
        elif kind == LAURENT:
            R = R.add_laurent(g["name"])
        else:
            if "value" not in g:
                raise SchemaError(here, "root generator needs a value")
            u = _element(R, g["value"], here + "/value")
            R, _, _ = adjoin_root(R, u, g.get("degree", 2), g["name"])
    return R


def ring_spec(R: BaseRing):
    gens = []
    for i, g in enumerate(R.gens):
        entry = {"name": g.name, "kind": g.kind}
        if g.grade:
            entry["grade"] = g.grade
        if g.kind == ROOT:
            pre = R.prefix(i)
            value = pre.element({m[:i]: c for m, c in R.root_values[i].items()})
            entry["degree"] = g.degree
            entry["value"] = pre.format_element(value)
        gens.append(entry)
    return {"gens": gens}


# ----------------------------------------------------------- Hopf algebras


def _scalar_vec(K, spec, labels, pointer):
    out = {}
    for label, text in spec.items():
        i = _index(labels, label, f"{pointer}/{label}")
        c = _scalar(K, text, f"{pointer}/{label}")
        if not K.is_zero(c):
            out[i] = c
    return out


def parse_hopf(K: Field, spec, pointer) -> HopfAlgebra:
    kind = spec["construction"]
    if kind == "sweedler":
        return sweedler_h4(K)
    if kind == "taft":
        return taft(spec["order"], _scalar(K, spec["q"], pointer + "/q"), K)
    if kind == "cyclic_group":
        return cyclic_group_algebra(spec["order"], K)
    if kind == "cyclic_dual":
        return dual_hopf(cyclic_group_algebra(spec["order"], K))
    labels = {nm: i for i, nm in enumerate(spec["labels"])}
    if len(labels) != len(spec["labels"]):
        raise SchemaError(pointer + "/labels", "duplicate basis label")
    mult = {}
    for r, (a, b, vec) in enumerate(spec["mult"]):
        here = f"{pointer}/mult/{r}"
        key = (_index(labels, a, here), _index(labels, b, here))
        entry = _scalar_vec(K, vec, labels, here + "/2")
        if entry:
            mult[key] = entry
    comult = {}
    for r, (a, terms) in enumerate(spec["comult"]):
        here = f"{pointer}/comult/{r}"
        i = _index(labels, a, here)
        entry = {}
        for s, (lft, rgt, c) in enumerate(terms):
            at = f"{here}/1/{s}"
            key = (_index(labels, lft, at), _index(labels, rgt, at))
            v = K.add(entry.get(key, K.zero()), _scalar(K, c, at))
            if K.is_zero(v):
                entry.pop(key, None)
            else:
                entry[key] = v
        if entry:
            comult[i] = entry
    B = Bialgebra(K, tuple(spec["labels"]), mult,
                  _scalar_vec(K, spec["unit"], labels, pointer + "/unit"),
                  comult,
                  _scalar_vec(K, spec["counit"], labels, pointer + "/counit"))
    if "antipode" not in spec:
        return hopf_from_bialgebra(B)
    d = len(labels)
    S = [[K.zero()] * d for _ in range(d)]
    for r, (a, vec) in enumerate(spec["antipode"]):
        here = f"{pointer}/antipode/{r}"
        j = _index(labels, a, here)
        for i, c in _scalar_vec(K, vec, labels, here + "/1").items():
            S[i][j] = c
    return HopfAlgebra(K, B.labels, B.mult, B.unit, B.comult, B.counit,
                       tuple(tuple(row) for row in S))


def hopf_spec(H: HopfAlgebra):
    K, labels = H.field, H.labels
    fmt = K.format

    def vec(v):
        return {labels[i]: fmt(c) for i, c in sorted(v.items())}

    mult = [[labels[i], labels[j], vec(H.mult[(i, j)])]
            for (i, j) in sorted(H.mult) if H.mult[(i, j)]]
    comult = [[labels[i],
               [[labels[a], labels[b], fmt(c)]
                for (a, b), c in sorted(H.comult[i].items())]]
              for i in sorted(H.comult) if H.comult[i]]
    antipode = []
    for j in range(H.dim):
        col = {i: H.antipode[i][j] for i in range(H.dim)
               if not K.is_zero(H.antipode[i][j])}
        if col:
            antipode.append([labels[j], vec(col)])
    return {"construction": "explicit", "labels": list(labels),
            "unit": vec(H.unit), "counit": vec(H.counit),
            "mult": mult, "comult": comult, "antipode": antipode}


# ----------------------------------------------------------------- bundles


def _element_vec(R, spec, labels, pointer):
    out = {}
    for label, text in spec.items():
        i = _index(labels, label, f"{pointer}/{label}")
        v = _element(R, text, f"{pointer}/{label}")
        if v != R.zero():
            out[i] = v
    return out


def _parse_bundle_body(R: BaseRing, H: HopfAlgebra, spec, pointer) -> ComoduleAlgebra:
    labels = {nm: i for i, nm in enumerate(spec["labels"])}
    if len(labels) != len(spec["labels"]):
        raise SchemaError(pointer + "/labels", "duplicate basis label")
    hlabels = {nm: i for i, nm in enumerate(H.labels)}
    mult = {}
    for r, (a, b, vec) in enumerate(spec["mult"]):
        here = f"{pointer}/mult/{r}"
        key = (_index(labels, a, here), _index(labels, b, here))
        entry = _element_vec(R, vec, labels, here + "/2")
        if entry:
            mult[key] = entry
    coaction = {}
    for r, (a, terms) in enumerate(spec["coaction"]):
        here = f"{pointer}/coaction/{r}"
        i = _index(labels, a, here)
        entry = {}
        for s, (lft, rgt, text) in enumerate(terms):
            at = f"{here}/1/{s}"
            key = (_index(labels, lft, at), _index(hlabels, rgt, at))
            v = entry.get(key, R.zero()) + _element(R, text, at)
            if v == R.zero():
                entry.pop(key, None)
            else:
                entry[key] = v
        if entry:
            coaction[i] = entry
    return ComoduleAlgebra(R, H, tuple(spec["labels"]), mult,
                           _element_vec(R, spec["unit"], labels, pointer + "/unit"),
                           coaction)


def parse_bundle(doc: Document, spec, pointer) -> ComoduleAlgebra:
    kind = spec["construction"]
    if kind == "kummer":
        return kummer_bundle(spec["order"],
                             _scalar(doc.field, spec["q"], pointer + "/q"),
                             doc.field)
    R = _ref(doc.rings, spec["ring"], pointer + "/ring")
    if kind == "abg":
        return abg_bundle(AbgParams(
            R,
            _element(R, spec["alpha"], pointer + "/alpha"),
            _element(R, spec["beta"], pointer + "/beta"),
            _element(R, spec["gamma"], pointer + "/gamma")))
    H = _ref(doc.hopf_algebras, spec["hopf"], pointer + "/hopf")
    if kind == "trivial":
        return trivial_bundle(R, H)
    return _parse_bundle_body(R, H, spec, pointer)


def _bundle_body_spec(A: ComoduleAlgebra, hopf_name: str):
    R, labels, hlabels = A.base, A.labels, A.hopf.labels
    fmt = R.format_element

    def vec(v):
        return {labels[i]: fmt(c) for i, c in sorted(v.items())}

    mult = [[labels[i], labels[j], vec(A.mult[(i, j)])]
            for (i, j) in sorted(A.mult) if A.mult[(i, j)]]
    coaction = [[labels[i],
                 [[labels[a], hlabels[b], fmt(c)]
                  for (a, b), c in sorted(A.coaction[i].items())]]
                for i in sorted(A.coaction) if A.coaction[i]]
    return {"construction": "explicit", "hopf": hopf_name,
            "labels": list(labels), "unit": vec(A.unit),
            "mult": mult, "coaction": coaction}


# --------------------------------------------------------------- documents


def parse_document(text: str) -> Document:
    """Validate and resolve one interchange file."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"not valid JSON: {exc.msg} at line {exc.lineno}") from None
    return resolve(raw)


def resolve(raw) -> Document:
    validate_raw(raw)
    doc = Document(parse_field(raw["field"]))
    K = doc.field
    for name, spec in raw.get("rings", {}).items():
        doc.rings[name] = parse_ring(K, spec, f"/rings/{name}")
    for name, spec in raw.get("hopf_algebras", {}).items():
        doc.hopf_algebras[name] = parse_hopf(K, spec, f"/hopf_algebras/{name}")
    for name, spec in raw.get("morphisms", {}).items():
        here = f"/morphisms/{name}"
        src = _ref(doc.rings, spec["source"], here + "/source")
        dst = _ref(doc.rings, spec["target"], here + "/target")
        images = {g: _element(dst, text, f"{here}/images/{g}")
                  for g, text in spec["images"].items()}
        doc.morphisms[name] = BaseMorphism(src, dst, images)
    for name, spec in raw.get("bundles", {}).items():
        doc.bundles[name] = parse_bundle(doc, spec, f"/bundles/{name}")
    for name, spec in raw.get("cleavings", {}).items():
        here = f"/cleavings/{name}"
        A = _ref(doc.bundles, spec["bundle"], here + "/bundle")
        alabels = {nm: i for i, nm in enumerate(A.labels)}
        hlabels = {nm: i for i, nm in enumerate(A.hopf.labels)}
        values = [dict() for _ in range(A.hopf.dim)]
        for r, (hl, vec) in enumerate(spec["values"]):
            at = f"{here}/values/{r}"
            values[_index(hlabels, hl, at)] = _element_vec(A.base, vec, alabels, at + "/1")
        doc.cleavings[name] = HModuleMap(A, tuple(values))
    for name, spec in raw.get("witnesses", {}).items():
        doc.witnesses[name] = _parse_witness(doc, spec, f"/witnesses/{name}")
    return doc


def _parse_witness(doc: Document, spec, pointer) -> HomotopyWitness:
    source = _ref(doc.rings, spec["step"]["source"], pointer + "/step/source")
    cur, recipe = source, []
    for i, adj in enumerate(spec["step"]["adjunctions"]):
        here = f"{pointer}/step/adjunctions/{i}"
        u = _element(cur, adj["value"], here + "/value")
        recipe.append((ROOT_ADJUNCTION, u, adj["degree"], adj["name"]))
        cur, _, _ = adjoin_root(cur, u, adj["degree"], adj["name"])
    step = EtaleStep(inclusion_morphism(source, cur), tuple(recipe))
    interval = extend_with_t(cur)
    fam = spec["family"]
    kind = fam["construction"]
    if kind == "abg":
        R = interval.ring
        family = abg_bundle(AbgParams(
            R,
            _element(R, fam["alpha"], pointer + "/family/alpha"),
            _element(R, fam["beta"], pointer + "/family/beta"),
            _element(R, fam["gamma"], pointer + "/family/gamma")))
    elif kind == "trivial":
        H = _ref(doc.hopf_algebras, fam["hopf"], pointer + "/family/hopf")
        family = trivial_bundle(interval.ring, H)
    else:
        H = _ref(doc.hopf_algebras, fam["hopf"], pointer + "/family/hopf")
        family = _parse_bundle_body(interval.ring, H, fam, pointer + "/family")
    at_zero = _ref(doc.bundles, spec["at_zero"], pointer + "/at_zero")
    at_one = _ref(doc.bundles, spec["at_one"], pointer + "/at_one")
    isos = []
    for key in ("iso_zero", "iso_one"):
        M = [[_element(cur, e, f"{pointer}/{key}/{r}/{c}")
              for c, e in enumerate(row)]
             for r, row in enumerate(spec[key])]
        isos.append(_frozen_matrix(M))
    return HomotopyWitness(step, interval, family, at_zero, at_one, *isos)


def _named(table: dict, obj, stem: str):
    for name, existing in table.items():
        if existing == obj:
            return name
    name = stem
    i = 2
    while name in table:
        name = f"{stem}{i}"
        i += 1
    table[name] = obj
    return name


def document_of(doc: Document) -> dict:
    """Serialize to the explicit normal form, naming shared subobjects."""
    ring_objs = dict(doc.rings)
    hopf_objs = dict(doc.hopf_algebras)
    bundle_objs = dict(doc.bundles)
    bundle_specs = {}

    def bundle_spec_for(name, A):
        bundle_specs[name] = {**_bundle_body_spec(A, _named(hopf_objs, A.hopf, "hopf")),
                              "ring": _named(ring_objs, A.base, "ring")}

    def bundle_name(A):
        name = _named(bundle_objs, A, "bundle")
        if name not in bundle_specs:
            bundle_spec_for(name, A)
        return name

    for name, A in doc.bundles.items():
        bundle_spec_for(name, A)
    morphisms = {}
    for name, f in doc.morphisms.items():
        morphisms[name] = {
            "source": _named(ring_objs, f.source, "ring"),
            "target": _named(ring_objs, f.target, "ring"),
            "images": {g.name: f.target.format_element(img)
                       for g, img in zip(f.source.gens, f.images)}}
    cleavings = {}
    for name, cm in doc.cleavings.items():
        hlabels = cm.algebra.hopf.labels
        alabels = cm.algebra.labels
        fmt = cm.algebra.base.format_element
        cleavings[name] = {"bundle": bundle_name(cm.algebra), "values": [
            [hlabels[k], {alabels[i]: fmt(c) for i, c in sorted(v.items())}]
            for k, v in enumerate(cm.values) if v]}
    witnesses = {}
    for name, w in doc.witnesses.items():
        sname = _named(ring_objs, w.step.source, "ring")
        adjs = []
        cur = w.step.source
        for _, u, n, nm in w.step.recipe:
            adjs.append({"name": nm, "degree": n, "value": cur.format_element(u)})
            cur, _, _ = adjoin_root(cur, u, n, nm)
        family = _bundle_body_spec(w.family, _named(hopf_objs, w.family.hopf, "hopf"))
        fmt = w.step.target.format_element
        witnesses[name] = {
            "step": {"source": sname, "adjunctions": adjs},
            "family": family,
            "at_zero": bundle_name(w.at_zero),
            "at_one": bundle_name(w.at_one),
            "iso_zero": [[fmt(e) for e in row] for row in w.iso_zero],
            "iso_one": [[fmt(e) for e in row] for row in w.iso_one]}
    out = {"field": field_spec(doc.field)}
    if ring_objs:
        out["rings"] = {n: ring_spec(r) for n, r in ring_objs.items()}
    if hopf_objs:
        out["hopf_algebras"] = {n: hopf_spec(h) for n, h in hopf_objs.items()}
    if morphisms:
        out["morphisms"] = morphisms
    if bundle_specs:
        out["bundles"] = bundle_specs
    if cleavings:
        out["cleavings"] = cleavings
    if witnesses:
        out["witnesses"] = witnesses
    return out


def dump_document(doc: Document) -> str:
    return json.dumps(document_of(doc), indent=2, sort_keys=True) + "\n"


def load_document(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())
