"""Command line front end.

Verification commands read a JSON document, resolve named objects, and
re-run the library's certifying checks.  Exit status 0 means everything
verified, 1 means a mathematical check failed or an object was rejected,
2 means the input itself was unusable.  With --json each command prints a
single machine-readable verdict; the encoder is pinned (sorted keys,
two-space indent) so identical inputs give byte-identical output.

Independent verifications in one invocation may run on a small thread
pool, capped by the HOPFGAL_THREADS environment variable; results are
always reported in input order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .bundles import (
    AbgParams,
    abg_bundle,
    abg_triviality_criterion,
    kummer_bundle,
    search_trivialization,
)
from .cleft import check_cleaving
from .comod import push_forward
from .document import Document, document_of, load_document
from .errors import BadScalarError, InputError, MathError
from .fields import field_from_name
from .galois import is_galois, verify_bundle
from .homotopy import (
    cleft_trivialization_witness,
    kummer_trivialization_witness,
    verify_chain,
    verify_witness,
)
from .hopf import verify_hopf
from .rings import base_ring


# --------------------------------------------------------------------------
# plumbing
# --------------------------------------------------------------------------

def _thread_cap() -> int:
    raw = os.environ.get("HOPFGAL_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap < 1:
        raise InputError(f"HOPFGAL_THREADS must be a positive integer, not {raw!r}")
    return cap


def _run_ordered(jobs: list) -> list:
    """Run zero-argument jobs, possibly concurrently, results in input order."""
    cap = _thread_cap()
    if len(jobs) <= 1 or cap == 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=min(cap, len(jobs))) as pool:
        return list(pool.map(lambda job: job(), jobs))


def _load(path: str) -> Document:
    try:
        return load_document(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _pick(table: dict, name: str, kind: str, path: str):
    try:
        return table[name]
    except KeyError:
        raise InputError(f"no {kind} named {name!r} in {path}") from None


def _scalar_flag(K, text: str, flag: str):
    try:
        return K.parse(text)
    except BadScalarError as exc:
        raise BadScalarError(f"--{flag}: {exc}") from None


def _report_results(command: str, names: list, reports: list):
    lines = []
    for name, rep in zip(names, reports):
        lines.append(f"{name}:")
        lines.extend("  " + ln for ln in str(rep).splitlines())
    ok = all(rep.ok for rep in reports)
    payload = {
        "command": command,
        "ok": ok,
        "results": [{"name": nm, "report": rep.to_json()}
                    for nm, rep in zip(names, reports)],
    }
    return (0 if ok else 1), lines, payload


def _format_vec(A, vec: dict) -> str:
    C = A.base
    terms = [f"({C.format_element(c)}) {A.labels[i]}"
             for i, c in sorted(vec.items())]
    return " + ".join(terms) if terms else "0"


def _values_table(A, values) -> list:
    C, H = A.base, A.hopf
    out = []
    for k, vec in enumerate(values):
        if vec:
            out.append([H.labels[k],
                        {A.labels[i]: C.format_element(c)
                         for i, c in sorted(vec.items())}])
    return out


# --------------------------------------------------------------------------
# verification commands
# --------------------------------------------------------------------------

def _cmd_verify_hopf(args):
    doc = _load(args.file)
    objs = [_pick(doc.hopf_algebras, nm, "Hopf algebra", args.file)
            for nm in args.names]
    reports = _run_ordered([lambda H=H: verify_hopf(H) for H in objs])
    return _report_results("verify-hopf", args.names, reports)


def _cmd_verify_bundle(args):
    doc = _load(args.file)
    objs = [_pick(doc.bundles, nm, "bundle", args.file) for nm in args.names]
    reports = _run_ordered([lambda A=A: verify_bundle(A) for A in objs])
    return _report_results("verify-bundle", args.names, reports)


def _cmd_galois(args):
    doc = _load(args.file)
    objs = [_pick(doc.bundles, nm, "bundle", args.file) for nm in args.names]
    verdicts = _run_ordered([lambda A=A: is_galois(A) for A in objs])
    lines, results = [], []
    for nm, v in zip(args.names, verdicts):
        lines.append(f"{nm}: {v.describe()}")
        det = v.det.ring.format_element(v.det) if v.det is not None else None
        results.append({"name": nm, "galois": v.ok, "det": det,
                        "reason": v.describe()})
    ok = all(v.ok for v in verdicts)
    return (0 if ok else 1), lines, {"command": "galois", "ok": ok,
                                     "results": results}


def _cmd_cleft(args):
    doc = _load(args.file)
    maps = [_pick(doc.cleavings, nm, "cleaving", args.file) for nm in args.names]
    # rejects with NotComoduleMap / NotInvertible before any report is built
    made = _run_ordered([lambda g=g: check_cleaving(g.algebra, g) for g in maps])
    if args.action == "check":
        reports = [cm.verify() for cm in made]
        return _report_results("cleft check", args.names, reports)
    lines, results = [], []
    for nm, cm in zip(args.names, made):
        A = cm.algebra
        lines.append(f"{nm}: convolution inverse")
        for k, vec in enumerate(cm.gamma_inv.values):
            lines.append(f"  {A.hopf.labels[k]} -> {_format_vec(A, vec)}")
        results.append({"name": nm,
                        "inverse": _values_table(A, cm.gamma_inv.values)})
    return 0, lines, {"command": "cleft invert", "ok": True, "results": results}


def _cmd_pushforward(args):
    doc = _load(args.file)
    A = _pick(doc.bundles, args.bundle, "bundle", args.file)
    f = _pick(doc.morphisms, args.morphism, "base morphism", args.file)
    B = push_forward(f, A)
    rep = verify_bundle(B)
    out = document_of(Document(doc.field, bundles={args.bundle + "_pushed": B}))
    lines = [f"push-forward of {args.bundle} along {args.morphism}:"]
    lines.extend("  " + ln for ln in str(rep).splitlines())
    lines.append(json.dumps(out, indent=2, sort_keys=True))
    payload = {"command": "pushforward", "ok": rep.ok,
               "report": rep.to_json(), "document": out}
    return (0 if rep.ok else 1), lines, payload


def _cmd_h4_criterion(args):
    K = field_from_name(args.field)
    C = base_ring(K)
    vals = {nm: C.from_scalar(_scalar_flag(K, getattr(args, nm), nm))
            for nm in ("alpha", "beta", "gamma")}
    verdict = abg_triviality_criterion(
        AbgParams(C, vals["alpha"], vals["beta"], vals["gamma"]))
    if verdict.trivial:
        line = f"trivial, s={K.format(verdict.s)}, t={K.format(verdict.t)}"
    else:
        line = "not trivial"
    payload = {"command": "h4 criterion", "field": args.field,
               "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma,
               "trivial": verdict.trivial,
               "s": K.format(verdict.s) if verdict.trivial else None,
               "t": K.format(verdict.t) if verdict.trivial else None}
    return (0 if verdict.trivial else 1), [line], payload


def _cmd_witness_verify(args):
    doc = _load(args.file)
    names = args.names or list(doc.witnesses)
    if not names:
        raise InputError(f"no witnesses in {args.file}")
    objs = [_pick(doc.witnesses, nm, "witness", args.file) for nm in names]
    reports = _run_ordered([lambda w=w: verify_witness(w) for w in objs])
    return _report_results("witness verify", names, reports)


# --------------------------------------------------------------------------
# demos: rebuild a known result and re-verify it through public entry points
# --------------------------------------------------------------------------

def _cmd_demo_thm43(args):
    K = field_from_name(args.field)
    C = base_ring(K)
    vals = {nm: C.from_scalar(_scalar_flag(K, getattr(args, nm), nm))
            for nm in ("alpha", "beta", "gamma")}
    p = AbgParams(C, vals["alpha"], vals["beta"], vals["gamma"])
    lines = [f"bundle {p!r}"]
    verdict = abg_triviality_criterion(p)
    lines.append(f"criterion over {args.field}: {verdict.describe()}")
    chain = cleft_trivialization_witness(p)
    lines.append(f"witness chain with {len(chain)} link(s) down to (1, 0, 0):")
    for idx, (w, forward) in enumerate(chain.links):
        arrow = "forward" if forward else "reversed"
        lines.append(f"  link {idx} ({arrow}): {w.step!r}, "
                     f"family over {w.interval.ring!r}")
    start = abg_bundle(p)
    end = abg_bundle(AbgParams(C, C.one(), C.zero(), C.zero()))
    rep = verify_chain(chain, start=start, end=end)
    lines.extend(str(rep).splitlines())
    payload = {"command": "demo thm43", "field": args.field,
               "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma,
               "criterion_trivial": verdict.trivial,
               "links": len(chain), "ok": rep.ok, "report": rep.to_json()}
    return (0 if rep.ok else 1), lines, payload


def _cmd_demo_prop35(args):
    K = field_from_name(args.field)
    q = _scalar_flag(K, args.q, "q")
    A, w = kummer_trivialization_witness(args.order, q, K)
    lines = [f"cyclic bundle of order {args.order}, parameter {args.q}, "
             f"over {args.field}"]
    bundle_rep = verify_bundle(A)
    lines.extend(str(bundle_rep).splitlines())
    lines.append(f"self-trivializing step: {w.step!r}")
    witness_rep = verify_witness(w)
    lines.extend(str(witness_rep).splitlines())
    ok = bundle_rep.ok and witness_rep.ok
    payload = {"command": "demo prop35", "field": args.field,
               "order": args.order, "q": args.q, "ok": ok,
               "bundle": bundle_rep.to_json(), "witness": witness_rep.to_json()}
    return (0 if ok else 1), lines, payload


def _cmd_demo_census(args):
    K = field_from_name("F3")
    C = base_ring(K)
    rows, lines = [], ["triviality census over F3 (alpha a unit):"]
    for a in (1, 2):
        for b in range(3):
            for g in range(3):
                p = AbgParams(C, a, b, g)
                verdict = abg_triviality_criterion(p)
                found = search_trivialization(p) is not None
                agree = verdict.trivial == found
                rows.append({"alpha": a, "beta": b, "gamma": g,
                             "criterion": verdict.trivial, "search": found,
                             "agree": agree})
                word = "trivial" if verdict.trivial else "not trivial"
                mark = "agree" if agree else "DISAGREE"
                lines.append(f"  ({a}, {b}, {g}): criterion {word:11s} "
                             f"exhaustive search {'found an iso' if found else 'found none':14s} {mark}")
    ok = all(r["agree"] for r in rows)
    count = sum(1 for r in rows if r["criterion"])
    lines.append(f"{count} of {len(rows)} triples trivial; "
                 f"criterion and search {'agree on all' if ok else 'DISAGREE on some'}")
    payload = {"command": "demo census-f3", "ok": ok,
               "trivial_count": count, "rows": rows}
    return (0 if ok else 1), lines, payload


# --------------------------------------------------------------------------
# argument parsing and entry point
# --------------------------------------------------------------------------

def _abg_flags(parser):
    parser.add_argument("--alpha", required=True, help="unit scalar, e.g. 3 or 2/5")
    parser.add_argument("--beta", required=True)
    parser.add_argument("--gamma", required=True)
    parser.add_argument("--field", default="Q", help="Q or F<p> (default Q)")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="print one machine-readable verdict")

    parser = argparse.ArgumentParser(
        prog="hopfgal",
        description="verify Hopf algebras, principal bundles, cleavings, "
                    "and homotopy witnesses from JSON documents")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-hopf", parents=[common],
                       help="check every Hopf algebra axiom")
    p.add_argument("file")
    p.add_argument("names", nargs="+", metavar="name")
    p.set_defaults(handler=_cmd_verify_hopf)

    p = sub.add_parser("verify-bundle", parents=[common],
                       help="full principal bundle check")
    p.add_argument("file")
    p.add_argument("names", nargs="+", metavar="name")
    p.set_defaults(handler=_cmd_verify_bundle)

    p = sub.add_parser("galois", parents=[common],
                       help="bijectivity of the structure map, by determinant")
    p.add_argument("file")
    p.add_argument("names", nargs="+", metavar="name")
    p.set_defaults(handler=_cmd_galois)

    cleft = sub.add_parser("cleft", help="cleaving map commands")
    csub = cleft.add_subparsers(dest="action", required=True)
    for act, txt in (("check", "certify a cleaving map"),
                     ("invert", "print the convolution inverse")):
        p = csub.add_parser(act, parents=[common], help=txt)
        p.add_argument("file")
        p.add_argument("names", nargs="+", metavar="name")
        p.set_defaults(handler=_cmd_cleft)

    p = sub.add_parser("pushforward", parents=[common],
                       help="push a bundle along a base morphism")
    p.add_argument("file")
    p.add_argument("bundle")
    p.add_argument("morphism")
    p.set_defaults(handler=_cmd_pushforward)

    h4 = sub.add_parser("h4", help="rank-4 family commands")
    hsub = h4.add_subparsers(dest="action", required=True)
    p = hsub.add_parser("criterion", parents=[common],
                        help="decide isomorphism to (1, 0, 0) over a field")
    _abg_flags(p)
    p.set_defaults(handler=_cmd_h4_criterion)

    wit = sub.add_parser("witness", help="homotopy witness commands")
    wsub = wit.add_subparsers(dest="action", required=True)
    p = wsub.add_parser("verify", parents=[common],
                        help="re-certify stored witnesses")
    p.add_argument("file")
    p.add_argument("names", nargs="*", metavar="name",
                   help="default: every witness in the file")
    p.set_defaults(handler=_cmd_witness_verify)

    demo = sub.add_parser("demo", help="rebuild and re-verify known results")
    dsub = demo.add_subparsers(dest="what", required=True)
    p = dsub.add_parser("thm43", parents=[common],
                        help="trivializing witness chain for a cleft bundle")
    _abg_flags(p)
    p.set_defaults(handler=_cmd_demo_thm43)
    p = dsub.add_parser("prop35", parents=[common],
                        help="etale self-trivialization of a cyclic bundle")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--q", default="-1")
    p.add_argument("--field", default="Q")
    p.set_defaults(handler=_cmd_demo_prop35)
    p = dsub.add_parser("census-f3", parents=[common],
                        help="criterion versus exhaustive search, all 18 triples")
    p.set_defaults(handler=_cmd_demo_census)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        code, lines, payload = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
