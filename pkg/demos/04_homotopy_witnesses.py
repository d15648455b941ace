"""Homotopy equivalence made checkable: families over an interval.

Two bundles over C are homotopy equivalent when, after an admissible
extension of the base, a bundle over the extension-with-t restricts at
t = 0 and t = 1 to the two push-forwards.  Witnesses carry the whole
configuration and re-verify from scratch.

Run:  python3 demos/04_homotopy_witnesses.py
"""

from hopfgal import (
    AbgParams,
    QQ,
    abg_bundle,
    abg_triviality_criterion,
    base_ring,
    cleft_trivialization_witness,
    grading_witness,
    kummer_trivialization_witness,
    verify_chain,
    verify_witness,
)

C = base_ring(QQ)

print("== every cleft rank-4 bundle contracts onto the untwisted one ==")
p = AbgParams(C, 3, 5, 7)
print(f"bundle {p!r}")
print("criterion over Q:", abg_triviality_criterion(p).describe())
chain = cleft_trivialization_witness(p)
for idx, (w, forward) in enumerate(chain.links):
    print(f"link {idx} ({'forward' if forward else 'reversed'}): {w.step!r}")
rep = verify_chain(chain, start=abg_bundle(p),
                   end=abg_bundle(AbgParams(C, 1, 0, 0)))
print("chain verdict:", "ok" if rep.ok else "FAILED")
assert rep.ok
print("so the bundle is trivial up to homotopy even though it is not")
print("isomorphic to the untwisted bundle over Q itself")
print()

print("== commutative cyclic bundles trivialize after adjoining the root ==")
for N, q, K in ((2, QQ.from_int(-1), QQ),):
    A, w = kummer_trivialization_witness(N, q, K)
    print(f"order-{N} bundle over {A.base!r}, step {w.step!r}")
    rep = verify_witness(w)
    print("witness verdict:", "ok" if rep.ok else "FAILED")
    assert rep.ok
print()

print("== the grading contraction ==")
Cg = base_ring(QQ).add_free("x", grade=1)
x = Cg.gen("x")
Ag = abg_bundle(AbgParams(Cg, Cg.from_int(2), x, x * x))
w = grading_witness(Ag)
rep = verify_witness(w)
print(f"family over {w.interval.ring!r} joins the bundle to its degree-0 part")
print("witness verdict:", "ok" if rep.ok else "FAILED")
assert rep.ok
