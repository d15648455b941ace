"""Homotopy equivalence of bundles, witnessed by families over an interval.

Two bundles over the same central base count as equivalent when, after an
admissible extension of the base (a tower of root adjunctions), both appear
as endpoint fibres of a single bundle over the extension with a free
interval variable adjoined.  A witness packages the extension step, the
family, and one certifying matrix per endpoint; verification recomputes
every push-forward and re-certifies both matrices, trusting nothing stored.
Chains of witnesses compose the relation, and a reversed link runs its
family backwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (BaseMismatchError, CharTwoError, MathError,
                     NotCommutativeError, NotEtaleInclusionError,
                     RingMismatchError)
from .rings import (BaseMorphism, IntervalRing, adjoin_root, compose,
                    extend_with_t, fresh_name, identity_morphism,
                    inclusion_morphism)
from .report import Report
from .hopf import is_commutative_hopf
from .comod import (ComoduleAlgebra, check_iso, map_matrix_entries,
                    push_forward, trivial_bundle)
from .galois import verify_bundle
from .bundles import AbgParams, abg_bundle, kummer_root_data, sqrt_reduction

ROOT_ADJUNCTION = "root"


def identity_matrix(ring, n: int) -> list:
    one, zero = ring.one(), ring.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _frozen_matrix(M) -> tuple:
    return tuple(tuple(row) for row in M)


# --------------------------------------------------------------- base steps


@dataclass(frozen=True)
class EtaleStep:
    """An admissible extension of the base: a tower of root adjunctions.

    The recipe records each adjunction as (kind, value, degree, name), so
    the tower can be replayed, both to verify the step and to rebuild it
    over a different base.
    """

    morphism: BaseMorphism
    recipe: tuple = ()

    @property
    def source(self):
        return self.morphism.source

    @property
    def target(self):
        return self.morphism.target

    def __repr__(self):
        if not self.recipe:
            return f"<identity step on {self.source!r}>"
        adjs = ", ".join(f"{nm}^{n} = {u}" for _, u, n, nm in self.recipe)
        return f"<step adjoining {adjs}>"


def identity_step(ring) -> EtaleStep:
    return EtaleStep(identity_morphism(ring), ())


def root_step(ring, u, n: int, name: str | None = None):
    """Adjoin an n-th root of the unit u; returns (step, root)."""
    ext, incl, root = adjoin_root(ring, u, n, name)
    return EtaleStep(incl, ((ROOT_ADJUNCTION, u, n, ext.gens[-1].name),)), root


def compose_steps(first: EtaleStep, second: EtaleStep) -> EtaleStep:
    return EtaleStep(compose(first.morphism, second.morphism),
                     first.recipe + second.recipe)


def verify_step(step: EtaleStep) -> bool:
    """Replay the recipe from the source; it must reproduce the extension."""
    cur = step.source
    for entry in step.recipe:
        if len(entry) != 4 or entry[0] != ROOT_ADJUNCTION:
            return False
        _, u, n, nm = entry
        if getattr(u, "ring", None) != cur:
            return False
        try:
            cur, _, _ = adjoin_root(cur, u, n, nm)
        except (MathError, ValueError):
            return False
    if cur != step.target:
        return False
    return step.morphism == inclusion_morphism(step.source, step.target)


def transport_step(step: EtaleStep, f: BaseMorphism):
    """Replay the tower over the target of f; returns (step', fbar).

    fbar extends f to the tops of the two towers, and the square
    step'.morphism o f = fbar o step.morphism commutes on the nose.  That
    exact commutation is what lets transported witnesses be re-certified.
    """
    if f.source != step.source:
        raise BaseMismatchError("morphism must start at the step's source")
    if not verify_step(step):
        raise NotEtaleInclusionError("step recipe does not reproduce its extension")
    fbar = f
    recipe = []
    for _, u, n, nm in step.recipe:
        stage, _, _ = adjoin_root(fbar.source, u, n, nm)
        value = fbar(u)
        nm2 = fresh_name(fbar.target, nm)
        stage2, incl2, root2 = adjoin_root(fbar.target, value, n, nm2)
        images = {g.name: incl2(fbar(fbar.source.gen(g.name)))
                  for g in fbar.source.gens}
        images[nm] = root2
        fbar = BaseMorphism(stage, stage2, images)
        recipe.append((ROOT_ADJUNCTION, value, n, nm2))
    return EtaleStep(inclusion_morphism(f.target, fbar.target), tuple(recipe)), fbar


# ---------------------------------------------------------------- witnesses


@dataclass(frozen=True)
class HomotopyWitness:
    """A family over the interval with certified endpoint fibres.

    The two matrices identify the pushed-forward endpoint bundles with the
    fibres of the family at 0 and at 1; both live over the extension.
    """

    step: EtaleStep
    interval: IntervalRing
    family: ComoduleAlgebra
    at_zero: ComoduleAlgebra
    at_one: ComoduleAlgebra
    iso_zero: tuple
    iso_one: tuple


def verify_witness(w: HomotopyWitness, at_zero=None, at_one=None) -> Report:
    """Re-derive everything a witness claims; stored data is not trusted.

    Optional endpoint bundles override the stored ones, so a chain can ask
    a witness to connect the bundles the chain believes it connects.
    """
    A = at_zero if at_zero is not None else w.at_zero
    B = at_one if at_one is not None else w.at_one
    C = w.step.source
    if A.base != C or B.base != C:
        raise BaseMismatchError("endpoint bundles must live over the step's source")
    if A.hopf != B.hopf or A.hopf != w.family.hopf:
        raise BaseMismatchError("endpoints and family must share the coacting Hopf algebra")
    rep = Report("homotopy witness")
    rep.add("admissible extension step", verify_step(w.step))
    rep.add("interval ring over the extension",
            w.interval == extend_with_t(w.step.target))
    if not rep.ok:
        return rep
    if w.family.base != w.interval.ring:
        raise BaseMismatchError("family must live over the interval ring")
    fam = verify_bundle(w.family)
    fam.title = "family bundle"
    rep.nest(fam)
    left = verify_bundle(A)
    left.title = "endpoint bundle at 0"
    rep.nest(left)
    right = verify_bundle(B)
    right.title = "endpoint bundle at 1"
    rep.nest(right)
    ext = w.step.target
    pushed0 = push_forward(w.step.morphism, A)
    pushed1 = push_forward(w.step.morphism, B)
    fibre0 = push_forward(w.interval.at_zero, w.family)
    fibre1 = push_forward(w.interval.at_one, w.family)
    for label, M, src, dst in (("0", w.iso_zero, pushed0, fibre0),
                               ("1", w.iso_one, pushed1, fibre1)):
        over = all(getattr(e, "ring", None) == ext for row in M for e in row)
        rep.add(f"matrix at {label} over the extension", over)
        if over:
            sub = check_iso(src, dst, M)
            sub.title = f"endpoint fibre at {label}"
            rep.nest(sub)
    return rep


def reflexive_witness(A: ComoduleAlgebra) -> HomotopyWitness:
    """The constant family: every bundle is equivalent to itself."""
    idm = identity_morphism(A.base)
    inc = extend_with_t(A.base).include
    return morphism_homotopy_witness(idm, idm, identity_step(A.base), inc, A)


def transport_witness(f: BaseMorphism, w: HomotopyWitness) -> HomotopyWitness:
    """Push a witness along a change of the base; equivalence survives.

    The step is replayed over the new base, the family travels along the
    lift of f to the interval rings, and the endpoint matrices are mapped
    entrywise through the lift to the extension tops.
    """
    step2, fbar = transport_step(w.step, f)
    interval2 = extend_with_t(step2.target)
    lift = {g.name: interval2.include(fbar(w.step.target.gen(g.name)))
            for g in w.step.target.gens}
    lift[w.interval.t_name] = interval2.t
    fbar_t = BaseMorphism(w.interval.ring, interval2.ring, lift)
    return HomotopyWitness(
        step2, interval2,
        push_forward(fbar_t, w.family),
        push_forward(f, w.at_zero),
        push_forward(f, w.at_one),
        _frozen_matrix(map_matrix_entries(fbar, w.iso_zero)),
        _frozen_matrix(map_matrix_entries(fbar, w.iso_one)))


# ------------------------------------------------------------------- chains


def _link_ends(link):
    w, forward = link
    return (w.at_zero, w.at_one) if forward else (w.at_one, w.at_zero)


@dataclass(frozen=True)
class WitnessChain:
    """Witnesses laid end to end; links are (witness, forward) pairs.

    A backward link contributes its family run from 1 to 0, which is how a
    single witness already yields a symmetric relation.
    """

    links: tuple

    def __post_init__(self):
        if not self.links:
            raise ValueError("a chain needs at least one link")
        for a, b in zip(self.links, self.links[1:]):
            if _link_ends(a)[1] != _link_ends(b)[0]:
                raise BaseMismatchError("adjacent links must share an endpoint bundle")

    @property
    def start(self):
        return _link_ends(self.links[0])[0]

    @property
    def end(self):
        return _link_ends(self.links[-1])[1]

    def reverse(self) -> "WitnessChain":
        return WitnessChain(tuple((w, not fwd) for w, fwd in reversed(self.links)))

    def then(self, other: "WitnessChain") -> "WitnessChain":
        return WitnessChain(self.links + other.links)

    def __len__(self):
        return len(self.links)


def verify_chain(chain: WitnessChain, start=None, end=None) -> Report:
    rep = Report("homotopy equivalence chain")
    if start is not None:
        rep.add("chain starts at the given bundle", chain.start == start)
    if end is not None:
        rep.add("chain ends at the given bundle", chain.end == end)
    for idx, (w, forward) in enumerate(chain.links):
        sub = verify_witness(w)
        sub.title = f"link {idx}" + ("" if forward else " (reversed)")
        rep.nest(sub)
    return rep


# ------------------------------------------------- homotopies of morphisms


def verify_morphism_homotopy(f: BaseMorphism, g: BaseMorphism,
                             step: EtaleStep, path: BaseMorphism) -> Report:
    """Check that the path interpolates the two morphisms after extension.

    Evaluating the path at 0 must recover the first morphism composed into
    the extension, and at 1 the second; generators suffice.
    """
    if f.source != g.source or f.target != g.target:
        raise RingMismatchError("the two morphisms must share source and target")
    if step.source != f.target:
        raise BaseMismatchError("step must extend the morphisms' target")
    interval = extend_with_t(step.target)
    if path.source != f.source or path.target != interval.ring:
        raise RingMismatchError("path must map the source into the interval ring")
    i = step.morphism
    rep = Report("morphism homotopy")
    if not f.source.gens:
        rep.add("endpoints on the ground field", True)
    for gen in f.source.gens:
        x = f.source.gen(gen.name)
        p = path(x)
        rep.add(f"endpoint 0 on {gen.name}", interval.at_zero(p) == i(f(x)),
                "path does not start at the first morphism")
        rep.add(f"endpoint 1 on {gen.name}", interval.at_one(p) == i(g(x)),
                "path does not end at the second morphism")
    return rep


def morphism_homotopy_witness(f: BaseMorphism, g: BaseMorphism,
                              step: EtaleStep, path: BaseMorphism,
                              A: ComoduleAlgebra) -> HomotopyWitness:
    """Push-forwards along homotopic morphisms are equivalent bundles.

    The family is the push-forward along the path itself; both endpoint
    matrices are identities because evaluation commutes with push-forward
    on the nose.
    """
    rep = verify_morphism_homotopy(f, g, step, path)
    if not rep.ok:
        raise MathError("; ".join(rep.failures()))
    if A.base != f.source:
        raise BaseMismatchError("bundle must live over the morphisms' source")
    interval = extend_with_t(step.target)
    ident = _frozen_matrix(identity_matrix(step.target, A.dim))
    return HomotopyWitness(step, interval,
                           push_forward(path, A),
                           push_forward(f, A),
                           push_forward(g, A),
                           ident, ident)


def grading_witness(A: ComoduleAlgebra) -> HomotopyWitness:
    """Contract the positive-degree part of a graded base onto degree zero.

    A generator of degree i travels along t^i: at 1 this is the identity,
    at 0 it is projection onto degree zero followed by inclusion, so the
    bundle is carried onto its degree-zero restriction without any base
    extension.  A base with no positive degrees yields the reflexive
    witness.
    """
    C = A.base
    interval = extend_with_t(C)
    t = interval.t
    path_images, proj_images = {}, {}
    for g in C.gens:
        lifted = interval.ring.gen(g.name)
        path_images[g.name] = (t ** g.grade) * lifted if g.grade else lifted
        proj_images[g.name] = C.gen(g.name) if g.grade == 0 else C.zero()
    path = BaseMorphism(C, interval.ring, path_images)
    proj = BaseMorphism(C, C, proj_images)
    return morphism_homotopy_witness(proj, identity_morphism(C),
                                     identity_step(C), path, A)


# ------------------------------------------------ trivialization pipelines


def cleft_trivialization_witness(p: AbgParams) -> WitnessChain:
    """One-link chain from the four-parameter bundle to the untwisted one.

    A square root s of the leading parameter is adjoined (no extension when
    it is already 1), the rescaling onto (1, b, g/s) provides the matrix at
    the 1 end, and the straight-line family (1, t*b, t*g/s) walks that
    endpoint down to (1, 0, 0).  The chain runs backwards through the
    family, from the original bundle to the one with all parameters off.
    """
    C = p.base
    if C.field.characteristic() == 2:
        raise CharTwoError("a square root of the leading parameter needs 2 invertible")
    if p.alpha == C.one():
        step, s = identity_step(C), C.one()
    else:
        step, s = root_step(C, p.alpha, 2, fresh_name(C, "s"))
    i = step.morphism
    ext = step.target
    red = sqrt_reduction(AbgParams(ext, i(p.alpha), i(p.beta), i(p.gamma)), s)
    interval = extend_with_t(ext)
    t, inc = interval.t, interval.include
    family = abg_bundle(AbgParams(interval.ring, interval.ring.one(),
                                  t * inc(red.target.beta),
                                  t * inc(red.target.gamma)))
    w = HomotopyWitness(step, interval, family,
                        abg_bundle(AbgParams(C, C.one(), C.zero(), C.zero())),
                        abg_bundle(p),
                        _frozen_matrix(identity_matrix(ext, 4)),
                        _frozen_matrix(red.matrix))
    return WitnessChain(((w, False),))


def etale_trivialization_witness(A: ComoduleAlgebra, step: EtaleStep,
                                 images) -> HomotopyWitness:
    """A commutative bundle trivializes over its own total algebra.

    The images realize the module basis inside the extension; the matrix
    whose columns are the realized coaction legs then identifies the pushed
    bundle with the product bundle of the coacting Hopf algebra, and the
    family is constant.
    """
    n = A.dim
    for a in range(n):
        for b in range(a):
            left = A.mul_vec(A.basis_vec(a), A.basis_vec(b))
            if left != A.mul_vec(A.basis_vec(b), A.basis_vec(a)):
                raise NotCommutativeError(
                    f"total algebra is not commutative on {A.labels[a]}, {A.labels[b]}")
    if not is_commutative_hopf(A.hopf):
        raise NotCommutativeError("coacting Hopf algebra is not commutative")
    if step.source != A.base:
        raise BaseMismatchError("step must extend the bundle's base")
    if not verify_step(step):
        raise NotEtaleInclusionError("step recipe does not reproduce its extension")
    ext, incl = step.target, step.morphism
    if len(images) != n or any(getattr(x, "ring", None) != ext for x in images):
        raise NotEtaleInclusionError("need one extension element per module basis vector")

    def realize(vec):
        out = ext.zero()
        for idx, c in vec.items():
            out = out + incl(c) * images[idx]
        return out

    if realize(A.unit) != ext.one():
        raise NotEtaleInclusionError("images do not realize the unit")
    for a in range(n):
        for b in range(n):
            want = realize(A.mul_vec(A.basis_vec(a), A.basis_vec(b)))
            if images[a] * images[b] != want:
                raise NotEtaleInclusionError(
                    f"images break the product on {A.labels[a]}, {A.labels[b]}")
    d = A.hopf.dim
    M = [[ext.zero() for _ in range(n)] for _ in range(d)]
    for j in range(n):
        for (jj, k), c in A.coaction[j].items():
            M[k][j] = M[k][j] + incl(c) * images[jj]
    interval = extend_with_t(ext)
    return HomotopyWitness(step, interval,
                           trivial_bundle(interval.ring, A.hopf),
                           A,
                           trivial_bundle(A.base, A.hopf),
                           _frozen_matrix(M),
                           _frozen_matrix(identity_matrix(ext, d)))


def kummer_trivialization_witness(N: int, q, k):
    """The cyclotomic circle bundle trivialized over its own total algebra.

    Returns (bundle, witness): the root of the coordinate realizes the
    module basis, so the bundle's total algebra is itself the admissible
    extension that splits it.
    """
    A, _, incl, images = kummer_root_data(N, q, k)
    step = EtaleStep(incl, ((ROOT_ADJUNCTION, A.base.gen("z"), N, "w"),))
    return A, etale_trivialization_witness(A, step, images)
