"""Cleaving maps, cocycles, and twisted products.

A cleft bundle is one admitting a convolution-invertible comodule map
gamma from the coacting Hopf algebra into the total algebra.  From such a
map two pieces of data fall out: a quasi-action of H on the base and a
cocycle sigma(g, h) = sum gamma(g_(1)) gamma(h_(1)) gamma'(g_(2) h_(2)).
With central base the quasi-action must be trivial and sigma must take
values in the base; the bundle is then recovered as a twisted product of
the base with H.

Cocycle validity is certified by directly checking unitality and
associativity of the constructed product on all basis triples rather than
through abstract cocycle identities; at the ranks handled here the direct
check is cheap and leaves nothing implicit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .comod import (
    ComoduleAlgebra,
    HModuleMap,
    _clean,
    _vadd,
    convolution_invert,
    convolve,
    trivial_bundle,
    unit_counit_map,
)
from .errors import (
    BadNormalizationError,
    DimensionMismatchError,
    NonCentralDatumError,
    NotAssociativeError,
    NotComoduleMapError,
    RingMismatchError,
)
from .hopf import HopfAlgebra
from .report import Report
from .rings import BaseElement, BaseMorphism, BaseRing


def central_coefficient(A: ComoduleAlgebra, vec: dict):
    """The c in C with vec = c * unit, or None if vec is not central."""
    C = A.base
    pivot = None
    for i, u in A.unit.items():
        inv = C.try_inverse(u)
        if inv is not None:
            pivot = (i, inv)
            break
    if pivot is None:
        return None
    i0, uinv = pivot
    c = vec.get(i0, C.zero()) * uinv
    expect = _clean({i: c * u for i, u in A.unit.items()})
    return c if _clean(dict(vec)) == expect else None


@dataclass(frozen=True)
class CleavingMap:
    """A convolution-invertible comodule map H -> A with stored inverse."""

    algebra: ComoduleAlgebra
    gamma: HModuleMap
    gamma_inv: HModuleMap

    def verify(self) -> Report:
        rep = Report("cleaving map")
        A, H = self.algebra, self.algebra.hopf
        bad = _comodule_map_witness(A, self.gamma)
        rep.add("comodule morphism", bad is None,
                "" if bad is None else f"fails on {H.labels[bad]}")
        e = unit_counit_map(A)
        rep.add("right convolution inverse", convolve(self.gamma, self.gamma_inv) == e)
        rep.add("left convolution inverse", convolve(self.gamma_inv, self.gamma) == e)
        return rep


def _comodule_map_witness(A: ComoduleAlgebra, gamma: HModuleMap):
    """Index of the first basis element where rho(gamma(h)) != (gamma (x) id)(Delta h)."""
    H = A.hopf
    for k in range(H.dim):
        lhs = A.coact_vec(gamma.values[k])
        rhs: dict = {}
        for (i, j), c in H.comult.get(k, {}).items():
            lifted = A.lift(c)
            for p, m in gamma.values[i].items():
                _vadd(rhs, (p, j), lifted * m)
        if lhs != rhs:
            return k
    return None


def check_cleaving(A: ComoduleAlgebra, gamma: HModuleMap) -> CleavingMap:
    """Certify gamma as a cleaving map of A.

    Verifies the comodule-morphism identity on every Hopf basis element
    (NotComoduleMap with the failing element as witness), then computes and
    verifies a two-sided convolution inverse (NotInvertible on failure).
    """
    if gamma.algebra != A:
        raise RingMismatchError("cleaving candidate is a map into a different algebra")
    bad = _comodule_map_witness(A, gamma)
    if bad is not None:
        raise NotComoduleMapError(
            f"coaction does not intertwine on {A.hopf.labels[bad]}")
    return CleavingMap(A, gamma, convolution_invert(gamma))


# --------------------------------------------------------------------------
# cocycle extraction
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    """sigma: H (x) H -> C on basis pairs; sigma[a][b] = sigma(h_a, h_b)."""

    base: BaseRing
    hopf: HopfAlgebra
    sigma: tuple  # d x d tuple of tuples of BaseElements

    def __post_init__(self):
        d = self.hopf.dim
        if len(self.sigma) != d or any(len(row) != d for row in self.sigma):
            raise DimensionMismatchError("cocycle table must be square of the Hopf dimension")

    def value(self, g: dict, h: dict) -> BaseElement:
        """sigma on arbitrary H-elements, extended bilinearly."""
        K = self.hopf.field
        acc = self.base.zero()
        for a, ca in g.items():
            for b, cb in h.items():
                acc = acc + self.base.from_scalar(K.mul(ca, cb)) * self.sigma[a][b]
        return acc

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        return (self.base == other.base and self.hopf == other.hopf
                and all(x == y for r1, r2 in zip(self.sigma, other.sigma)
                        for x, y in zip(r1, r2)))

    def __hash__(self):
        return hash((self.base, self.hopf.labels))


def trivial_cocycle(base: BaseRing, H: HopfAlgebra) -> Cocycle:
    """sigma(g, h) = counit(g) counit(h) 1, the untwisted case."""
    K = H.field
    d = H.dim
    sigma = tuple(tuple(base.from_scalar(K.mul(H.counit.get(a, K.zero()),
                                               H.counit.get(b, K.zero())))
                        for b in range(d)) for a in range(d))
    return Cocycle(base, H, sigma)


def quasi_action(cm: CleavingMap, k: int, c: BaseElement) -> dict:
    """h_k . c = sum gamma(h_(1)) (c 1_A) gamma'(h_(2)), as an element of A."""
    A = cm.algebra
    H = A.hopf
    c_vec = {i: c * u for i, u in A.unit.items()}
    out: dict = {}
    for (i, j), w in H.comult.get(k, {}).items():
        term = A.mul_vec(A.mul_vec(cm.gamma.values[i], c_vec), cm.gamma_inv.values[j])
        lifted = A.lift(w)
        for l, m in term.items():
            _vadd(out, l, lifted * m)
    return out


def extract_cocycle(cm: CleavingMap) -> Cocycle:
    """The cocycle of a cleaving map on a bundle with central base.

    First certifies that the quasi-action is trivial (h . c = counit(h) c on
    the unit and every base generator), then evaluates sigma on all basis
    pairs and certifies each value lands in C * 1_A.  NonCentralDatum if
    either fails: the input did not come from a central extension.
    """
    A = cm.algebra
    C, H, K = A.base, A.hopf, A.field
    probes = [C.one()] + [C.gen(g.name) for g in C.gens]
    for k in range(H.dim):
        eps = H.counit.get(k, K.zero())
        for c in probes:
            got = quasi_action(cm, k, c)
            want = _clean({i: A.lift(eps) * c * u for i, u in A.unit.items()})
            if got != want:
                raise NonCentralDatumError(
                    f"quasi-action of {H.labels[k]} moves the base element "
                    f"{C.format_element(c)}")
    d = H.dim
    hopf_products = {}
    for a2 in range(d):
        for b2 in range(d):
            hopf_products[(a2, b2)] = H.mul_vec(H.basis_vec(a2), H.basis_vec(b2))
    rows = []
    for a in range(d):
        row = []
        for b in range(d):
            acc: dict = {}
            for (a1, a2), ca in H.comult.get(a, {}).items():
                for (b1, b2), cb in H.comult.get(b, {}).items():
                    val = A.mul_vec(
                        A.mul_vec(cm.gamma.values[a1], cm.gamma.values[b1]),
                        cm.gamma_inv.apply(hopf_products[(a2, b2)]))
                    lifted = A.lift(K.mul(ca, cb))
                    for l, m in val.items():
                        _vadd(acc, l, lifted * m)
            c = central_coefficient(A, acc)
            if c is None:
                raise NonCentralDatumError(
                    f"sigma({H.labels[a]}, {H.labels[b]}) does not lie in the base")
            row.append(c)
        rows.append(tuple(row))
    return Cocycle(C, H, tuple(rows))


def push_cocycle(f: BaseMorphism, sigma: Cocycle) -> Cocycle:
    if f.source != sigma.base:
        raise RingMismatchError("morphism source does not match the cocycle's base")
    return Cocycle(f.target, sigma.hopf,
                   tuple(tuple(f.apply(c) for c in row) for row in sigma.sigma))


# --------------------------------------------------------------------------
# twisted and crossed products
# --------------------------------------------------------------------------

def _check_normalization(sigma: Cocycle) -> None:
    C, H, K = sigma.base, sigma.hopf, sigma.hopf.field
    d = H.dim
    for b in range(d):
        eps = C.from_scalar(H.counit.get(b, K.zero()))
        left = C.zero()
        right = C.zero()
        for a, u in H.unit.items():
            lifted = C.from_scalar(u)
            left = left + lifted * sigma.sigma[a][b]
            right = right + lifted * sigma.sigma[b][a]
        if left != eps:
            raise BadNormalizationError(
                f"sigma(1, {H.labels[b]}) != counit({H.labels[b]}) 1")
        if right != eps:
            raise BadNormalizationError(
                f"sigma({H.labels[b]}, 1) != counit({H.labels[b]}) 1")


def twisted_product(base: BaseRing, H: HopfAlgebra, sigma: Cocycle) -> ComoduleAlgebra:
    """C tensor H with product twisted by sigma, coaction id (x) Delta.

    (c (x) g)(d (x) h) = sum c d sigma(g_(1), h_(1)) (x) g_(2) h_(2)

    Normalization of sigma is checked first (BadNormalization), then the
    result is screened for unitality and associativity on all basis triples
    (NotAssociative); what survives is a genuine comodule algebra.
    """
    if sigma.base != base or sigma.hopf != H:
        raise RingMismatchError("cocycle was built over different data")
    if base.field != H.field:
        raise RingMismatchError("base ring and Hopf algebra use different ground fields")
    _check_normalization(sigma)
    K = H.field
    d = H.dim
    mult = {}
    for a in range(d):
        for b in range(d):
            out: dict = {}
            for (a1, a2), ca in H.comult.get(a, {}).items():
                for (b1, b2), cb in H.comult.get(b, {}).items():
                    s = sigma.sigma[a1][b1]
                    if s.is_zero:
                        continue
                    w = K.mul(ca, cb)
                    prod = H.mult.get((a2, b2), {})
                    for l, m in prod.items():
                        _vadd(out, l, base.from_scalar(K.mul(w, m)) * s)
            mult[(a, b)] = out
    unit = {i: base.from_scalar(c) for i, c in H.unit.items()}
    coaction = {i: {jk: base.from_scalar(c) for jk, c in t.items()}
                for i, t in H.comult.items()}
    A = ComoduleAlgebra(base, H, H.labels, mult, unit, coaction)
    for i in range(d):
        e = A.basis_vec(i)
        if A.mul_vec(A.unit, e) != e or A.mul_vec(e, A.unit) != e:
            raise NotAssociativeError(
                f"twisted product is not unital on {H.labels[i]}")
    for i in range(d):
        for j in range(d):
            ij = A.mul_vec(A.basis_vec(i), A.basis_vec(j))
            for l in range(d):
                left = A.mul_vec(ij, A.basis_vec(l))
                right = A.mul_vec(A.basis_vec(i), A.mul_vec(A.basis_vec(j), A.basis_vec(l)))
                if left != right:
                    raise NotAssociativeError(
                        "twisted product fails associativity on "
                        f"({H.labels[i]}, {H.labels[j]}, {H.labels[l]})")
    return A


def crossed_multiply(base: BaseRing, H: HopfAlgebra, action, sigma: Cocycle,
                     x: tuple, y: tuple) -> dict:
    """Product of simple tensors in the general crossed product.

    x = (c, g-vec), y = (d, h-vec); returns the coordinates (H-index to
    C-element) of (c (x) g)(d (x) h) with the three-fold comultiplication:

        sum c (g_(1) . d) sigma(g_(2), h_(1)) (x) g_(3) h_(2)

    action(k, d) must return the base element h_k . d.  Only the trivial
    action yields central extensions; this entry point exists so the general
    formula can be exercised directly.
    """
    K = H.field
    c, g = x
    dd, h = y
    out: dict = {}
    for a, cg in g.items():
        # Delta^2(h_a) as (r, s, q) components
        for (p, q), w1 in H.comult.get(a, {}).items():
            for (r, s), w2 in H.comult.get(p, {}).items():
                w_a = K.mul(cg, K.mul(w1, w2))
                acted = c * action(r, dd)
                for b, ch in h.items():
                    for (b1, b2), wb in H.comult.get(b, {}).items():
                        coeff = acted * sigma.sigma[s][b1]
                        w = base.from_scalar(K.mul(w_a, K.mul(ch, wb)))
                        for l, m in H.mult.get((q, b2), {}).items():
                            _vadd(out, l, w * coeff * base.from_scalar(m))
    return out


def trivial_action(base: BaseRing, H: HopfAlgebra):
    """h . c = counit(h) c, the only action compatible with central bases."""
    K = H.field

    def act(k: int, c: BaseElement) -> BaseElement:
        return base.from_scalar(H.counit.get(k, K.zero())) * c

    return act


def crossed_product(base: BaseRing, H: HopfAlgebra, action, sigma: Cocycle) -> ComoduleAlgebra:
    """Crossed product with an explicit action; the action must be trivial.

    A nontrivial action would place the base outside the centre, leaving the
    structure-constant representation unable to express the product; such
    input is rejected (NonCentralDatum).  With the trivial action this is
    exactly the twisted product.
    """
    K = H.field
    probes = [base.one()] + [base.gen(g.name) for g in base.gens]
    for k in range(H.dim):
        eps = base.from_scalar(H.counit.get(k, K.zero()))
        for c in probes:
            if action(k, c) != eps * c:
                raise NonCentralDatumError(
                    f"action of {H.labels[k]} moves {base.format_element(c)}: "
                    "base would not be central")
    return twisted_product(base, H, sigma)


def cleaving_of_twisted_product(A: ComoduleAlgebra) -> CleavingMap:
    """gamma(h) = 1 (x) h on a product-type bundle whose basis is the H basis."""
    gamma = HModuleMap(A, tuple(A.basis_vec(k) for k in range(A.hopf.dim)))
    return check_cleaving(A, gamma)


def untwisted_is_trivial(base: BaseRing, H: HopfAlgebra) -> bool:
    return twisted_product(base, H, trivial_cocycle(base, H)) == trivial_bundle(base, H)
