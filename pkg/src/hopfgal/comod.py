"""Comodule algebras over a central coinvariant base ring.

An object here is an algebra A, free of finite rank as a module over a
commutative base ring C, together with a coaction of a Hopf algebra H.
Multiplication and coaction are stored as structure constants with
coefficients in C:

* ``mult[(i, j)]``  -- coordinates of a_i * a_j (dict index -> C-element)
* ``unit``          -- coordinates of 1_A
* ``coaction[i]``   -- coordinates of rho(a_i) in A (x) H (dict (j, k) -> C)

C sits inside A as C * 1_A; because all structure constants live in the
commutative ring C, centrality of the base is built into the representation.
Whether C is exactly the coinvariant subalgebra is a theorem to check, not
an assumption: see ``coinvariants_over_field`` and the canonical-map test in
the Galois module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BaseNotFieldError,
    DimensionMismatchError,
    NotComoduleMapError,
    NotInvertibleError,
    RingMismatchError,
)
from .hopf import HopfAlgebra
from .linalg import field_kernel, ring_det, ring_solve
from .report import Report
from .rings import BaseElement, BaseMorphism, BaseRing


def _vadd(out: dict, key, val) -> None:
    s = out.get(key)
    s = val if s is None else s + val
    if s.is_zero:
        out.pop(key, None)
    else:
        out[key] = s


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if not v.is_zero}


@dataclass(frozen=True)
class ComoduleAlgebra:
    base: BaseRing
    hopf: HopfAlgebra
    labels: tuple
    mult: dict
    unit: dict
    coaction: dict

    def __post_init__(self):
        if self.base.field != self.hopf.field:
            raise RingMismatchError(
                "base ring and Hopf algebra use different ground fields")
        n, d = self.dim, self.hopf.dim
        for (i, j) in self.mult:
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatchError("multiplication index out of range")
        for i, t in self.coaction.items():
            if not 0 <= i < n:
                raise DimensionMismatchError("coaction index out of range")
            for (j, k) in t:
                if not (0 <= j < n and 0 <= k < d):
                    raise DimensionMismatchError("coaction tensor index out of range")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def field(self):
        return self.base.field

    # ------------------------------------------------------ module vectors

    def basis_vec(self, i: int) -> dict:
        return {i: self.base.one()}

    def lift(self, c) -> BaseElement:
        """Coerce a ground-field scalar into the base ring."""
        return self.base.from_scalar(c)

    def mul_vec(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, ca in a.items():
            for j, cb in b.items():
                sc = self.mult.get((i, j))
                if not sc:
                    continue
                c = ca * cb
                for l, m in sc.items():
                    _vadd(out, l, c * m)
        return out

    def coact_vec(self, a: dict) -> dict:
        out: dict = {}
        for i, c in a.items():
            for jk, m in self.coaction.get(i, {}).items():
                _vadd(out, jk, c * m)
        return out

    def tensor_mul(self, A: dict, B: dict) -> dict:
        """Product in A (x) H of tensors {(i, k): C-element}."""
        out: dict = {}
        for (i, k), ca in A.items():
            for (j, l), cb in B.items():
                am = self.mult.get((i, j))
                hm = self.hopf.mult.get((k, l))
                if not am or not hm:
                    continue
                c = ca * cb
                for p, cp in am.items():
                    for q, cq in hm.items():
                        _vadd(out, (p, q), c * cp * self.lift(cq))
        return out

    def unit_tensor(self) -> dict:
        out: dict = {}
        for i, c in self.unit.items():
            for k, u in self.hopf.unit.items():
                _vadd(out, (i, k), c * self.lift(u))
        return out

    def _normal(self):
        mult = {ij: _clean(v) for ij, v in self.mult.items()}
        mult = {ij: v for ij, v in mult.items() if v}
        co = {i: _clean(t) for i, t in self.coaction.items()}
        co = {i: t for i, t in co.items() if t}
        return (mult, _clean(self.unit), co)

    def __eq__(self, other):
        if not isinstance(other, ComoduleAlgebra):
            return NotImplemented
        return (self.base == other.base and self.hopf == other.hopf
                and self.labels == other.labels
                and self._normal() == other._normal())

    def __hash__(self):
        return hash((self.base, self.hopf, self.labels))

    def __repr__(self):
        return (f"<ComoduleAlgebra rank {self.dim} over {self.base!r} "
                f"with {self.hopf.dim}-dim Hopf coaction>")


# --------------------------------------------------------------------------
# axiom verification
# --------------------------------------------------------------------------

def verify_comodule_algebra(A: ComoduleAlgebra) -> Report:
    rep = Report(f"comodule algebra (rank {A.dim} over {A.base!r})")
    n = A.dim

    ok = True
    for i in range(n):
        e = A.basis_vec(i)
        if A.mul_vec(A.unit, e) != e or A.mul_vec(e, A.unit) != e:
            ok = rep.add("unit", False, f"fails on {A.labels[i]}")
            break
    if ok:
        rep.add("unit", True)

    ok = True
    for i in range(n):
        for j in range(n):
            ij = A.mul_vec(A.basis_vec(i), A.basis_vec(j))
            for l in range(n):
                left = A.mul_vec(ij, A.basis_vec(l))
                right = A.mul_vec(A.basis_vec(i), A.mul_vec(A.basis_vec(j), A.basis_vec(l)))
                if left != right:
                    ok = rep.add("associativity", False,
                                 f"({A.labels[i]}*{A.labels[j]})*{A.labels[l]}")
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        rep.add("associativity", True)

    K = A.field
    H = A.hopf
    ok = True
    for i in range(n):
        t = A.coact_vec(A.basis_vec(i))
        back: dict = {}
        for (j, k), c in t.items():
            eps = H.counit.get(k, K.zero())
            if not K.is_zero(eps):
                _vadd(back, j, c * A.lift(eps))
        if back != A.basis_vec(i):
            ok = rep.add("coaction counit", False, f"fails on {A.labels[i]}")
            break
    if ok:
        rep.add("coaction counit", True)

    ok = True
    for i in range(n):
        t = A.coact_vec(A.basis_vec(i))
        lhs: dict = {}
        rhs: dict = {}
        for (j, k), c in t.items():
            for (p, q), c2 in A.coaction.get(j, {}).items():
                _vadd(lhs, (p, q, k), c * c2)
            for (a, b), c2 in H.comult.get(k, {}).items():
                _vadd(rhs, (j, a, b), c * A.lift(c2))
        if lhs != rhs:
            ok = rep.add("coaction coassociativity", False, f"fails on {A.labels[i]}")
            break
    if ok:
        rep.add("coaction coassociativity", True)

    ok = True
    if A.coact_vec(A.unit) != A.unit_tensor():
        ok = rep.add("coaction respects product", False, "rho(1) != 1 (x) 1")
    if ok:
        for i in range(n):
            for j in range(n):
                prod = A.mul_vec(A.basis_vec(i), A.basis_vec(j))
                lhs = A.coact_vec(prod)
                rhs = A.tensor_mul(A.coact_vec(A.basis_vec(i)), A.coact_vec(A.basis_vec(j)))
                if lhs != rhs:
                    ok = rep.add("coaction respects product", False,
                                 f"rho({A.labels[i]}*{A.labels[j]})")
                    break
            if not ok:
                break
    if ok:
        rep.add("coaction respects product", True)

    return rep


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def trivial_bundle(base: BaseRing, H: HopfAlgebra) -> ComoduleAlgebra:
    """C (x) H with componentwise product and coaction id (x) Delta."""
    if base.field != H.field:
        raise RingMismatchError("base ring and Hopf algebra use different ground fields")
    lift = base.from_scalar
    mult = {ij: {l: lift(c) for l, c in sc.items()} for ij, sc in H.mult.items()}
    unit = {i: lift(c) for i, c in H.unit.items()}
    coaction = {i: {jk: lift(c) for jk, c in t.items()} for i, t in H.comult.items()}
    return ComoduleAlgebra(base, H, H.labels, mult, unit, coaction)


def push_forward(f: BaseMorphism, A: ComoduleAlgebra) -> ComoduleAlgebra:
    """Base change along f: same structure constants with f applied entrywise."""
    if f.source != A.base:
        raise RingMismatchError("morphism source does not match the bundle's base ring")
    mult = {ij: _clean({l: f.apply(c) for l, c in sc.items()})
            for ij, sc in A.mult.items()}
    unit = _clean({i: f.apply(c) for i, c in A.unit.items()})
    coaction = {i: _clean({jk: f.apply(c) for jk, c in t.items()})
                for i, t in A.coaction.items()}
    return ComoduleAlgebra(f.target, A.hopf, A.labels, mult, unit, coaction)


def coinvariants_over_field(A: ComoduleAlgebra) -> list:
    """Basis of the coinvariant subspace {v : rho(v) = v (x) 1}.

    Only meaningful when the base ring is the ground field itself; a bundle
    has coinvariants spanned by the unit alone.
    """
    if not A.base.is_field:
        raise BaseNotFieldError(
            "coinvariant computation needs the base ring to be the ground field")
    K = A.field
    n, d = A.dim, A.hopf.dim
    rows = []
    for j in range(n):
        for k in range(d):
            row = []
            for i in range(n):
                c = A.coaction.get(i, {}).get((j, k))
                val = K.zero() if c is None else c.constant_scalar()
                if i == j:
                    val = K.sub(val, A.hopf.unit.get(k, K.zero()))
                row.append(val)
            rows.append(row)
    return field_kernel(rows, K, n)


# --------------------------------------------------------------------------
# algebra maps between comodule algebras
# --------------------------------------------------------------------------

def apply_matrix(M: list, v: dict) -> dict:
    """phi(a_j) = sum_i M[i][j] b_i applied to a coordinate vector."""
    out: dict = {}
    for j, c in v.items():
        for i, m in enumerate(row[j] for row in M):
            if m.is_zero:
                continue
            _vadd(out, i, c * m)
    return out


def apply_matrix_left(M: list, t: dict) -> dict:
    """phi (x) id on an A (x) H tensor."""
    out: dict = {}
    for (j, k), c in t.items():
        for i, row in enumerate(M):
            m = row[j]
            if m.is_zero:
                continue
            _vadd(out, (i, k), c * m)
    return out


def check_iso(A: ComoduleAlgebra, B: ComoduleAlgebra, M: list) -> Report:
    """Certify that a_j -> sum_i M[i][j] b_i is an isomorphism of bundles.

    Requires the same base ring and the same Hopf algebra on both sides;
    checks invertibility (unit determinant), unit and product preservation,
    and equivariance of the coaction.
    """
    rep = Report("bundle isomorphism")
    if A.base != B.base:
        rep.add("same base ring", False, "base rings differ")
        return rep
    rep.add("same base ring", True)
    if A.hopf != B.hopf:
        rep.add("same Hopf algebra", False, "coacting Hopf algebras differ")
        return rep
    rep.add("same Hopf algebra", True)
    n = A.dim
    if B.dim != n or len(M) != n or any(len(row) != n for row in M):
        rep.add("matrix shape", False, "expected a square matrix of the common rank")
        return rep
    rep.add("matrix shape", True)

    det = ring_det(M, A.base)
    if not A.base.is_unit(det):
        rep.add("invertible", False, f"determinant {A.base.format_element(det)} is not a unit")
        return rep
    rep.add("invertible", True)

    rep.add("preserves unit", apply_matrix(M, A.unit) == B.unit,
            "phi(1) != 1")

    ok = True
    for i in range(n):
        for j in range(n):
            lhs = apply_matrix(M, A.mul_vec(A.basis_vec(i), A.basis_vec(j)))
            rhs = B.mul_vec(apply_matrix(M, A.basis_vec(i)), apply_matrix(M, A.basis_vec(j)))
            if lhs != rhs:
                ok = rep.add("preserves product", False,
                             f"phi({A.labels[i]}*{A.labels[j]}) != phi({A.labels[i]})*phi({A.labels[j]})")
                break
        if not ok:
            break
    if ok:
        rep.add("preserves product", True)

    ok = True
    for i in range(n):
        lhs = B.coact_vec(apply_matrix(M, A.basis_vec(i)))
        rhs = apply_matrix_left(M, A.coact_vec(A.basis_vec(i)))
        if lhs != rhs:
            ok = rep.add("equivariant", False, f"coaction differs on phi({A.labels[i]})")
            break
    if ok:
        rep.add("equivariant", True)
    return rep


def require_iso(A: ComoduleAlgebra, B: ComoduleAlgebra, M: list) -> None:
    rep = check_iso(A, B, M)
    if not rep.ok:
        raise NotComoduleMapError("; ".join(rep.failures()))


def map_matrix_entries(f: BaseMorphism, M: list) -> list:
    return [[f.apply(c) for c in row] for row in M]


# --------------------------------------------------------------------------
# linear maps from H and convolution
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HModuleMap:
    """A C-linear map H -> A given by its values on the H basis."""

    algebra: ComoduleAlgebra
    values: tuple  # values[k] is a coordinate vector in A

    def __post_init__(self):
        if len(self.values) != self.algebra.hopf.dim:
            raise DimensionMismatchError("one value per Hopf basis element required")

    def apply(self, h: dict) -> dict:
        out: dict = {}
        for k, c in h.items():
            lifted = self.algebra.lift(c) if not isinstance(c, BaseElement) else c
            for i, m in self.values[k].items():
                _vadd(out, i, lifted * m)
        return out

    def matrix(self) -> list:
        """Coordinate matrix with columns indexed by the H basis."""
        n = self.algebra.dim
        zero = self.algebra.base.zero()
        return [[self.values[k].get(i, zero) for k in range(self.algebra.hopf.dim)]
                for i in range(n)]

    def __eq__(self, other):
        if not isinstance(other, HModuleMap):
            return NotImplemented
        return (self.algebra == other.algebra
                and all(_clean(a) == _clean(b) for a, b in zip(self.values, other.values)))

    def __hash__(self):
        return hash((self.algebra.labels, len(self.values)))


def unit_counit_map(A: ComoduleAlgebra) -> HModuleMap:
    """The convolution identity h -> counit(h) 1_A."""
    K = A.field
    vals = []
    for k in range(A.hopf.dim):
        eps = A.hopf.counit.get(k, K.zero())
        vals.append(_clean({i: c * A.lift(eps) for i, c in A.unit.items()}))
    return HModuleMap(A, tuple(vals))


def convolve(f: HModuleMap, g: HModuleMap) -> HModuleMap:
    """(f * g)(h) = sum f(h_(1)) g(h_(2)) in A."""
    A = f.algebra
    if g.algebra != A:
        raise RingMismatchError("convolution needs maps into the same algebra")
    vals = []
    for k in range(A.hopf.dim):
        acc: dict = {}
        for (i, j), c in A.hopf.comult.get(k, {}).items():
            term = A.mul_vec(f.values[i], g.values[j])
            lifted = A.lift(c)
            for l, m in term.items():
                _vadd(acc, l, lifted * m)
        vals.append(acc)
    return HModuleMap(A, tuple(vals))


def convolution_invert(gamma: HModuleMap) -> HModuleMap:
    """Two-sided convolution inverse of gamma, by solving a linear system.

    The right-inverse condition gamma * gamma' = unit.counit is C-linear in
    the values of gamma'; solve it, then verify the left identity directly.
    NotInvertibleError if the system is inconsistent or one-sided.
    """
    A = gamma.algebra
    C, K, H = A.base, A.field, A.hopf
    n, d = A.dim, H.dim
    N = n * d
    zero = C.zero()
    M = [[zero] * N for _ in range(N)]
    rhs = [zero] * N
    for k in range(d):
        for (i, j), c in H.comult.get(k, {}).items():
            lifted = A.lift(c)
            for p, cp in gamma.values[i].items():
                base = lifted * cp
                for m in range(n):
                    sc = A.mult.get((p, m))
                    if not sc:
                        continue
                    for l, cl in sc.items():
                        row = k * n + l
                        col = j * n + m
                        M[row][col] = M[row][col] + base * cl
        eps = H.counit.get(k, K.zero())
        if not K.is_zero(eps):
            lifted = A.lift(eps)
            for l, u in A.unit.items():
                rhs[k * n + l] = lifted * u
    sol = ring_solve(M, rhs, C)
    if sol is None:
        raise NotInvertibleError("the cleaving map has no convolution inverse")
    inv = HModuleMap(A, tuple(_clean({i: sol[j * n + i] for i in range(n)})
                              for j in range(d)))
    e = unit_counit_map(A)
    if convolve(inv, gamma) != e:
        raise NotInvertibleError(
            "right convolution inverse exists but is not two-sided")
    return inv
