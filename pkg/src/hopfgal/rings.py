"""Base rings for bundles: towers of tame extensions of an exact field.

A ring is a ground field k together with an ordered list of generators, each
of one of three kinds:

* free       -- a polynomial variable (exponents >= 0)
* laurent    -- an invertible variable (exponents in Z, g * g^-1 = 1)
* root       -- g with g^n = u, where u is a unit of the subring generated by
                the *earlier* generators and n is invertible in k
                (exponents reduced into range(n))

Elements are finite sums of monomials with exact scalar coefficients, stored
as a dict from exponent tuples to scalars.  Multiplication rewrites root
exponents down into range, always from the highest generator index toward the
lowest, which terminates because a root relation only involves earlier
generators.  The resulting normal form is unique, so ``==`` is decidable
equality.

Every ring built this way is commutative, reduced (root adjunctions of units
with invertible degree are etale) and free as a module over each prefix of
its tower.  Unit testing follows that structure: an element is a unit iff it
is constant in the free generators, its single Laurent monomial factor is
absorbed, and for each root extension the determinant of the multiplication
operator on the rank-n free module over the prefix ring is a unit, recursing
to k.  Reported inverses are always re-verified by multiplication.  The
procedure is complete for every tower in which Laurent generators precede
root adjunctions (all rings the admissible constructors produce); a
hand-built tower putting a Laurent generator above a root adjunction that
created idempotents could have exotic mixed units it reports as non-units.

An optional grading assigns a non-negative degree to each generator.  Only
free generators may carry positive degree: a graded unit would otherwise be
forced into positive degree, which cannot happen in a non-negatively graded
ring.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass

from .errors import (
    BadScalarError,
    CharDividesError,
    GradingError,
    NonUnitError,
    RingMismatchError,
)
from .fields import Field

FREE = "free"
LAURENT = "laurent"
ROOT = "root"


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    degree: int = 0  # root generators: the n of g^n = u
    grade: int = 0   # grading degree


class BaseRing:
    """Immutable tower k[g_1, ..., g_m] as described in the module docstring.

    ``root_values[i]`` holds, for a root generator, the coefficient dict of u
    (an element supported on generators < i, exponent tuples already padded
    to full length); None for the other kinds.
    """

    def __init__(self, field: Field, gens=(), root_values=()):
        self.field = field
        self.gens = tuple(gens)
        self.root_values = tuple(root_values)
        names = [g.name for g in self.gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in self.gens:
            if g.grade < 0:
                raise GradingError(f"generator {g.name} has negative grade")
            if g.grade > 0 and g.kind != FREE:
                raise GradingError(
                    f"generator {g.name} is {g.kind}; only free generators may have positive grade")
        self._index = {g.name: i for i, g in enumerate(self.gens)}
        self._root_indices = tuple(i for i, g in enumerate(self.gens) if g.kind == ROOT)
        self._prefix_cache: dict[int, BaseRing] = {}
        self._root_pow_cache: dict[tuple[int, int], dict] = {}

    # -------------------------------------------------------------- basics

    @property
    def is_field(self) -> bool:
        return not self.gens

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, BaseRing) and self.field == other.field
                and self.gens == other.gens and self.root_values == other.root_values)

    def __hash__(self):
        rv = tuple(None if v is None else frozenset(v.items()) for v in self.root_values)
        return hash((self.field, self.gens, rv))

    def __repr__(self):
        if not self.gens:
            return self.field.name
        parts = []
        for i, g in enumerate(self.gens):
            if g.kind == FREE:
                parts.append(g.name if g.grade == 0 else f"{g.name}({g.grade})")
            elif g.kind == LAURENT:
                parts.append(f"{g.name}^+-1")
            else:
                u = self.element(self.root_values[i])
                parts.append(f"{g.name}|{g.name}^{g.degree}={u}")
        return f"{self.field.name}[{','.join(parts)}]"

    # ------------------------------------------------------- constructing

    def _extended(self, gen: Generator, root_value=None) -> BaseRing:
        pad = tuple(dict(((m + (0,)), c) for m, c in v.items()) if v is not None else None
                    for v in self.root_values)
        rv = None
        if root_value is not None:
            rv = {m + (0,): c for m, c in root_value.items()}
        return BaseRing(self.field, self.gens + (gen,), pad + (rv,))

    def add_free(self, name: str, grade: int = 0) -> BaseRing:
        return self._extended(Generator(name, FREE, grade=grade))

    def add_laurent(self, name: str) -> BaseRing:
        return self._extended(Generator(name, LAURENT))

    def prefix(self, k: int) -> BaseRing:
        if k == len(self.gens):
            return self
        if k not in self._prefix_cache:
            rv = tuple(None if v is None else {m[:k]: c for m, c in v.items()}
                       for v in self.root_values[:k])
            self._prefix_cache[k] = BaseRing(self.field, self.gens[:k], rv)
        return self._prefix_cache[k]

    # --------------------------------------------------------- elements

    def element(self, coeffs: dict) -> BaseElement:
        return BaseElement(self, {m: c for m, c in coeffs.items() if not self.field.is_zero(c)})

    def zero(self) -> BaseElement:
        return BaseElement(self, {})

    def one(self) -> BaseElement:
        return BaseElement(self, {(0,) * len(self.gens): self.field.one()})

    def from_scalar(self, c) -> BaseElement:
        return self.element({(0,) * len(self.gens): c})

    def from_int(self, n: int) -> BaseElement:
        return self.from_scalar(self.field.from_int(n))

    def gen(self, name_or_index) -> BaseElement:
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        m = [0] * len(self.gens)
        m[i] = 1
        return BaseElement(self, {tuple(m): self.field.one()})

    def monomial(self, exps: dict, coeff=None) -> BaseElement:
        m = [0] * len(self.gens)
        for name, e in exps.items():
            i = self._index[name]
            if e < 0 and self.gens[i].kind != LAURENT:
                raise ValueError(f"negative exponent on non-laurent generator {name}")
            m[i] = e
        c = coeff if coeff is not None else self.field.one()
        return self.element(self._reduce({tuple(m): c}))

    def lift(self, a: BaseElement) -> BaseElement:
        """Reinterpret an element of a prefix of this tower in this ring."""
        k = len(a.ring.gens)
        if a.ring != self.prefix(k):
            raise RingMismatchError(f"{a.ring!r} is not a prefix of {self!r}")
        pad = (0,) * (len(self.gens) - k)
        return BaseElement(self, {m + pad: c for m, c in a.coeffs.items()})

    def restrict(self, a: BaseElement, k: int) -> BaseElement:
        """Inverse of lift for elements supported on the first k generators."""
        assert all(all(e == 0 for e in m[k:]) for m in a.coeffs)
        return BaseElement(self.prefix(k), {m[:k]: c for m, c in a.coeffs.items()})

    # ----------------------------------------------- raw dict arithmetic

    def _add(self, A: dict, B: dict) -> dict:
        K = self.field
        out = dict(A)
        for m, c in B.items():
            if m in out:
                s = K.add(out[m], c)
                if K.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return out

    def _neg(self, A: dict) -> dict:
        K = self.field
        return {m: K.neg(c) for m, c in A.items()}

    def _scale(self, c, A: dict) -> dict:
        K = self.field
        if K.is_zero(c):
            return {}
        return {m: K.mul(c, x) for m, x in A.items()}

    def _mul(self, A: dict, B: dict) -> dict:
        K = self.field
        add, mul, is_zero = K.add, K.mul, K.is_zero
        roots = self._root_indices
        gens = self.gens
        out: dict = {}
        for m1, c1 in A.items():
            for m2, c2 in B.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                c = mul(c1, c2)
                if roots and any(m[i] >= gens[i].degree for i in roots):
                    for mr, cr in self._reduce({m: c}).items():
                        if mr in out:
                            s = add(out[mr], cr)
                            if is_zero(s):
                                del out[mr]
                            else:
                                out[mr] = s
                        else:
                            out[mr] = cr
                else:
                    if m in out:
                        s = add(out[m], c)
                        if is_zero(s):
                            del out[m]
                        else:
                            out[m] = s
                    else:
                        out[m] = c
        return out

    def _reduce(self, terms: dict) -> dict:
        """Rewrite root exponents into range, highest generator first."""
        out: dict = {}
        K = self.field
        stack = list(terms.items())
        while stack:
            m, c = stack.pop()
            over = None
            for i in reversed(self._root_indices):
                if m[i] >= self.gens[i].degree:
                    over = i
                    break
            if over is None:
                if m in out:
                    s = K.add(out[m], c)
                    if K.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                else:
                    out[m] = c
                continue
            n = self.gens[over].degree
            q, r = divmod(m[over], n)
            base = list(m)
            base[over] = r
            for mu, cu in self._root_power(over, q).items():
                mm = tuple(x + y for x, y in zip(base, mu))
                stack.append((mm, K.mul(c, cu)))
        return out

    def _root_power(self, i: int, q: int) -> dict:
        """Normal form of u_i ** q as a coefficient dict (support on gens < i)."""
        key = (i, q)
        if key not in self._root_pow_cache:
            if q == 1:
                self._root_pow_cache[key] = self.root_values[i]
            else:
                prev = self._root_power(i, q - 1)
                self._root_pow_cache[key] = self._mul(prev, self.root_values[i])
        return self._root_pow_cache[key]

    def _pow(self, A: dict, e: int) -> dict:
        assert e >= 0
        result = {(0,) * len(self.gens): self.field.one()}
        base = A
        while e:
            if e & 1:
                result = self._mul(result, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        return result

    # ------------------------------------------------------------- units

    def try_inverse(self, a: BaseElement):
        """The inverse of a, or None if a is not a unit."""
        if a.ring != self:
            raise RingMismatchError("element of a different ring")
        inv = self._try_inv_dict(a.coeffs)
        if inv is None:
            return None
        result = BaseElement(self, inv)
        assert (a * result) == self.one(), "internal error: unverified inverse"
        return result

    def is_unit(self, a: BaseElement) -> bool:
        return self.try_inverse(a) is not None

    def inverse(self, a: BaseElement) -> BaseElement:
        inv = self.try_inverse(a)
        if inv is None:
            raise NonUnitError(f"{a} is not a unit of {self!r}")
        return inv

    def _try_inv_dict(self, d: dict):
        if not d:
            return None
        m = len(self.gens)
        if m == 0:
            return {(): self.field.inv(d[()])}
        g = self.gens[-1]
        sub = self.prefix(m - 1)
        if g.kind == FREE:
            if any(mono[-1] != 0 for mono in d):
                return None  # reduced ring: units are constant in free generators
            inv = sub._try_inv_dict({mono[:-1]: c for mono, c in d.items()})
            if inv is None:
                return None
            return {mono + (0,): c for mono, c in inv.items()}
        if g.kind == LAURENT:
            exps = {mono[-1] for mono in d}
            if len(exps) != 1:
                return None  # see module docstring for the completeness caveat
            e = exps.pop()
            inv = sub._try_inv_dict({mono[:-1]: c for mono, c in d.items()})
            if inv is None:
                return None
            return {mono + (-e,): c for mono, c in inv.items()}
        # root generator: decide via the multiplication operator on the free
        # module with basis 1, g, ..., g^(n-1) over the prefix ring
        n = g.degree
        coords = [{} for _ in range(n)]
        for mono, c in d.items():
            coords[mono[-1]][mono[:-1]] = c
        u = {mono[:-1]: c for mono, c in self.root_values[-1].items()}
        upow = {0: {(0,) * (m - 1): self.field.one()}, 1: u}

        def u_to(q):
            if q not in upow:
                upow[q] = sub._mul(u_to(q - 1), u)
            return upow[q]

        M = [[None] * n for _ in range(n)]
        for col in range(n):
            images = [{} for _ in range(n)]
            for j in range(n):
                if not coords[j]:
                    continue
                r, q = (j + col) % n, (j + col) // n
                term = coords[j] if q == 0 else sub._mul(coords[j], u_to(q))
                images[r] = sub._add(images[r], term)
            for row in range(n):
                M[row][col] = images[row]
        det = _berkowitz_dicts(sub, M)
        dinv = sub._try_inv_dict(det)
        if dinv is None:
            return None
        out: dict = {}
        sign_flip = False
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j] for r in range(1, n)]
            cof = _berkowitz_dicts(sub, minor)
            if sign_flip:
                cof = sub._neg(cof)
            xj = sub._mul(dinv, cof)
            for mono, c in xj.items():
                out[mono + (j,)] = c
            sign_flip = not sign_flip
        return out

    # ------------------------------------------------------------ grading

    @property
    def grades(self) -> tuple[int, ...]:
        return tuple(g.grade for g in self.gens)

    @property
    def has_positive_grading(self) -> bool:
        return any(g.grade > 0 for g in self.gens)

    # --------------------------------------------------------- formatting

    def format_element(self, a: BaseElement) -> str:
        if not a.coeffs:
            return "0"
        K = self.field
        terms = []
        for mono in sorted(a.coeffs, reverse=True):
            c = a.coeffs[mono]
            factors = []
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                nm = self.gens[i].name
                factors.append(nm if e == 1 else f"{nm}^{e}")
            cs = K.format(c)
            # strip field annotations inside composite expressions
            cs = cs.split(" mod ")[0].split(" in ")[0]
            if any(op in cs[1:] for op in "+-") or "*" in cs:
                cs = f"({cs})"
            if not factors:
                terms.append(cs)
            elif cs == "1":
                terms.append("*".join(factors))
            elif cs == "-1":
                terms.append("-" + "*".join(factors))
            else:
                terms.append(cs + "*" + "*".join(factors))
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def parse_element(self, text: str) -> BaseElement:
        names = {g.name: self.gen(i) for i, g in enumerate(self.gens)}
        from .fields import SimpleExtension
        if isinstance(self.field, SimpleExtension):
            if self.field.var not in names:
                names[self.field.var] = self.from_scalar(self.field.gen())
        try:
            tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
        except SyntaxError as exc:
            raise BadScalarError(f"cannot parse element {text!r}: {exc.msg}") from None
        return self._eval_node(tree.body, names)

    def _eval_node(self, node, names) -> BaseElement:
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return self.from_int(node.value)
            raise BadScalarError(f"non-integer literal {node.value!r} in element")
        if isinstance(node, ast.Name):
            if node.id in names:
                return names[node.id]
            raise BadScalarError(f"unknown name {node.id!r} in element over {self!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval_node(node.operand, names)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = self._eval_node(node.left, names)
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise BadScalarError("exponent must be an integer literal")
                e = sign * exp.value
                if e < 0:
                    inv = self.try_inverse(base)
                    if inv is None:
                        raise BadScalarError(f"negative power of the non-unit {base}")
                    return inv ** (-e)
                return base ** e
            a = self._eval_node(node.left, names)
            b = self._eval_node(node.right, names)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                inv = self.try_inverse(b)
                if inv is None:
                    raise BadScalarError(f"division by the non-unit {b}")
                return a * inv
        raise BadScalarError("unsupported syntax in element expression")


class BaseElement:
    """A normal-form element of a BaseRing.  Immutable by convention."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: BaseRing, coeffs: dict):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"mixing elements of {self.ring!r} and {other.ring!r}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        self._check(other)
        return BaseElement(self.ring, self.ring._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return BaseElement(self.ring, self.ring._neg(self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BaseElement(self.ring, self.ring._scale(self.ring.field.from_int(other), self.coeffs))
        self._check(other)
        return BaseElement(self.ring, self.ring._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.ring.inverse(self) ** (-e)
        return BaseElement(self.ring, self.ring._pow(self.coeffs, e))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return self * self.ring.inverse(other)

    def scale(self, c) -> BaseElement:
        """Multiply by a scalar of the ground field."""
        return BaseElement(self.ring, self.ring._scale(c, self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_scalar(self):
        """The scalar c when self == c * 1, else None."""
        if not self.coeffs:
            return self.ring.field.zero()
        zero_mono = (0,) * len(self.ring.gens)
        if set(self.coeffs) == {zero_mono}:
            return self.coeffs[zero_mono]
        return None

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, BaseElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.coeffs.items())))

    def __repr__(self):
        return self.ring.format_element(self)


# --------------------------------------------------------------------------
# division-free determinant (Berkowitz) on coefficient dicts
# --------------------------------------------------------------------------

def _berkowitz_dicts(ring: BaseRing, M) -> dict:
    """Determinant of a square matrix of coefficient dicts over ring.

    Berkowitz's method: iteratively build the characteristic polynomial
    vector of each leading principal submatrix by multiplying Toeplitz
    matrices assembled from the row/column bordering it.  No divisions, so
    it is valid over any commutative ring, zero divisors included.
    """
    n = len(M)
    one = {(0,) * len(ring.gens): ring.field.one()}
    if n == 0:
        return one
    if n == 1:
        return dict(M[0][0])
    mul, add, neg = ring._mul, ring._add, ring._neg

    # charpoly vector of the 1x1 leading block: [1, -M[0][0]]
    poly = [one, neg(M[0][0])]
    for k in range(1, n):
        # R = row (M[k][0..k-1]), C = column (M[0..k-1][k]), a = M[k][k]
        R = M[k][:k]
        C = [M[j][k] for j in range(k)]
        a = M[k][k]
        # Toeplitz column entries: t_0 = 1, t_1 = -a, t_{i+2} = -(R . A^i C)
        toep = [one, neg(a)]
        vec = C
        for _ in range(k - 1):
            dot: dict = {}
            for r, v in zip(R, vec):
                dot = add(dot, mul(r, v))
            toep.append(neg(dot))
            vec = [_mat_vec_row(ring, M, vec, j, k) for j in range(k)]
        dot = {}
        for r, v in zip(R, vec):
            dot = add(dot, mul(r, v))
        toep.append(neg(dot))
        new_poly = []
        for i in range(k + 2):
            acc: dict = {}
            for j in range(min(i, len(poly) - 1) + 1):
                if i - j < len(toep):
                    acc = add(acc, mul(toep[i - j], poly[j]))
            new_poly.append(acc)
        poly = new_poly
    det = poly[-1]
    if n % 2 == 1:
        det = neg(det)
    return det


def _mat_vec_row(ring: BaseRing, M, vec, j: int, k: int) -> dict:
    acc: dict = {}
    for i in range(k):
        acc = ring._add(acc, ring._mul(M[j][i], vec[i]))
    return acc


# --------------------------------------------------------------------------
# ring constructors
# --------------------------------------------------------------------------

def base_ring(field: Field) -> BaseRing:
    return BaseRing(field)


def polynomial_ring(field: Field, *names: str, grades=None) -> BaseRing:
    R = BaseRing(field)
    grades = grades or (0,) * len(names)
    for nm, gr in zip(names, grades):
        R = R.add_free(nm, grade=gr)
    return R


def laurent_ring(field: Field, *names: str) -> BaseRing:
    R = BaseRing(field)
    for nm in names:
        R = R.add_laurent(nm)
    return R


def fresh_name(ring: BaseRing, stem: str) -> str:
    used = {g.name for g in ring.gens}
    if stem not in used:
        return stem
    i = 2
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def adjoin_root(ring: BaseRing, u: BaseElement, n: int, name: str | None = None):
    """Adjoin an n-th root of the unit u: returns (extension, inclusion, root).

    The extension k-tower gains one root generator r with r^n = u.  Requires
    u to be a unit (NonUnitError) and n to be invertible in the ground field
    (CharDividesError); under those hypotheses the extension is etale, hence
    still reduced.
    """
    if u.ring != ring:
        raise RingMismatchError("root value must live in the ring being extended")
    if n < 1:
        raise ValueError("root degree must be positive")
    p = ring.field.characteristic()
    if p and n % p == 0:
        raise CharDividesError(f"degree {n} is not invertible in characteristic {p}")
    if not ring.is_unit(u):
        raise NonUnitError(f"cannot adjoin a root of the non-unit {u}")
    nm = name or fresh_name(ring, "r")
    if nm in {g.name for g in ring.gens}:
        raise ValueError(f"generator name {nm} already used")
    ext = ring._extended(Generator(nm, ROOT, degree=n), root_value=u.coeffs)
    incl = inclusion_morphism(ring, ext)
    return ext, incl, ext.gen(nm)


@dataclass(frozen=True)
class IntervalRing:
    """A ring C[t] with inclusion and the two evaluation morphisms."""

    ring: BaseRing
    t: BaseElement
    include: "BaseMorphism"
    at_zero: "BaseMorphism"
    at_one: "BaseMorphism"
    t_name: str


def extend_with_t(ring: BaseRing) -> IntervalRing:
    """Adjoin a free interval variable t with evaluation maps at 0 and 1."""
    nm = fresh_name(ring, "t")
    ext = ring.add_free(nm)
    incl = inclusion_morphism(ring, ext)
    images0 = {g.name: ring.gen(g.name) for g in ring.gens}
    ev0 = BaseMorphism(ext, ring, {**images0, nm: ring.zero()})
    ev1 = BaseMorphism(ext, ring, {**images0, nm: ring.one()})
    return IntervalRing(ext, ext.gen(nm), incl, ev0, ev1, nm)


def inclusion_morphism(small: BaseRing, big: BaseRing) -> BaseMorphism:
    return BaseMorphism(small, big, {g.name: big.gen(g.name) for g in small.gens})


# --------------------------------------------------------------------------
# morphisms
# --------------------------------------------------------------------------

class BaseMorphism:
    """A ring homomorphism fixing the ground field, given on generators.

    Validated at construction: Laurent generator images must be units (their
    inverses are stored for use on negative exponents) and root generator
    images must satisfy the image of the defining relation.
    """

    def __init__(self, source: BaseRing, target: BaseRing, images: dict):
        if source.field != target.field:
            raise RingMismatchError("morphisms must fix the ground field")
        self.source = source
        self.target = target
        self.images: list[BaseElement] = []
        self.inv_images: list[BaseElement | None] = []
        for g in source.gens:
            if g.name not in images:
                raise RingMismatchError(f"no image given for generator {g.name}")
            img = images[g.name]
            if img.ring != target:
                raise RingMismatchError(f"image of {g.name} lives in the wrong ring")
            self.images.append(img)
            self.inv_images.append(None)
        self._pow_cache: dict[tuple[int, int], BaseElement] = {}
        for i, g in enumerate(source.gens):
            if g.kind == LAURENT:
                inv = target.try_inverse(self.images[i])
                if inv is None:
                    raise NonUnitError(f"image of laurent generator {g.name} must be a unit")
                self.inv_images[i] = inv
            elif g.kind == ROOT:
                u = source.element(source.root_values[i])
                if self.images[i] ** g.degree != self.apply(u):
                    raise RingMismatchError(
                        f"image of root generator {g.name} violates {g.name}^{g.degree} = {u}")

    def _gen_power(self, i: int, e: int) -> BaseElement:
        key = (i, e)
        if key not in self._pow_cache:
            if e >= 0:
                self._pow_cache[key] = self.images[i] ** e
            else:
                self._pow_cache[key] = self.inv_images[i] ** (-e)
        return self._pow_cache[key]

    def apply(self, a: BaseElement) -> BaseElement:
        if a.ring != self.source:
            raise RingMismatchError("element is not in the source ring")
        out = self.target.zero()
        for mono, c in a.coeffs.items():
            term = self.target.from_scalar(c)
            for i, e in enumerate(mono):
                if e:
                    term = term * self._gen_power(i, e)
            out = out + term
        return out

    def __call__(self, a: BaseElement) -> BaseElement:
        return self.apply(a)

    def __eq__(self, other):
        if not isinstance(other, BaseMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, tuple(frozenset(i.coeffs.items()) for i in self.images)))

    def __repr__(self):
        ims = ", ".join(f"{g.name}->{img}" for g, img in zip(self.source.gens, self.images))
        return f"<{self.source!r} -> {self.target!r}: {ims}>"


def identity_morphism(ring: BaseRing) -> BaseMorphism:
    return BaseMorphism(ring, ring, {g.name: ring.gen(g.name) for g in ring.gens})


def compose(f: BaseMorphism, g: BaseMorphism) -> BaseMorphism:
    """The composite 'f then g' (source of g must be the target of f)."""
    if f.target != g.source:
        raise RingMismatchError("morphisms do not compose")
    images = {gen.name: g.apply(img) for gen, img in zip(f.source.gens, f.images)}
    return BaseMorphism(f.source, g.target, images)


def root_components(ext: BaseRing, a: BaseElement) -> list:
    """Coordinates of a over the prefix ring along powers of the last generator.

    The last generator must be a root generator of some order n; every
    element then decomposes uniquely as sum c_j g^j with c_j in the prefix
    ring, and the list [c_0, ..., c_{n-1}] is returned.
    """
    if not ext.gens or ext.gens[-1].kind != ROOT:
        raise RingMismatchError("last generator is not a root adjunction")
    if a.ring != ext:
        raise RingMismatchError("element does not belong to the extension")
    n = ext.gens[-1].degree
    prefix = ext.prefix(len(ext.gens) - 1)
    comps = [{} for _ in range(n)]
    for mono, c in a.coeffs.items():
        comps[mono[-1]][mono[:-1]] = c
    return [BaseElement(prefix, comp) for comp in comps]
