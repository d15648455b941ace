"""Exact ground fields: Q, prime fields F_p, and simple extensions k0[u]/(f).

Scalars are raw values (``Fraction`` for Q, ``int`` in ``range(p)`` for F_p,
tuples of base scalars for extensions) and all arithmetic goes through the
field object.  Representations are normalized, so ``==`` on raw values is
exact equality.  No floating point is used anywhere.

Root extraction is exact: over Q by integer Newton iteration on numerator and
denominator, over finite fields by exhaustive search (these fields are small
by construction).  Over an infinite extension field root search raises
``RootSearchUnsupportedError`` rather than guessing.
"""

from __future__ import annotations

import ast
import math
import re
from fractions import Fraction
from itertools import product

from .errors import BadScalarError, RootSearchUnsupportedError


def _int_nth_root(m: int, n: int) -> tuple[int, bool]:
    """Return (floor(m ** (1/n)), exact?) for m >= 0 using integer Newton."""
    if m < 0:
        raise ValueError("negative radicand")
    if n == 1 or m in (0, 1):
        return m, True
    if n == 2:
        r = math.isqrt(m)
        return r, r * r == m
    x = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    while x ** n > m:
        x -= 1
    while (x + 1) ** n <= m:
        x += 1
    return x, x ** n == m


class Field:
    """Common interface; subclasses fix the scalar representation."""

    name: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = self.one()
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def characteristic(self) -> int:
        raise NotImplementedError

    def is_finite(self) -> bool:
        raise NotImplementedError

    def elements(self):
        """Iterate every scalar (finite fields only)."""
        raise RootSearchUnsupportedError(f"{self.name} is not finite")

    def nth_root(self, a, n: int):
        """An exact x with x**n == a, or None if there is none."""
        raise NotImplementedError

    def sqrt(self, a):
        return self.nth_root(a, 2)

    def multiplicative_order(self, a):
        """Order of a in the unit group, or None if no finite order."""
        if self.is_zero(a):
            return None
        x, k = a, 1
        # over an infinite field give up past a safe bound: the only roots of
        # unity in Q or a real-free extension we meet are low order anyway
        bound = 10_000
        while k <= bound:
            if x == self.one():
                return k
            x = self.mul(x, a)
            k += 1
        return None

    def random_scalar(self, rng, size: int = 9):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name


# --------------------------------------------------------------------------
# the rationals
# --------------------------------------------------------------------------

class RationalField(Field):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def pow(self, a, e):
        return a ** e

    def is_zero(self, a):
        return a == 0

    def characteristic(self):
        return 0

    def is_finite(self):
        return False

    def nth_root(self, a, n):
        if a == 0:
            return Fraction(0)
        if n % 2 == 0 and a < 0:
            return None
        num, den = abs(a.numerator), a.denominator
        rn, okn = _int_nth_root(num, n)
        rd, okd = _int_nth_root(den, n)
        if not (okn and okd):
            return None
        r = Fraction(rn, rd)
        return -r if a < 0 else r

    def random_scalar(self, rng, size=9):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def format(self, a):
        return str(a)

    def parse(self, text):
        return _eval_scalar(self, text, {})

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


# --------------------------------------------------------------------------
# prime fields
# --------------------------------------------------------------------------

class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def characteristic(self):
        return self.p

    def is_finite(self):
        return True

    def elements(self):
        return iter(range(self.p))

    def nth_root(self, a, n):
        for x in range(self.p):
            if pow(x, n, self.p) == a % self.p:
                return x
        return None

    def multiplicative_order(self, a):
        if a % self.p == 0:
            return None
        x, k = a % self.p, 1
        while x != 1:
            x = (x * a) % self.p
            k += 1
        return k

    def random_scalar(self, rng, size=9):
        return rng.randrange(self.p)

    def format(self, a):
        return f"{a % self.p} mod {self.p}"

    def parse(self, text):
        m = re.fullmatch(r"(.*?)\s+mod\s+(\d+)", text.strip())
        if m:
            if int(m.group(2)) != self.p:
                raise BadScalarError(f"scalar {text!r} declares modulus {m.group(2)}, field is {self.name}")
            text = m.group(1)
        return _eval_scalar(self, text, {})

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


# --------------------------------------------------------------------------
# simple extensions k0[u]/(f), f monic;  irreducibility is trusted input and
# a failed inverse (non-trivial gcd with f) surfaces as ZeroDivisionError
# --------------------------------------------------------------------------

class SimpleExtension(Field):
    def __init__(self, base: Field, var: str, modulus):
        # modulus: coefficients c_0..c_d of a monic degree-d polynomial,
        # leading coefficient included and required to be 1
        modulus = tuple(modulus)
        if len(modulus) < 3:
            raise ValueError("extension degree must be at least 2")
        if modulus[-1] != base.one():
            raise ValueError("modulus must be monic")
        self.base = base
        self.var = var
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.name = f"{base.name}[{var}]/({self._poly_str(modulus)})"

    def _poly_str(self, coeffs) -> str:
        terms = []
        for e in range(len(coeffs) - 1, -1, -1):
            c = coeffs[e]
            if self.base.is_zero(c):
                continue
            cs = self.base.format(c)
            if isinstance(self.base, PrimeField):
                cs = cs.split(" mod ")[0]
            if e == 0:
                mono = cs
            else:
                head = "" if cs == "1" else ("-" if cs == "-1" else cs + "*")
                mono = head + (self.var if e == 1 else f"{self.var}^{e}")
            terms.append(mono)
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out if terms else "0"

    # elements are tuples of length self.degree over the base field
    def zero(self):
        return (self.base.zero(),) * self.degree

    def one(self):
        return (self.base.one(),) + (self.base.zero(),) * (self.degree - 1)

    def gen(self):
        z, o = self.base.zero(), self.base.one()
        return (z, o) + (z,) * (self.degree - 2)

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero(),) * (self.degree - 1)

    def from_base(self, c):
        return (c,) + (self.base.zero(),) * (self.degree - 1)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        d, K = self.degree, self.base
        prod = [K.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j, y in enumerate(b):
                prod[i + j] = K.add(prod[i + j], K.mul(x, y))
        # reduce by the monic modulus: u^d = -(c_0 + ... + c_{d-1} u^{d-1})
        for e in range(2 * d - 2, d - 1, -1):
            c = prod[e]
            if K.is_zero(c):
                continue
            prod[e] = K.zero()
            for j in range(d):
                prod[e - d + j] = K.sub(prod[e - d + j], K.mul(c, self.modulus[j]))
        return tuple(prod[:d])

    def inv(self, a):
        # extended Euclid in base[x] against the modulus
        K = self.base
        if all(K.is_zero(c) for c in a):
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")

        def degree(p):
            for i in range(len(p) - 1, -1, -1):
                if not K.is_zero(p[i]):
                    return i
            return -1

        def scale(p, c):
            return [K.mul(x, c) for x in p]

        def sub_shift(p, q, c, s):
            # p - c * x^s * q
            out = list(p) + [K.zero()] * max(0, len(q) + s - len(p))
            for i, y in enumerate(q):
                out[i + s] = K.sub(out[i + s], K.mul(c, y))
            return out

        r0, r1 = list(self.modulus), list(a)
        t0, t1 = [K.zero()], [K.one()]
        while degree(r1) > 0:
            d0, d1 = degree(r0), degree(r1)
            if d0 < d1:
                r0, r1, t0, t1 = r1, r0, t1, t0
                continue
            c = K.div(r0[d0], r1[d1])
            r0 = sub_shift(r0, r1, c, d0 - d1)
            t0 = sub_shift(t0, t1, c, d0 - d1)
        if degree(r1) != 0:
            raise ZeroDivisionError(f"{self.format(a)} is a zero divisor; modulus of {self.name} is reducible")
        lead = self.base.inv(r1[0])
        t = scale(t1, lead)
        t = (t + [K.zero()] * self.degree)[: self.degree]
        return tuple(t)

    def is_zero(self, a):
        return all(self.base.is_zero(c) for c in a)

    def characteristic(self):
        return self.base.characteristic()

    def is_finite(self):
        return self.base.is_finite()

    def elements(self):
        for coeffs in product(list(self.base.elements()), repeat=self.degree):
            yield tuple(coeffs)

    def nth_root(self, a, n):
        if not self.is_finite():
            raise RootSearchUnsupportedError(
                f"no exact root search over the infinite field {self.name}")
        for x in self.elements():
            if self.pow(x, n) == a:
                return x
        return None

    def random_scalar(self, rng, size=9):
        return tuple(self.base.random_scalar(rng, size) for _ in range(self.degree))

    def format(self, a):
        K = self.base
        terms = []
        for e in range(self.degree - 1, -1, -1):
            c = a[e]
            if K.is_zero(c):
                continue
            cs = K.format(c)
            if isinstance(K, PrimeField):
                cs = cs.split(" mod ")[0]
            if e == 0:
                mono = cs
            else:
                head = "" if cs == "1" else ("-" if cs == "-1" else cs + "*")
                mono = head + (self.var if e == 1 else f"{self.var}^{e}")
            terms.append(mono)
        if not terms:
            return f"0 in {self.name}"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return f"{out} in {self.name}"

    def parse(self, text):
        m = re.fullmatch(r"(.*?)\s+in\s+(\S+)", text.strip())
        if m:
            if m.group(2) != self.name:
                raise BadScalarError(f"scalar {text!r} declares field {m.group(2)}, expected {self.name}")
            text = m.group(1)
        return _eval_scalar(self, text, {self.var: self.gen()})

    def __eq__(self, other):
        return (isinstance(other, SimpleExtension) and other.base == self.base
                and other.var == self.var and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("ext", self.base, self.var, self.modulus))


# --------------------------------------------------------------------------
# scalar expression parsing: +, -, *, /, integer powers, over any Field
# --------------------------------------------------------------------------

def _eval_scalar(field: Field, text: str, names: dict):
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise BadScalarError(f"cannot parse scalar {text!r}: {exc.msg}") from None
    try:
        return _eval_node(field, tree.body, names)
    except ZeroDivisionError:
        raise BadScalarError(f"division by zero in scalar {text!r}") from None


def _eval_node(field: Field, node, names):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return field.from_int(node.value)
        raise BadScalarError(f"non-integer literal {node.value!r} in scalar")
    if isinstance(node, ast.Name):
        if node.id in names:
            return names[node.id]
        raise BadScalarError(f"unknown name {node.id!r} in scalar")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(field, node.operand, names)
        return field.neg(v) if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval_node(field, node.left, names)
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise BadScalarError("exponent must be an integer literal")
            return field.pow(base, sign * exp.value)
        a = _eval_node(field, node.left, names)
        b = _eval_node(field, node.right, names)
        if isinstance(node.op, ast.Add):
            return field.add(a, b)
        if isinstance(node.op, ast.Sub):
            return field.sub(a, b)
        if isinstance(node.op, ast.Mult):
            return field.mul(a, b)
        if isinstance(node.op, ast.Div):
            return field.div(a, b)
    raise BadScalarError(f"unsupported syntax in scalar expression: {ast.dump(node)}")


def field_from_name(name: str) -> Field:
    """Resolve "Q" or "F<p>" (used by CLI flags; extensions come as JSON)."""
    if name == "Q":
        return QQ
    m = re.fullmatch(r"F(\d+)", name)
    if m:
        try:
            return PrimeField(int(m.group(1)))
        except ValueError as exc:
            raise BadScalarError(str(exc)) from None
    raise BadScalarError(f"unknown field name {name!r} (expected Q or F<p>)")
