"""Exact coefficient fields.

Three kinds of field are supported:

* ``rational``: the rationals, elements are :class:`fractions.Fraction`;
* ``cyclotomic(n)``: ``Q[x]/Phi_n(x)``, elements are tuples of ``phi(n)``
  Fractions (coefficients of ``1, x, x^2, ...``);
* ``prime(p, n)``: ``Z/pZ`` with ``n | p - 1``, elements are ints in ``[0, p)``.

Field handles work on *raw* values so the linear algebra layers can stay
fast; :class:`Scalar` wraps a raw value together with its field for the
user-facing API.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import DivisionByZero, FieldMismatch, InvalidSpec, NoRoot


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    n: int = 1
    p: int | None = None

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def cyclotomic(cls, n: int) -> "FieldSpec":
        return cls("cyclotomic", n=n)

    @classmethod
    def prime(cls, p: int, n: int = 1) -> "FieldSpec":
        return cls("prime", n=n, p=p)

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "cyclotomic":
            return {"kind": "cyclotomic", "n": self.n}
        return {"kind": "prime", "p": self.p, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        try:
            kind = data["kind"]
            if kind == "rational":
                return cls.rational()
            if kind == "cyclotomic":
                return cls.cyclotomic(int(data["n"]))
            if kind == "prime":
                return cls.prime(int(data["p"]), int(data.get("n", 1)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"malformed field spec {data!r}") from exc
        raise InvalidSpec(f"unknown field kind {kind!r}")

    def __str__(self):
        if self.kind == "rational":
            return "QQ"
        if self.kind == "cyclotomic":
            return f"QQ(w{self.n})"
        return f"GF({self.p})[n={self.n}]"


class Field:
    """Arithmetic on raw values of one field."""

    spec: FieldSpec
    characteristic: int

    # -- scalar ops (overridden per kind) --
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def fmt(self, a) -> str:
        raise NotImplementedError

    def random(self, rng, bound: int = 5):
        raise NotImplementedError

    # -- derived ops --
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_one(self, a) -> bool:
        return a == self.one()

    def coerce(self, value):
        """Accept ints, Fractions, strings and Scalars of this field."""
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatch(f"{value.field.spec} vs {self.spec}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            return self.from_int(int(value))
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.div(self.from_int(value.numerator), self.from_int(value.denominator))
        return value

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    # -- sparse vector helpers (dict key -> nonzero value) --
    def axpy(self, y: dict, a, x: dict) -> None:
        """In place ``y += a * x``; zero entries are dropped."""
        add, mul, is_zero = self.add, self.mul, self.is_zero
        for k, v in x.items():
            t = add(y[k], mul(a, v)) if k in y else mul(a, v)
            if is_zero(t):
                y.pop(k, None)
            else:
                y[k] = t

    def scale(self, a, x: dict) -> dict:
        if self.is_zero(a):
            return {}
        mul = self.mul
        return {k: mul(a, v) for k, v in x.items()}

    def lincomb(self, pairs) -> dict:
        out: dict = {}
        for a, x in pairs:
            if not self.is_zero(a):
                self.axpy(out, a, x)
        return out

    def __repr__(self):
        return f"Field({self.spec})"


class RationalField(Field):
    characteristic = 0

    def __init__(self):
        self.spec = FieldSpec.rational()

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k):
        return Fraction(k)

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
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc

    def fmt(self, a):
        return str(a)

    def random(self, rng, bound=5):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def axpy(self, y, a, x):
        for k, v in x.items():
            t = y.get(k, 0) + a * v
            if t:
                y[k] = t
            else:
                y.pop(k, None)


class PrimeField(Field):
    def __init__(self, p: int, n: int):
        self.spec = FieldSpec.prime(p, n)
        self.p = p
        self.characteristic = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return int(text.strip()) % self.p
        except ValueError as exc:
            raise ValueError(f"not a residue: {text!r}") from exc

    def fmt(self, a):
        return str(a)

    def random(self, rng, bound=5):
        return rng.randrange(self.p)

    def axpy(self, y, a, x):
        p = self.p
        for k, v in x.items():
            t = (y.get(k, 0) + a * v) % p
            if t:
                y[k] = t
            else:
                y.pop(k, None)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


class CyclotomicField(Field):
    """``Q(w) = Q[x]/Phi_n(x)`` with ``w`` the class of ``x``."""

    characteristic = 0

    def __init__(self, n: int):
        self.spec = FieldSpec.cyclotomic(n)
        self.n = n
        x = sympy.Symbol("x")
        coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        self.modulus = tuple(Fraction(int(c)) for c in coeffs)  # monic, low degree first
        self.degree = d = len(coeffs) - 1
        # x^k reduced, for 0 <= k < 2d - 1 (extended lazily beyond)
        self._powers = [tuple([Fraction(1)] + [Fraction(0)] * (d - 1))]
        self._zero = tuple([Fraction(0)] * d)
        self._one = self._powers[0]
        while len(self._powers) < max(2 * d - 1, 2):
            self._extend()

    def _extend(self):
        d = self.degree
        cur = self._powers[-1]
        top = cur[-1]
        nxt = [Fraction(0)] + list(cur[:-1])
        if top:
            for i in range(d):
                nxt[i] -= top * self.modulus[i]
        self._powers.append(tuple(nxt))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def from_int(self, k):
        return (Fraction(k),) + self._zero[1:]

    def gen(self):
        """The class of x."""
        return self._powers[1]

    def _reduce(self, coeffs):
        d = self.degree
        out = list(coeffs[:d]) + [Fraction(0)] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                while k >= len(self._powers):
                    self._extend()
                row = self._powers[k]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        # extended Euclid in Q[x]: find s with s*a = 1 mod Phi_n
        r0, r1 = _trim(list(self.modulus)), _trim(list(a))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return self._reduce([x / c for x in s1])

    def parse(self, text):
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty scalar")
        coeffs = [Fraction(0)] * (self.degree + 1)
        acc = []
        pos = 0
        for m in _TERM.finditer(text):
            if m.start() != pos:
                raise ValueError(f"cannot parse {text!r} at {pos}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            body = m.group(2)
            coef, power = Fraction(1), 0
            if "w" in body:
                left, _, right = body.partition("w")
                left = left.rstrip("*")
                if left:
                    coef = Fraction(left)
                power = 1
                if right:
                    if not right.startswith("^"):
                        raise ValueError(f"bad power in {body!r}")
                    power = int(right[1:])
            else:
                coef = Fraction(body)
            acc.append((sign * coef, power))
        if pos != len(text):
            raise ValueError(f"trailing input in {text!r}")
        top = max(p for _, p in acc)
        coeffs = [Fraction(0)] * (top + 1)
        for c, p in acc:
            coeffs[p] += c
        return self._reduce(coeffs)

    def fmt(self, a):
        parts = []
        for k in range(self.degree - 1, -1, -1):
            c = a[k]
            if not c:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            if mono and c in (1, -1):
                body = mono
                sign = "-" if c < 0 else "+"
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c)) + ("*" + mono if mono else "")
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def random(self, rng, bound=5):
        return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
                     for _ in range(self.degree))


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a.pop()
        _trim(a)
        if len(a) < len(b):
            break
    return _trim(q), _trim(a or [Fraction(0)])


@functools.lru_cache(maxsize=None)
def make_field(spec: FieldSpec) -> Field:
    """Validate ``spec`` and return the (cached) field handle."""
    if spec.kind == "rational":
        return RationalField()
    if spec.kind == "cyclotomic":
        if spec.n < 1:
            raise InvalidSpec(f"cyclotomic order must be positive, got {spec.n}")
        return CyclotomicField(spec.n)
    if spec.kind == "prime":
        p, n = spec.p, spec.n
        if p is None or not sympy.isprime(p):
            raise InvalidSpec(f"{p} is not prime")
        if n < 1 or n % p == 0 or (p - 1) % n:
            raise InvalidSpec(f"prime({p}, {n}): need n | p - 1 and p not dividing n")
        return PrimeField(p, n)
    raise InvalidSpec(f"unknown field kind {spec.kind!r}")


def multiplicative_order(field: Field, a, cap: int | None = None) -> int | None:
    """Order of ``a`` by direct powering; None if not found up to ``cap``."""
    if field.is_zero(a):
        return None
    if cap is None:
        cap = field.p - 1 if isinstance(field, PrimeField) else 2 * field.n if isinstance(field, CyclotomicField) else 2
    one = field.one()
    cur = a
    for k in range(1, cap + 1):
        if cur == one:
            return k
        cur = field.mul(cur, a)
    return None


def _candidates(field: Field):
    if isinstance(field, RationalField):
        yield Fraction(1)
        yield Fraction(-1)
    elif isinstance(field, PrimeField):
        yield from range(1, field.p)
    else:
        x = field.gen()
        powers = [field.pow(x, k) for k in range(2 * field.n)]
        yield from powers
        yield from (field.neg(v) for v in powers)


def primitive_root(field: Field, n: int) -> "Scalar":
    """Smallest element (in the field's fixed enumeration) of exact order ``n``."""
    if n < 1:
        raise NoRoot(f"order must be positive, got {n}")
    for cand in _candidates(field):
        if multiplicative_order(field, cand, cap=n) == n:
            return Scalar(field, cand)
    raise NoRoot(f"{field.spec} has no primitive {n}-th root of unity")


@dataclass(frozen=True)
class Scalar:
    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field.spec} vs {other.field.spec}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (ValueError, TypeError, DivisionByZero):
            return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __str__(self):
        return self.field.fmt(self.value)

    def __repr__(self):
        return f"Scalar({self.field.fmt(self.value)!r} in {self.field.spec})"


def field_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field.spec} vs {b.field.spec}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
