"""Finite field arithmetic over GF(p^m) and the quadratic extension GF(q^2) / GF(q).

An element is stored as an integer index in ``[0, q)``: the base-``p`` digits
of the index are the coefficients of the polynomial representative, lowest
degree first.  Index 0 is zero and index 1 is one.

Multiplication and inversion go through log/antilog tables built from the
minimal-index primitive element.  Addition uses Zech logarithms, and small
fields additionally cache full addition and multiplication tables so that
the enumeration kernels reduce to numpy fancy indexing.

All arithmetic methods on :class:`FieldSpec` accept Python ints or integer
numpy arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from sympy import Poly, factorint, isprime
from sympy.abc import x as _x

MAX_ORDER = 1 << 20
_TABLE_LIMIT = 1024  # full add/mul tables below this order

__all__ = [
    "FieldSpec",
    "FieldElement",
    "QuadraticExtension",
    "make_field",
    "quadratic_extension",
    "minimal_polynomial",
    "find_irreducible",
]


def _digits(idx: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(idx % p)
        idx //= p
    return out


def _index(coeffs: Sequence[int], p: int) -> int:
    idx = 0
    for c in reversed(list(coeffs)):
        idx = idx * p + (int(c) % p)
    return idx


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    # sympy wants the leading coefficient first
    return Poly(list(reversed(list(coeffs))), _x, modulus=p).is_irreducible


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``m`` over GF(p).

    Candidates are scanned by the integer encoding of their lower
    coefficients, so the result is reproducible.  For ``m = 1`` this is
    the polynomial ``x``.
    """
    for low in range(p**m):
        coeffs = _digits(low, p, m) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ValueError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


class FieldSpec:
    """The finite field GF(p^m) with a fixed defining polynomial.

    Args:
        p: Prime characteristic.
        m: Extension degree, at least 1.
        modulus: Monic irreducible polynomial of degree ``m`` as a
            coefficient list, lowest degree first.  Defaults to
            :func:`find_irreducible`.

    Raises:
        ValueError: If ``p`` is not prime, ``m < 1``, the order exceeds
            ``2**20`` or the modulus is not monic irreducible of degree ``m``.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        p, m = int(p), int(m)
        if not isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        if p**m > MAX_ORDER:
            raise ValueError(f"field order {p}^{m} exceeds the cap {MAX_ORDER}")
        if modulus is None:
            modulus = find_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus {modulus} is not monic of degree {m}")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._build_tables()

    # ------------------------------------------------------------------
    # table construction

    def _poly_mulmod(self, a: list[int], b: list[int]) -> list[int]:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for deg in range(len(prod) - 1, m - 1, -1):
            c = prod[deg] % p
            if c:
                for i in range(m + 1):
                    prod[deg - m + i] -= c * mod[i]
        return [c % p for c in prod[:m]]

    def _poly_pow(self, a: list[int], e: int) -> list[int]:
        result = [1] + [0] * (self.m - 1)
        base = a
        while e:
            if e & 1:
                result = self._poly_mulmod(result, base)
            base = self._poly_mulmod(base, base)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        q, p, m = self.q, self.p, self.m
        if q == 2:
            return 1
        one = [1] + [0] * (m - 1)
        exps = [(q - 1) // r for r in factorint(q - 1)]
        for cand in range(2, q):
            c = _digits(cand, p, m)
            if all(self._poly_pow(c, e) != one for e in exps):
                return cand
        raise AssertionError("no primitive element found")  # pragma: no cover

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        self.primitive = self._find_primitive()
        n = q - 1
        exp = np.zeros(2 * n + 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        g = _digits(self.primitive, p, m)
        cur = [1] + [0] * (m - 1)
        for i in range(n):
            idx = _index(cur, p)
            exp[i] = idx
            log[idx] = i
            cur = self._poly_mulmod(cur, g)
        exp[n : 2 * n] = exp[:n]
        exp[2 * n] = exp[0]
        self._exp = exp
        self._log = log
        pw = p ** np.arange(m, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        digits = (idx[:, None] // pw[None, :]) % p
        self._pw = pw
        self._digits_tab = digits
        self._neg = ((-digits) % p) @ pw
        # Zech logarithm: 1 + g^r = g^zech[r], or -1 when the sum vanishes
        plus_one = exp[:n] + np.where(digits[exp[:n], 0] == p - 1, -(p - 1), 1)
        self._zech = np.where(plus_one == 0, -1, log[plus_one])
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(n - log[1:]) % n]
        self._inv = inv
        self._add_tab = None
        self._mul_tab = None
        if q <= _TABLE_LIMIT:
            a = idx[:, None]
            b = idx[None, :]
            self._add_tab = self._zech_add(a, b)
            self._mul_tab = self._log_mul(a, b)

    # ------------------------------------------------------------------
    # raw kernels

    def _zech_add(self, a, b):
        n = self.q - 1
        la = self._log[a]
        lb = self._log[b]
        z = self._zech[(lb - la) % n]
        s = np.where(z < 0, 0, self._exp[(la + np.maximum(z, 0)) % n])
        return np.where(a == 0, b, np.where(b == 0, a, s)).astype(np.int64)

    def _log_mul(self, a, b):
        s = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, s).astype(np.int64)

    @staticmethod
    def _wrap(res, scalar: bool):
        return int(res) if scalar else res

    @staticmethod
    def _prep(a):
        if isinstance(a, FieldElement):
            a = a.value
        if isinstance(a, (int, np.integer)):
            return np.int64(a), True
        return np.asarray(a, dtype=np.int64), False

    def _check_range(self, arr) -> None:
        if np.any((arr < 0) | (arr >= self.q)):
            raise ValueError(f"element index out of range for GF({self.q})")

    # ------------------------------------------------------------------
    # public arithmetic

    def add(self, a, b):
        """Sum of two elements (or arrays of elements)."""
        a, sa = self._prep(a)
        b, sb = self._prep(b)
        if self._add_tab is not None:
            res = self._add_tab[a, b]
        else:
            res = self._zech_add(a, b)
        return self._wrap(res, sa and sb)

    def neg(self, a):
        a, sa = self._prep(a)
        return self._wrap(self._neg[a], sa)

    def sub(self, a, b):
        b, sb = self._prep(b)
        return self.add(a, self._neg[b] if not sb else int(self._neg[b]))

    def mul(self, a, b):
        """Product of two elements (or arrays of elements)."""
        a, sa = self._prep(a)
        b, sb = self._prep(b)
        if self._mul_tab is not None:
            res = self._mul_tab[a, b]
        else:
            res = self._log_mul(a, b)
        return self._wrap(res, sa and sb)

    def inv(self, a):
        """Multiplicative inverse.

        Raises:
            ZeroDivisionError: If any entry is zero.
        """
        a, sa = self._prep(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._wrap(self._inv[a], sa)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        """``a ** e`` for an integer exponent; negative exponents need ``a != 0``."""
        a, sa = self._prep(a)
        e = int(e)
        if e < 0:
            if np.any(a == 0):
                raise ZeroDivisionError("negative power of zero")
            a = self._inv[a]
            e = -e
        if e == 0:
            res = np.ones_like(a)
        else:
            n = self.q - 1
            res = np.where(a == 0, 0, self._exp[(self._log[a] * (e % n)) % n])
        return self._wrap(res, sa)

    def log(self, a):
        """Discrete log to the base :attr:`primitive`; zero raises."""
        a, sa = self._prep(a)
        if np.any(a == 0):
            raise ValueError("log of zero")
        return self._wrap(self._log[a], sa)

    def exp(self, e):
        """``g ** e`` for the table generator ``g``."""
        e, se = self._prep(e)
        return self._wrap(self._exp[e % (self.q - 1)], se)

    def sum(self, a, axis=None):
        """Field sum of an index array along ``axis`` (digit-wise mod p)."""
        a = np.asarray(a, dtype=np.int64)
        d = self._digits_tab[a]
        if axis is None:
            return int((d.reshape(-1, self.m).sum(axis=0) % self.p) @ self._pw)
        ax = axis if axis >= 0 else a.ndim + axis
        return (d.sum(axis=ax) % self.p) @ self._pw

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if int(a) == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        return n // np.gcd(int(self._log[int(a)]), n)

    # ------------------------------------------------------------------
    # conversions

    def coeffs(self, a: int) -> list[int]:
        """Coefficient vector of ``a``, lowest degree first."""
        return _digits(int(a), self.p, self.m)

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise ValueError(f"too many coefficients for GF({self.q})")
        return _index(coeffs, self.p)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError("element belongs to a different field")
            return value
        v = int(value)
        if not 0 <= v < self.q:
            raise ValueError(f"index {v} out of range for GF({self.q})")
        return FieldElement(self, v)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    @property
    def gen(self) -> int:
        """Index of the polynomial variable ``x`` (the defining root)."""
        return self.p if self.m > 1 else int((-self.modulus[0]) % self.p)

    def format(self, a: int, var: str = "w") -> str:
        """Human-readable polynomial form, e.g. ``2+w`` or ``w^2``."""
        cs = self.coeffs(a)
        terms = []
        for i, c in enumerate(cs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = var if i == 1 else f"{var}^{i}"
                terms.append(mon if c == 1 else f"{c}{mon}")
        return "+".join(terms) if terms else "0"

    # ------------------------------------------------------------------
    # identity and serialization

    def _key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(d: dict) -> FieldSpec:
        return make_field(d["p"], d["m"], d.get("modulus"))

    @staticmethod
    def from_json(text: str) -> FieldSpec:
        return FieldSpec.from_dict(json.loads(text))


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, m: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    return FieldSpec(p, m, modulus)


def make_field(p: int, m: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Return the (cached) field GF(p^m), optionally with a modulus override.

    >>> F = make_field(3, 2, [1, 0, 1])   # w^2 = -1
    >>> F.mul(F.gen, F.gen)
    2
    """
    if modulus is not None:
        modulus = tuple(int(c) % int(p) for c in modulus)
    return _cached_field(int(p), int(m), modulus)


@dataclass(frozen=True)
class FieldElement:
    """A field element bound to its field; supports the usual operators."""

    spec: FieldSpec
    value: int

    def _other(self, o) -> int:
        if isinstance(o, FieldElement):
            if o.spec != self.spec:
                raise ValueError("elements from different fields")
            return o.value
        return int(self.spec(o).value)

    def __add__(self, o):
        return FieldElement(self.spec, self.spec.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return FieldElement(self.spec, self.spec.sub(self._other(o), self.value))

    def __mul__(self, o):
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.spec, self.spec.div(self.value, self._other(o)))

    def __rtruediv__(self, o):
        return FieldElement(self.spec, self.spec.div(self._other(o), self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF({self.spec.q})[{self.spec.format(self.value)}]"


def minimal_polynomial(F: FieldSpec, a: int) -> tuple[int, ...]:
    """Minimal polynomial of ``a`` over the prime field, lowest degree first."""
    conjugates = [int(a)]
    while True:
        nxt = F.pow(conjugates[-1], F.p)
        if nxt == conjugates[0]:
            break
        conjugates.append(nxt)
    poly = [1]  # coefficients in F, lowest first
    for c in conjugates:
        shifted = [0] + poly
        scaled = [F.mul(F.neg(c), t) for t in poly] + [0]
        poly = [F.add(u, v) for u, v in zip(shifted, scaled)]
    if any(t >= F.p for t in poly):
        raise AssertionError("minimal polynomial left the prime field")  # pragma: no cover
    return tuple(int(t) for t in poly)


class QuadraticExtension:
    """The pair GF(q) ⊂ GF(q^2) with Frobenius conjugation and the norm.

    Args:
        base: The field GF(q).
        ext: The field GF(q^2); must share the characteristic.
        embed_image: Index in ``ext`` of the image of ``base.gen``.  By
            default the minimal-index root of ``base.modulus`` in ``ext``.
    """

    def __init__(self, base: FieldSpec, ext: FieldSpec, embed_image: int | None = None):
        if base.p != ext.p or ext.m != 2 * base.m:
            raise ValueError("ext must be the degree-2 extension of base")
        self.base = base
        self.ext = ext
        self.q = base.q
        E = ext
        if base.m == 1:
            image = np.arange(base.q, dtype=np.int64)
        else:
            roots = [
                z
                for z in range(E.q)
                if self._eval_poly(base.modulus, z) == 0
            ]
            if embed_image is None:
                embed_image = roots[0]
            elif int(embed_image) not in roots:
                raise ValueError("embed_image is not a root of the base modulus")
            r = int(embed_image)
            powers = [1]
            for _ in range(base.m - 1):
                powers.append(E.mul(powers[-1], r))
            image = np.zeros(base.q, dtype=np.int64)
            for b in range(base.q):
                acc = 0
                for c, pw in zip(base.coeffs(b), powers):
                    acc = E.add(acc, E.mul(c, pw))
                image[b] = acc
        self.embed_table = image
        back = np.full(E.q, -1, dtype=np.int64)
        back[image] = np.arange(base.q)
        self._back = back
        allx = E.elements()
        self._norm_tab = E.pow(allx, self.q + 1)
        self._conj_tab = E.pow(allx, self.q)
        pre = np.zeros(E.q, dtype=np.int64)
        vals, first = np.unique(self._norm_tab, return_index=True)
        pre[vals] = first
        self._norm_preimage = pre
        self._xi = None

    def _eval_poly(self, coeffs, z: int) -> int:
        E = self.ext
        acc = 0
        for c in reversed(coeffs):
            acc = E.add(E.mul(acc, z), int(c))
        return acc

    # ------------------------------------------------------------------

    def embed(self, b):
        """Image of base element(s) ``b`` in the extension."""
        arr, scalar = FieldSpec._prep(b)
        return FieldSpec._wrap(self.embed_table[arr], scalar)

    def to_base(self, z):
        """Inverse of :meth:`embed`; raises if ``z`` is outside the subfield."""
        arr, scalar = FieldSpec._prep(z)
        out = self._back[arr]
        if np.any(out < 0):
            raise ValueError("element does not lie in the base field")
        return FieldSpec._wrap(out, scalar)

    def in_base(self, z) -> bool:
        arr, _ = FieldSpec._prep(z)
        return bool(np.all(self._back[arr] >= 0))

    def conj(self, z):
        """Frobenius conjugate ``z ** q``."""
        arr, scalar = FieldSpec._prep(z)
        return FieldSpec._wrap(self._conj_tab[arr], scalar)

    def norm_ext(self, z):
        """``z ** (q + 1)`` as an extension element (lies in the subfield)."""
        arr, scalar = FieldSpec._prep(z)
        return FieldSpec._wrap(self._norm_tab[arr], scalar)

    def norm(self, z):
        """``z ** (q + 1)`` expressed as a base-field element."""
        return self.to_base(self.norm_ext(z))

    def solve_norm_equation(self, c: int, *, in_ext: bool = False) -> int:
        """Minimal-index ``beta`` in GF(q^2) with ``N(beta) = c``.

        ``c`` is a base-field index unless ``in_ext`` is set, in which case it
        is an extension element that must lie in the subfield.

        Raises:
            ValueError: If ``c`` is zero or not in the subfield.
        """
        target = int(c) if in_ext else int(self.embed(int(c)))
        if in_ext and not self.in_base(target):
            raise ValueError("norm target must lie in the base field")
        if target == 0:
            raise ValueError("the norm equation N(x) = 0 only has x = 0")
        return int(self._norm_preimage[target])

    @property
    def xi(self) -> int:
        """Minimal-index generator of the subgroup of order q + 1."""
        if self._xi is None:
            E = self.ext
            for z in range(1, E.q):
                if E.order(z) == self.q + 1:
                    self._xi = z
                    break
        return self._xi

    def unity_subgroup(self) -> list[int]:
        """The q + 1 norm-one elements, listed as ``xi ** 0, xi ** 1, ...``."""
        return [int(self.ext.pow(self.xi, i)) for i in range(self.q + 1)]

    def base_units(self) -> list[int]:
        """GF(q)* embedded in the extension, ordered by base index."""
        return [int(v) for v in self.embed_table[1:]]

    def coset_representatives(self) -> list[int]:
        """Greedy minimal-index representatives of GF(q^2)* / GF(q)*, starting at 1."""
        E = self.ext
        units = np.asarray(self.base_units(), dtype=np.int64)
        covered = np.zeros(E.q, dtype=bool)
        reps = []
        for z in range(1, E.q):
            if covered[z]:
                continue
            reps.append(z)
            covered[E.mul(z, units)] = True
        return reps

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "ext": self.ext.to_dict(),
            "embed_image": int(self.embed(self.base.gen)) if self.base.m > 1 else None,
        }

    def __repr__(self) -> str:
        return f"QuadraticExtension(GF({self.q}) < GF({self.ext.q}))"


@functools.lru_cache(maxsize=None)
def _cached_extension(base: FieldSpec, ext: FieldSpec, embed_image) -> QuadraticExtension:
    return QuadraticExtension(base, ext, embed_image)


def quadratic_extension(
    q: int,
    *,
    ext_modulus: Sequence[int] | None = None,
    base_modulus: Sequence[int] | None = None,
    embed_image: int | None = None,
) -> QuadraticExtension:
    """Cached GF(q^2) / GF(q) pair for a prime power ``q``.

    Args:
        q: Order of the base field.
        ext_modulus: Optional defining polynomial of GF(q^2) over GF(p).
        base_modulus: Optional defining polynomial of GF(q) over GF(p).
        embed_image: Optional image of the base generator, see
            :class:`QuadraticExtension`.
    """
    fac = factorint(int(q))
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, a), = fac.items()
    base = make_field(p, a, base_modulus)
    ext = make_field(p, 2 * a, ext_modulus)
    return _cached_extension(base, ext, None if embed_image is None else int(embed_image))


def extension_of(F: FieldSpec) -> QuadraticExtension:
    """Default quadratic-extension view of an even-degree field ``F``."""
    if F.m % 2:
        raise ValueError(f"GF({F.q}) is not a quadratic extension")
    base = make_field(F.p, F.m // 2)
    return _cached_extension(base, F, None)
