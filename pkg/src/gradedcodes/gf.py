"""Exact arithmetic in small finite fields GF(p^e).

Elements are represented by their *index*: the base-p integer encoding of
the coefficient vector of the element in the power basis of the modulus,

    index = c0 + c1*p + ... + c_{e-1}*p^{e-1}.

Index 0 is the additive identity and index 1 the multiplicative identity.
The index induces a total order on elements; that order is the single
source of truth for every "lexicographically smallest" choice made
downstream (orbit representatives, integer lifts of heights, default
moduli).

For e = 1 the modulus is the placeholder x - 0 and elements are residues
mod p.  For e > 1 a fixed table supplies a default modulus (the
lexicographically smallest irreducible monic polynomial, ordered by the
index encoding of its non-leading coefficients).  The default for GF(9) is
x^2 + 1, i.e. GF(9) = GF(3)[w]/(w^2 + 1); note that the residue class w
has multiplicative order 4, so it generates GF(9) as an algebra over GF(3)
but does *not* generate the unit group.

Supported regime: q <= 10^4 and e <= 6 (the default-modulus table contains
q = 32 and q = 64, hence the cap sits at 6, not 4).  Irreducibility of any
modulus, user-supplied or default, is verified by exhaustive trial
division at construction; at this scale that is instantaneous.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    InternalInvariantError,
    NonPrimeCharacteristic,
    NonSquareOrder,
    ReducibleModulus,
    UnsupportedOrder,
)

MAX_ORDER = 10_000
MAX_DEGREE = 6

# Largest field order for which dense q x q multiplication tables are
# precomputed (vectorised matrix kernels fall back to scalar arithmetic
# above this).
_TABLE_CAP = 1024

# Default modulus per supported order, constant term first, monic.
# Each entry is the lexicographically smallest irreducible monic
# polynomial of the right degree (ordered by index encoding); all are
# re-verified irreducible by the test suite.
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (1, 0, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
    81: (2, 1, 0, 0, 1),
    121: (1, 0, 1),
    125: (1, 1, 0, 1),
    169: (2, 0, 1),
}

FieldElement = int  # canonical index in [0, q)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- polynomial helpers over GF(p), coefficient lists, constant first -------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = _poly_trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= e/2."""
    e = len(modulus) - 1
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for idx in range(p**d):
            tail, t = [], idx
            for _ in range(d):
                tail.append(t % p)
                t //= p
            trial = tail + [1]
            if not _poly_rem(modulus, trial, p):
                return False
    return True


class FieldSpec:
    """A finite field GF(p^e) with a fixed modulus and element order.

    Identity (equality, hashing) is the triple (p, e, modulus); the
    multiplication tables built for vectorised kernels are caches, not
    state.
    """

    __slots__ = ("p", "e", "q", "modulus", "_mul_table", "_inv_table", "_add_table")

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if e < 1 or e > MAX_DEGREE or p**e > MAX_ORDER:
            raise UnsupportedOrder(
                f"GF({p}^{e}) outside the supported regime (q <= {MAX_ORDER}, e <= {MAX_DEGREE})"
            )
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            if modulus is not None:
                mod = tuple(c % p for c in modulus)
                if mod != (0, 1):
                    raise ReducibleModulus(
                        "prime fields use the placeholder modulus x - 0; omit it"
                    )
            self.modulus = (0, 1)
        else:
            if modulus is None:
                if self.q not in DEFAULT_MODULI:
                    raise UnsupportedOrder(
                        f"no default modulus for GF({self.q}); supply one explicitly"
                    )
                self.modulus = DEFAULT_MODULI[self.q]
            else:
                mod = tuple(c % p for c in modulus)
                if len(mod) != e + 1 or mod[-1] != 1:
                    raise ReducibleModulus(
                        f"modulus must be monic of degree {e} over GF({p})"
                    )
                if not _is_irreducible(mod, p):
                    raise ReducibleModulus(
                        f"modulus {list(mod)} is reducible over GF({p})"
                    )
                self.modulus = mod
            if not _is_irreducible(self.modulus, p):
                raise ReducibleModulus(
                    f"modulus {list(self.modulus)} is reducible over GF({p})"
                )
        self._mul_table = None
        self._inv_table = None
        self._add_table = None

    # --- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec({self.spec_string()!r})"

    def spec_string(self) -> str:
        """Serialise as the grammar used by the CLI and JSON files."""
        if self.e == 1 or self.modulus == DEFAULT_MODULI.get(self.q):
            return f"q={self.q}"
        mod = ",".join(str(c) for c in self.modulus)
        return f"p={self.p},e={self.e},mod={mod}"

    # --- element encoding ------------------------------------------------------

    def coeffs(self, x: FieldElement) -> list[int]:
        """Power-basis coefficient vector (c0..c_{e-1}) of an element index."""
        out = []
        for _ in range(self.e):
            out.append(x % self.p)
            x //= self.p
        return out

    def encode(self, coeffs: Iterable[int]) -> FieldElement:
        x = 0
        for i, c in enumerate(coeffs):
            x += (c % self.p) * self.p**i
        return x

    def check(self, x: FieldElement) -> FieldElement:
        if not 0 <= x < self.q:
            raise ValueError(f"element index {x} outside [0, {self.q})")
        return x

    def elements(self) -> range:
        """All q elements in increasing index order."""
        return range(self.q)

    # --- scalar arithmetic -------------------------------------------------------

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.e == 1:
            return (a + b) % self.p
        return self.encode(
            x + y for x, y in zip(self.coeffs(a), self.coeffs(b))
        )

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.e == 1:
            return (a - b) % self.p
        return self.encode(
            x - y for x, y in zip(self.coeffs(a), self.coeffs(b))
        )

    def neg(self, a: FieldElement) -> FieldElement:
        if self.e == 1:
            return (-a) % self.p
        return self.encode(-c for c in self.coeffs(a))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.e == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        return self.encode(_poly_rem(prod, self.modulus, self.p))

    def inv(self, a: FieldElement) -> FieldElement:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        if self._inv_table is not None:
            return int(self._inv_table[a])
        return self.pow(a, self.q - 2)

    def pow(self, a: FieldElement, n: int) -> FieldElement:
        """a**n; negative n inverts first (requires a != 0)."""
        if n < 0:
            a = self.inv(a)
            n = -n
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a: FieldElement) -> FieldElement:
        return self.pow(a, self.p)

    def conjugate(self, a: FieldElement) -> FieldElement:
        """The order-2 automorphism x -> x^q0 over GF(q0), q = q0^2."""
        if self.e % 2 != 0:
            raise NonSquareOrder(f"GF({self.q}) is not a quadratic extension")
        q0 = self.p ** (self.e // 2)
        return self.pow(a, q0)

    @property
    def has_conjugation(self) -> bool:
        return self.e % 2 == 0

    # --- vectorised arithmetic (numpy int64 arrays of indices) -----------------

    def _ensure_tables(self) -> bool:
        """Build dense scalar tables when affordable; True when available."""
        if self.e == 1:
            return False
        if self._mul_table is None and self.q <= _TABLE_CAP:
            q = self.q
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                ca = self.coeffs(a)
                for b in range(a, q):
                    prod = _poly_mul(ca, self.coeffs(b), self.p)
                    v = self.encode(_poly_rem(prod, self.modulus, self.p))
                    mul[a, b] = v
                    mul[b, a] = v
            add = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    v = self.encode(
                        x + y for x, y in zip(self.coeffs(a), self.coeffs(b))
                    )
                    add[a, b] = v
                    add[b, a] = v
            inv = np.zeros(q, dtype=np.int64)
            for a in range(1, q):
                inv[a] = self.pow(a, self.q - 2)
            self._mul_table = mul
            self._add_table = add
            self._inv_table = inv
        return self._mul_table is not None

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        if self._ensure_tables():
            return self._add_table[a, b]
        return np.frompyfunc(self.add, 2, 1)(a, b).astype(np.int64)

    def sub_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a - b) % self.p
        return self.add_arr(a, self.neg_arr(b))

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (-a) % self.p
        return np.frompyfunc(self.neg, 1, 1)(a).astype(np.int64)

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a * b) % self.p
        if self._ensure_tables():
            return self._mul_table[a, b]
        return np.frompyfunc(self.mul, 2, 1)(a, b).astype(np.int64)

    def matmul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact matrix product of index matrices (shapes (m,k) x (k,n))."""
        if self.e == 1:
            return (a.astype(np.int64) @ b.astype(np.int64)) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(a.shape[1]):
            out = self.add_arr(out, self.mul_arr(a[:, i : i + 1], b[i : i + 1, :]))
        return out

    def pow_map(self, n: int) -> np.ndarray:
        """Array of length q mapping every element index to its n-th power.

        0**0 is taken to be 1 (empty product), matching monomial evaluation.
        """
        out = np.zeros(self.q, dtype=np.int64)
        for x in range(self.q):
            out[x] = 1 if n == 0 else (self.pow(x, n) if x else 0)
        return out


def field_create(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated construction of GF(p^e); see module docstring for defaults."""
    return FieldSpec(p, e, modulus)


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q, with the default modulus."""
    if q < 2:
        raise UnsupportedOrder(f"no field of order {q}")
    p = 2
    while q % p != 0:
        p += 1
        if p * p > q:
            p = q
            break
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return FieldSpec(p, e)


def parse_field_spec(text: str) -> FieldSpec:
    """Parse the grammar ``q=<int>`` or ``p=<int>,e=<int>,mod=<c0,...,ce>``."""
    text = text.strip()
    if text.startswith("q="):
        return field_from_order(int(text[2:]))
    parts: dict[str, str] = {}
    for chunk in text.split(","):
        if "=" in chunk:
            key, _, value = chunk.partition("=")
            parts[key.strip()] = value
        elif parts:
            # continuation of the mod coefficient list
            parts["mod"] += "," + chunk
        else:
            raise ValueError(f"cannot parse field spec {text!r}")
    try:
        p = int(parts["p"])
        e = int(parts["e"])
    except KeyError as exc:
        raise ValueError(f"field spec {text!r} missing {exc}") from exc
    modulus = None
    if "mod" in parts:
        modulus = [int(c) for c in parts["mod"].split(",")]
    return FieldSpec(p, e, modulus)


def field_arith(spec: FieldSpec, op: str, *operands: FieldElement) -> FieldElement:
    """String-dispatch wrapper over the arithmetic methods (wire interface)."""
    for x in operands[: 2 if op != "pow" else 1]:
        spec.check(x)
    if op == "add":
        return spec.add(*operands)
    if op == "sub":
        return spec.sub(*operands)
    if op == "mul":
        return spec.mul(*operands)
    if op == "inv":
        return spec.inv(*operands)
    if op == "pow":
        return spec.pow(*operands)
    raise ValueError(f"unknown field operation {op!r}")


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    """All q elements in increasing index order (the canonical total order)."""
    return list(spec.elements())


def conjugate(spec: FieldSpec, x: FieldElement) -> FieldElement:
    return spec.conjugate(spec.check(x))


def embed(base: FieldSpec, ext: FieldSpec, x: FieldElement) -> FieldElement:
    """Canonical embedding GF(p^e) -> GF(p^{e*r}).

    Maps the base generator to the smallest-index root of the base modulus
    in the extension; for prime base fields this is the identity on
    residues.  Exhaustive root search is fine at the supported scale.
    """
    if base.p != ext.p or ext.e % base.e != 0:
        raise UnsupportedOrder(
            f"GF({base.q}) does not embed into GF({ext.q}) here"
        )
    if base.e == 1:
        return x % base.p
    root = _modulus_root(base, ext)
    acc = 0
    for i, c in enumerate(base.coeffs(x)):
        acc = ext.add(acc, ext.mul(c % ext.p, ext.pow(root, i)))
    return acc


def _modulus_root(base: FieldSpec, ext: FieldSpec) -> FieldElement:
    for z in ext.elements():
        acc = 0
        for i, c in enumerate(base.modulus):
            acc = ext.add(acc, ext.mul(c % ext.p, ext.pow(z, i)))
        if acc == 0:
            return z
    raise InternalInvariantError(  # pragma: no cover - subfield root always exists
        f"modulus of GF({base.q}) has no root in GF({ext.q})"
    )
