"""The graded coordinate ring GF(q)[x0..xn] with deg x_i = w_i.

Monomials are exponent tuples; a polynomial is a map from exponent tuples
to nonzero field-element indices.  Polynomial text input uses the
variables x0..xn with integer coefficients (reduced mod p), products (*),
powers (^ or **), parentheses, and +/-; parsing goes through the stdlib
``ast`` module, so no string is ever evaluated.

Hypersurface enumeration works on the full coordinate grid with
vectorised per-coordinate power tables, then groups the zero locus into
scaling orbits.  Counting uses the orbit-stabilizer identity
(sum of arithmetic stabilizer orders) / (q - 1), while point listing
walks orbits explicitly; the two paths are independent and cross-checked
in the test suite.
"""

from __future__ import annotations

import ast
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    NonHomogeneous,
    ZeroPolynomial,
)
from .gf import FieldElement, FieldSpec, embed
from .wgeom import (
    DEFAULT_ENUM_BUDGET,
    WeightSystem,
    WPoint,
    orbit_of,
    point_from_canonical_rep,
)

_CHUNK = 1 << 20


def weighted_degree(exponents: Sequence[int], ws: WeightSystem) -> int:
    return sum(w * a for w, a in zip(ws, exponents))


@functools.lru_cache(maxsize=None)
def _den(weights: tuple[int, ...], d: int) -> int:
    if d < 0:
        return 0
    if not weights:
        return 1 if d == 0 else 0
    w0 = weights[0]
    return sum(_den(weights[1:], d - w0 * a) for a in range(d // w0 + 1))


def den(ws: WeightSystem, d: int) -> int:
    """Number of monomials of weighted degree d (dimension of S_d)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return _den(tuple(ws), d)


def enumerate_monomials(ws: WeightSystem, d: int) -> list[tuple[int, ...]]:
    """All exponent tuples of weighted degree d, in graded-lex order
    (within the fixed degree: descending lexicographic, x0 heaviest)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], rest: tuple[int, ...], remaining: int):
        if not rest:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        w0 = rest[0]
        for a in range(remaining // w0, -1, -1):
            rec(prefix + [a], rest[1:], remaining - w0 * a)

    rec([], tuple(ws), d)
    return out


class GradedPolynomial:
    """Sparse polynomial over GF(q): exponent tuple -> nonzero coefficient."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms: dict[tuple[int, ...], int]):
        self.field = field
        self.nvars = nvars
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(int(a) for a in exps)
            if len(exps) != nvars or any(a < 0 for a in exps):
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            coeff = field.check(int(coeff))
            if coeff:
                clean[exps] = coeff
        self.terms = clean

    @classmethod
    def parse(cls, field: FieldSpec, nvars: int, text: str) -> "GradedPolynomial":
        return _parse_polynomial(field, nvars, text)

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, value: int) -> "GradedPolynomial":
        return cls(field, nvars, {(0,) * nvars: value % field.p if field.e == 1 else value})

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending lexicographic exponent order (deterministic)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def evaluate(self, point: Sequence[int]) -> FieldElement:
        f = self.field
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for exps, coeff in self.terms.items():
            v = coeff
            for x, a in zip(point, exps):
                if a:
                    v = f.mul(v, f.pow(int(x), a))
            total = f.add(total, v)
        return total

    def degrees(self, ws: WeightSystem) -> tuple[int, ...]:
        """Distinct weighted degrees present, ascending."""
        return tuple(sorted({weighted_degree(e, ws) for e in self.terms}))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            if coeff != 1 or not any(exps):
                factors.append(str(coeff))
            for i, a in enumerate(exps):
                if a == 1:
                    factors.append(f"x{i}")
                elif a > 1:
                    factors.append(f"x{i}^{a}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GradedPolynomial({self.to_text()!r} over GF({self.field.q}))"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedPolynomial)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, tuple(self.sorted_terms())))

    def map_coefficients(self, ext: FieldSpec) -> "GradedPolynomial":
        """Push coefficients through the canonical embedding into ``ext``."""
        return GradedPolynomial(
            ext,
            self.nvars,
            {e: embed(self.field, ext, c) for e, c in self.terms.items()},
        )


@dataclass(frozen=True)
class Homogeneity:
    homogeneous: bool
    degree: int | None
    degrees: tuple[int, ...]


def is_weighted_homogeneous(f: GradedPolynomial, ws: WeightSystem) -> Homogeneity:
    if f.is_zero():
        raise ZeroPolynomial("homogeneity of the zero polynomial is undefined")
    degs = f.degrees(ws)
    if len(degs) == 1:
        return Homogeneity(True, degs[0], degs)
    return Homogeneity(False, None, degs)


@dataclass(frozen=True)
class Hypersurface:
    """Zero set of a weighted-homogeneous polynomial in WP(w)."""

    ws: WeightSystem
    f: GradedPolynomial
    field: FieldSpec
    degree: int

    def __init__(self, ws: WeightSystem, f: GradedPolynomial, field: FieldSpec):
        if f.field != field:
            raise ValueError("polynomial field does not match hypersurface field")
        if f.nvars != len(ws):
            raise ValueError("variable count does not match weight count")
        verdict = is_weighted_homogeneous(f, ws)
        if not verdict.homogeneous:
            raise NonHomogeneous(
                f"polynomial has mixed weighted degrees {list(verdict.degrees)}"
            )
        object.__setattr__(self, "ws", ws)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "degree", verdict.degree)

    def over(self, ext: FieldSpec) -> "Hypersurface":
        return Hypersurface(self.ws, self.f.map_coefficients(ext), ext)


# --- polynomial parsing -------------------------------------------------------------


def _parse_polynomial(field: FieldSpec, nvars: int, text: str) -> GradedPolynomial:
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from exc

    def const(c: int) -> dict:
        c = c % field.p  # integer literals live in the prime subfield
        return {(0,) * nvars: c} if c else {}

    def padd(a: dict, b: dict) -> dict:
        out = dict(a)
        for e, c in b.items():
            s = field.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    def pneg(a: dict) -> dict:
        return {e: field.neg(c) for e, c in a.items()}

    def pmul(a: dict, b: dict) -> dict:
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = field.add(out.get(e, 0), field.mul(ca, cb))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return out

    def walk(node) -> dict:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int):
                raise ValueError(f"only integer coefficients allowed, got {node.value!r}")
            return const(node.value)
        if isinstance(node, ast.Name):
            name = node.id
            if not name.startswith("x") or not name[1:].isdigit():
                raise ValueError(f"unknown variable {name!r} (use x0..x{nvars - 1})")
            i = int(name[1:])
            if i >= nvars:
                raise ValueError(f"variable {name!r} exceeds x{nvars - 1}")
            e = [0] * nvars
            e[i] = 1
            return {tuple(e): 1}
        if isinstance(node, ast.UnaryOp):
            inner = walk(node.operand)
            if isinstance(node.op, ast.USub):
                return pneg(inner)
            if isinstance(node.op, ast.UAdd):
                return inner
            raise ValueError("unsupported unary operator")
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                n = node.right.value
                if n < 0:
                    raise ValueError("negative exponents are not polynomial")
                acc = const(1)
                for _ in range(n):
                    acc = pmul(acc, base)
                return acc
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return padd(left, right)
            if isinstance(node.op, ast.Sub):
                return padd(left, pneg(right))
            if isinstance(node.op, ast.Mult):
                return pmul(left, right)
            raise ValueError(f"unsupported operator {type(node.op).__name__}")
        raise ValueError(f"unsupported syntax {type(node).__name__}")

    return GradedPolynomial(field, nvars, walk(tree))


# --- grid evaluation ------------------------------------------------------------------


def _zero_flats(
    f: GradedPolynomial,
    field: FieldSpec,
    budget: int,
    fixed: dict[int, int] | None = None,
) -> Iterator[np.ndarray]:
    """Yield flat grid indices (ascending) where f vanishes.

    The grid ranges over all coordinates not in ``fixed``; flat index
    digits are base q, most significant digit = x0 (so ascending flat
    order is ascending lexicographic tuple order).
    """
    q = field.q
    fixed = fixed or {}
    free = [i for i in range(f.nvars) if i not in fixed]
    total = q ** len(free)
    if total > budget:
        raise BudgetExceeded(f"{q}^{len(free)} tuples exceed the budget {budget}")
    pow_maps: dict[tuple[int, int], np.ndarray] = {}
    for exps in f.terms:
        for i in free:
            if (i, exps[i]) not in pow_maps:
                pow_maps[(i, exps[i])] = field.pow_map(exps[i])
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        coords: dict[int, np.ndarray] = {}
        for pos, i in enumerate(free):
            coords[i] = (flat // q ** (len(free) - 1 - pos)) % q
        acc = np.zeros(len(flat), dtype=np.int64)
        for exps, coeff in f.terms.items():
            term = np.full(len(flat), coeff, dtype=np.int64)
            for i in free:
                if exps[i]:
                    term = field.mul_arr(term, pow_maps[(i, exps[i])][coords[i]])
            for i, value in fixed.items():
                if exps[i]:
                    term = field.mul_arr(term, np.int64(field.pow(value, exps[i])))
            acc = field.add_arr(acc, term)
        yield flat[acc == 0]


def _flat_to_tuple(flat: int, q: int, width: int) -> tuple[int, ...]:
    out = []
    for pos in range(width):
        out.append((flat // q ** (width - 1 - pos)) % q)
    return tuple(out)


def projective_solution_classes(
    f: GradedPolynomial,
    ws: WeightSystem,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> list[WPoint]:
    """Nonzero solutions of f = 0 modulo the weighted scaling action.

    For weighted-homogeneous f the zero set is a union of orbits, so the
    classes are exactly the rational points of the hypersurface and each
    representative is the lexicographic minimum of its orbit.  The
    operation is also defined for inhomogeneous f, where the scaling
    relation identifies two solutions whenever some lambda carries one to
    the other: the representative is then the smallest *solution* in its
    class, and the stabilizer/orbit fields still describe the ambient
    orbit (which may contain non-solutions).  Class counts of
    inhomogeneous zero sets are reported with that caveat downstream.
    """
    field, q = f.field, f.field.q
    seen: set[tuple[int, ...]] = set()
    points: list[WPoint] = []
    for zero_batch in _zero_flats(f, field, budget):
        for flat in zero_batch.tolist():
            if flat == 0:
                continue  # origin is not a projective point
            tup = _flat_to_tuple(flat, q, f.nvars)
            if tup in seen:
                continue
            orbit = orbit_of(tup, ws, field)
            seen.update(orbit)
            points.append(point_from_canonical_rep(tup, ws, field))
    return points


def hypersurface_points(
    h: Hypersurface,
    mode: str = "projective",
    chart: int | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> list:
    """Rational points of the hypersurface.

    mode="projective": canonical orbit representatives (WPoint), sorted.
    mode="affine" with chart=i: solutions with x_i = 1 substituted
    (requires weight-1 coordinate i), returned as full coordinate tuples.
    For raw affine solution sets of arbitrary polynomials (no
    homogenisation), use :func:`affine_points`.
    """
    if mode == "projective":
        return projective_solution_classes(h.f, h.ws, budget)
    if mode == "affine":
        if chart is None:
            raise ValueError("affine mode on a hypersurface needs chart=i")
        if h.ws[chart] != 1:
            raise ValueError(
                f"chart coordinate x{chart} has weight {h.ws[chart]}; charts need weight 1"
            )
        field, q = h.field, h.field.q
        out = []
        for zero_batch in _zero_flats(h.f, field, budget, fixed={chart: 1}):
            for flat in zero_batch.tolist():
                partial = _flat_to_tuple(flat, q, h.f.nvars - 1)
                tup = partial[:chart] + (1,) + partial[chart:]
                out.append(tup)
        return out
    raise ValueError(f"unknown mode {mode!r}")


def projective_class_count(
    f: GradedPolynomial,
    ws: WeightSystem,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> int:
    """Number of scaling classes of nonzero solutions of f = 0.

    For weighted-homogeneous f this uses the orbit-stabilizer identity,
    summing gcd(k_S, q-1) over nonzero solutions and dividing by q-1;
    otherwise it falls back to the class walk of
    :func:`projective_solution_classes` (the identity assumes the zero
    set is a union of orbits).
    """
    field, q = f.field, f.field.q
    nvars = f.nvars
    if not is_weighted_homogeneous(f, ws).homogeneous:
        return len(projective_solution_classes(f, ws, budget))
    # arithmetic stabilizer order per support bitmask
    stab = np.zeros(1 << nvars, dtype=np.int64)
    for mask in range(1, 1 << nvars):
        k_s = functools.reduce(gcd, (ws[i] for i in range(nvars) if mask >> i & 1))
        stab[mask] = gcd(k_s, q - 1)
    total = 0
    for zero_batch in _zero_flats(f, field, budget):
        if zero_batch.size == 0:
            continue
        masks = np.zeros(len(zero_batch), dtype=np.int64)
        for pos in range(nvars):
            coord = (zero_batch // q ** (nvars - 1 - pos)) % q
            masks |= (coord != 0).astype(np.int64) << pos
        total += int(stab[masks].sum())  # mask 0 (origin) contributes stab 0
    if total % (q - 1) != 0:
        raise AssertionError("stabilizer sum not divisible by q-1; counting bug")
    return total // (q - 1)


def hypersurface_count(h: Hypersurface, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Projective point count of a (homogeneous) hypersurface."""
    return projective_class_count(h.f, h.ws, budget)


def affine_points(
    f: GradedPolynomial, budget: int = DEFAULT_ENUM_BUDGET
) -> list[tuple[int, ...]]:
    """All solutions of f = 0 on the affine grid GF(q)^nvars, ascending."""
    field, q = f.field, f.field.q
    out = []
    for zero_batch in _zero_flats(f, field, budget):
        for flat in zero_batch.tolist():
            out.append(_flat_to_tuple(flat, q, f.nvars))
    return out


# --- zeta functions -----------------------------------------------------------------


def zeta_counts(
    f: GradedPolynomial,
    ws: WeightSystem,
    depth: int,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> tuple[int, ...]:
    """(N_1, ..., N_depth): projective class counts over GF(q), ..., GF(q^depth).

    Extension fields come from the default-modulus table; coefficients are
    pushed through the canonical smallest-root embedding.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    counts = []
    base = f.field
    for r in range(1, depth + 1):
        if r == 1:
            counts.append(projective_class_count(f, ws, budget))
            continue
        ext = FieldSpec(base.p, base.e * r)
        counts.append(projective_class_count(f.map_coefficients(ext), ws, budget))
    return tuple(counts)


def space_counts(ws: WeightSystem, q: int, depth: int) -> tuple[int, ...]:
    """Point counts of the ambient space itself over extensions (closed form)."""
    from .wgeom import count_wp_points_formula

    return tuple(count_wp_points_formula(ws, q**r) for r in range(1, depth + 1))


def zeta_series(counts: Sequence[int]) -> list[Fraction]:
    """Coefficients of Z(T) = exp(sum N_r T^r / r) up to T^len(counts).

    Exact rationals via the logarithmic-derivative recurrence
    k z_k = sum_{j=1..k} N_j z_{k-j}.
    """
    depth = len(counts)
    z = [Fraction(1)]
    for k in range(1, depth + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += Fraction(counts[j - 1]) * z[k - j]
        z.append(acc / k)
    return z
