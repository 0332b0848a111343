"""Weighted projective spaces over GF(q).

Points of WP(w0,...,wn) are orbits of nonzero coordinate tuples under the
scaling action lambda . (x0,...,xn) = (lambda^w0 x0, ..., lambda^wn xn).
The canonical representative of an orbit is its lexicographically minimal
tuple, compared coordinate-wise by element index; because tuples are
enumerated in ascending lexicographic order, the first member of an orbit
encountered during a sweep *is* its canonical representative.

For a point with support S = {i : x_i != 0} and k_S = gcd(w_i : i in S),
the scalars fixing the point are the k_S-th roots of unity in GF(q)^*, so
the group-theoretic ("geometric") stabilizer order is k_S while the number
of GF(q)-rational stabilizing scalars ("arithmetic") is gcd(k_S, q-1), and
orbit size * arithmetic order = q - 1.  Both conventions matter downstream:
point counting uses the arithmetic order, singular-point censuses default
to the geometric one, and every report names the convention it used.

Heights over GF(q) use the integer lift of an element (its index): the
height of a point is max over the support of lift(x_i)^(1/w_i), kept as an
exact (lift, root) pair and compared by cross-exponentiation in integers.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import BudgetExceeded, ZeroTuple
from .gf import FieldSpec

DEFAULT_ENUM_BUDGET = 10**8

GEOMETRIC = "geometric"
ARITHMETIC = "arithmetic"


@dataclass(frozen=True)
class WeightSystem:
    """A tuple of positive integer weights; gcd 1 means well-formed."""

    weights: tuple[int, ...]

    def __init__(self, weights: Iterable[int]):
        ws = tuple(int(w) for w in weights)
        if not ws or any(w < 1 for w in ws):
            raise ValueError(f"weights must be positive integers, got {ws}")
        object.__setattr__(self, "weights", ws)

    @property
    def well_formed(self) -> bool:
        return functools.reduce(gcd, self.weights) == 1

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]


@dataclass(frozen=True)
class WPoint:
    """Canonical orbit representative with its stabilizer data."""

    rep: tuple[int, ...]
    support: tuple[int, ...]
    k_s: int
    stab_arith: int
    orbit_size: int

    @property
    def stab_geom(self) -> int:
        return self.k_s

    def stabilizer_order(self, convention: str) -> int:
        if convention == GEOMETRIC:
            return self.k_s
        if convention == ARITHMETIC:
            return self.stab_arith
        raise ValueError(f"unknown stabilizer convention {convention!r}")

    def to_json(self, ws: WeightSystem | None = None, field: FieldSpec | None = None) -> dict:
        record = {
            "rep": list(self.rep),
            "support": list(self.support),
            "kS": self.k_s,
            "stab_arith": self.stab_arith,
            "orbit": self.orbit_size,
        }
        if ws is not None:
            h = weighted_height(self, ws, field)
            record["height"] = {"lift": h.lift, "w": h.root}
        return record


@functools.total_ordering
class Height:
    """Exact value lift^(1/root); comparisons cross-exponentiate in ints.

    ``Height.INFINITE`` is an explicit top element (used for "no height
    threshold" in filtrations).  Integers coerce to root-1 heights, so
    ``height <= 4`` asks whether lift <= 4^root exactly.
    """

    __slots__ = ("lift", "root", "_infinite")
    __hash__ = None

    def __init__(self, lift: int, root: int = 1):
        if lift < 0 or root < 1:
            raise ValueError("height needs lift >= 0 and root >= 1")
        self.lift = int(lift)
        self.root = int(root)
        self._infinite = False

    INFINITE: "Height"

    @classmethod
    def coerce(cls, value) -> "Height":
        if isinstance(value, Height):
            return value
        if value == float("inf"):
            return cls.INFINITE
        as_int = int(value)
        if as_int != value:
            raise ValueError(f"height thresholds must be integers or inf, got {value}")
        return cls(as_int, 1)

    def __eq__(self, other) -> bool:
        other = Height.coerce(other)
        if self._infinite or other._infinite:
            return self._infinite and other._infinite
        return self.lift**other.root == other.lift**self.root

    def __lt__(self, other) -> bool:
        other = Height.coerce(other)
        if self._infinite:
            return False
        if other._infinite:
            return True
        return self.lift**other.root < other.lift**self.root

    def __float__(self) -> float:
        if self._infinite:
            return float("inf")
        return self.lift ** (1.0 / self.root)

    def __repr__(self) -> str:
        if self._infinite:
            return "Height(inf)"
        return f"Height({self.lift}^(1/{self.root}))"


Height.INFINITE = Height(1, 1)
Height.INFINITE._infinite = True


@dataclass(frozen=True)
class CensusEntry:
    point: tuple[int, ...] | str
    order: int

    def to_json(self) -> dict:
        ident = list(self.point) if isinstance(self.point, tuple) else self.point
        return {"point": ident, "order": self.order}


@dataclass(frozen=True)
class OrbifoldData:
    """Singular-point census: (identifier, stabilizer order >= 2) entries."""

    entries: tuple[CensusEntry, ...]
    convention: str = GEOMETRIC

    def __init__(self, entries: Iterable, convention: str = GEOMETRIC):
        normalized = []
        for entry in entries:
            if isinstance(entry, CensusEntry):
                normalized.append(entry)
            else:
                ident, order = entry
                if isinstance(ident, (list, tuple)):
                    ident = tuple(int(x) for x in ident)
                normalized.append(CensusEntry(ident, int(order)))
        object.__setattr__(self, "entries", tuple(normalized))
        object.__setattr__(self, "convention", convention)

    def orders(self) -> list[int]:
        return [e.order for e in self.entries]

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "entries": [e.to_json() for e in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OrbifoldData":
        return cls(
            [(e["point"], e["order"]) for e in obj.get("entries", [])],
            obj.get("convention", GEOMETRIC),
        )


# --- orbit machinery ------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _scaling_maps(weights: tuple[int, ...], field: FieldSpec) -> tuple[tuple[int, ...], ...]:
    """For each nonzero lambda, the tuple (lambda^w0, ..., lambda^wn)."""
    return tuple(
        tuple(field.pow(lam, w) for w in weights) for lam in range(1, field.q)
    )


def orbit_of(tup: Sequence[int], ws: WeightSystem, field: FieldSpec) -> set[tuple[int, ...]]:
    tup = tuple(int(x) for x in tup)
    return {
        tuple(field.mul(s, x) for s, x in zip(scales, tup))
        for scales in _scaling_maps(ws.weights, field)
    }


def point_from_canonical_rep(rep: tuple[int, ...], ws: WeightSystem, field: FieldSpec) -> WPoint:
    """Build a WPoint from a representative the caller guarantees canonical."""
    support = tuple(i for i, x in enumerate(rep) if x)
    k_s = functools.reduce(gcd, (ws[i] for i in support))
    stab = gcd(k_s, field.q - 1)
    return WPoint(
        rep=rep,
        support=support,
        k_s=k_s,
        stab_arith=stab,
        orbit_size=(field.q - 1) // stab,
    )


def canonical_rep(tup: Sequence[int], ws: WeightSystem, field: FieldSpec) -> WPoint:
    """Lexicographically minimal member of the scaling orbit of ``tup``."""
    tup = tuple(field.check(int(x)) for x in tup)
    if len(tup) != len(ws):
        raise ValueError(f"tuple length {len(tup)} != weight count {len(ws)}")
    if not any(tup):
        raise ZeroTuple("the zero tuple does not define a projective point")
    rep = min(orbit_of(tup, ws, field))
    return point_from_canonical_rep(rep, ws, field)


def enumerate_wp_points(
    ws: WeightSystem, field: FieldSpec, budget: int = DEFAULT_ENUM_BUDGET
) -> list[WPoint]:
    """One canonical WPoint per orbit, sorted by representative.

    Sweeps all q^(n+1) tuples in ascending lexicographic order; the first
    unseen member of each orbit is its canonical representative.
    """
    n1 = len(ws)
    if field.q**n1 > budget:
        raise BudgetExceeded(
            f"{field.q}^{n1} tuples exceed the enumeration budget {budget}"
        )
    seen: set[tuple[int, ...]] = set()
    points: list[WPoint] = []
    for tup in itertools.product(range(field.q), repeat=n1):
        if not any(tup) or tup in seen:
            continue
        orbit = orbit_of(tup, ws, field)
        seen.update(orbit)
        point = point_from_canonical_rep(tup, ws, field)
        if len(orbit) != point.orbit_size:
            raise AssertionError(
                f"orbit size {len(orbit)} != (q-1)/gcd(k_S, q-1) = {point.orbit_size}"
            )
        points.append(point)
    return points


def count_wp_points_formula(ws: WeightSystem, q: int) -> int:
    """Closed-form rational point count: sum over nonempty supports S of
    (q-1)^(|S|-1) * gcd(k_S, q-1)."""
    n1 = len(ws)
    total = 0
    for mask in range(1, 1 << n1):
        support = [i for i in range(n1) if mask >> i & 1]
        k_s = functools.reduce(gcd, (ws[i] for i in support))
        total += (q - 1) ** (len(support) - 1) * gcd(k_s, q - 1)
    return total


def weighted_height(point: WPoint, ws: WeightSystem, field: FieldSpec | None = None) -> Height:
    """max over the support of lift(x_i)^(1/w_i), as an exact Height.

    The lift of an element is its integer index, so coordinates equal to
    the multiplicative identity contribute exactly 1.  Ties are broken by
    coordinate order (first maximal coordinate wins).
    """
    best: Height | None = None
    for i in point.support:
        candidate = Height(point.rep[i], ws[i])
        if best is None or candidate > best:
            best = candidate
    if best is None:  # pragma: no cover - WPoint construction forbids this
        raise ZeroTuple("point has empty support")
    return best


def singular_census(
    points: Sequence[WPoint], convention: str = GEOMETRIC
) -> OrbifoldData:
    """Every point whose chosen-convention stabilizer order exceeds 1."""
    entries = [
        CensusEntry(p.rep, p.stabilizer_order(convention))
        for p in points
        if p.stabilizer_order(convention) > 1
    ]
    return OrbifoldData(entries, convention)


@dataclass(frozen=True)
class SerreBound:
    """Result of the Serre-type point bound; interpretive index convention.

    With dim = len(weights) - 1 and p_k = (q^(k+1) - 1)/(q - 1) (p_k = 0
    for k < 0), the bound evaluated here is

        min( p_{dim-1},  floor((e / w1) * q^(dim-1)) + p_{dim-3} )

    where w1 is the second-smallest weight and must equal 1.  The source
    material states the middle exponent inconsistently; this convention is
    the one that reproduces its own worked instances, and ``interpretive``
    stays True on every applicable result as a reminder.
    """

    value: int | None
    applicable: bool
    interpretive: bool = True

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "applicable": self.applicable,
            "interpretive": self.interpretive,
        }


def _projective_count(k: int, q: int) -> int:
    if k < 0:
        return 0
    return (q ** (k + 1) - 1) // (q - 1)


def serre_bound(ws: WeightSystem, degree: int, q: int) -> SerreBound:
    """Upper bound on hypersurface point counts; inapplicable results are
    flagged, never fabricated."""
    sorted_ws = sorted(ws.weights)
    if len(sorted_ws) < 2 or sorted_ws[1] != 1:
        return SerreBound(value=None, applicable=False)
    dim = len(ws) - 1
    w1 = sorted_ws[1]
    first = _projective_count(dim - 1, q)
    second = (degree * q ** (dim - 1)) // w1 + _projective_count(dim - 3, q)
    return SerreBound(value=min(first, second), applicable=True)
