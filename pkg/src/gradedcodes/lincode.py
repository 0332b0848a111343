"""Classical linear codes over GF(q) built from evaluation maps.

A code is represented by its reduced row-echelon generator matrix, which
makes equality of codes equality of matrices.  Minimum distance and
weight distribution are computed by exhaustive enumeration of the q^k
message space whenever that fits the budget (the intended regime:
n <= ~120, k <= ~12); above budget only safe upper bounds are reported
and flagged non-exact.  Duals exist for both the Euclidean and the
Hermitian inner product (the latter requires square field order).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, EmptyPointSet, NonSquareOrder
from .gf import FieldSpec, field_from_order, parse_field_spec
from .gpoly import den, enumerate_monomials
from .matrix import MatrixGF
from .wgeom import WeightSystem, WPoint, enumerate_wp_points

DEFAULT_DISTANCE_BUDGET = 10**7

_ENUM_CHUNK = 1 << 15


class InnerProduct(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    HERMITIAN = "hermitian"


@dataclass(frozen=True)
class DistanceResult:
    value: int | None  # None <=> no nonzero codewords
    exact: bool
    method: str

    def to_json(self) -> dict:
        return {"value": self.value, "exact": self.exact, "method": self.method}


@dataclass(frozen=True)
class SelfOrthogonality:
    ok: bool
    witness: tuple[int, int] | None  # violating generator-row pair

    def __bool__(self) -> bool:
        return self.ok


class LinearCode:
    """A k-dimensional subspace of GF(q)^m via its RREF generator."""

    __slots__ = ("field", "length", "generator", "provenance", "_distance", "_weights")

    def __init__(self, field: FieldSpec, generator: MatrixGF, provenance: dict | None = None):
        reduced, _ = generator.rref()
        self.field = field
        self.length = generator.cols
        self.generator = reduced
        self.provenance = provenance or {}
        self._distance: DistanceResult | None = None
        self._weights: dict[int, int] | None = None

    @classmethod
    def from_rows(
        cls,
        field: FieldSpec,
        rows: Sequence[Sequence[int]],
        length: int | None = None,
        provenance: dict | None = None,
    ) -> "LinearCode":
        return cls(field, MatrixGF.from_rows(field, rows, cols=length), provenance)

    @property
    def k(self) -> int:
        return self.generator.rows

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.generator == other.generator
        )

    def __hash__(self):
        return hash(self.generator)

    def __repr__(self) -> str:
        return f"LinearCode[{self.length},{self.k}]_q={self.field.q}"

    def contains(self, other: "LinearCode") -> tuple[bool, np.ndarray | None]:
        """Row-space containment other <= self, with a witness vector on failure."""
        for i in range(other.generator.rows):
            row = other.generator.row(i)
            if not self.generator.contains_vector(row):
                return False, row
        return True, None

    # --- serialisation ----------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "field": self.field.spec_string(),
            "length": self.length,
            "generator": self.generator.tolist(),
            "provenance": _provenance_json(self.provenance),
            "cached": {},
        }
        if self._distance is not None:
            out["cached"]["min_distance"] = self._distance.to_json()
        if self._weights is not None:
            out["cached"]["weight_distribution"] = {
                "exact": True,
                "counts": {str(w): c for w, c in sorted(self._weights.items())},
            }
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LinearCode":
        field = parse_field_spec(obj["field"])
        code = cls.from_rows(
            field, obj["generator"], length=obj["length"], provenance=obj.get("provenance")
        )
        cached = obj.get("cached", {})
        if "min_distance" in cached:
            d = cached["min_distance"]
            code._distance = DistanceResult(d["value"], d["exact"], d["method"])
        if "weight_distribution" in cached:
            code._weights = {
                int(w): c for w, c in cached["weight_distribution"]["counts"].items()
            }
        return code


def _provenance_json(prov: dict) -> dict:
    out = {}
    for key, value in prov.items():
        if isinstance(value, MatrixGF):
            out[key] = value.tolist()
        elif isinstance(value, WPoint):
            out[key] = list(value.rep)
        elif isinstance(value, (list, tuple)) and value and isinstance(value[0], WPoint):
            out[key] = [list(p.rep) for p in value]
        elif isinstance(value, (list, tuple)):
            out[key] = [list(v) if isinstance(v, tuple) else v for v in value]
        elif isinstance(value, LinearCode):
            out[key] = f"[{value.length},{value.k}]_q={value.field.q}"
        else:
            out[key] = value
    return out


# --- construction -----------------------------------------------------------------


def evaluation_code(
    ws: WeightSystem,
    d: int,
    points: Sequence[WPoint],
    field: FieldSpec,
) -> LinearCode:
    """Image of the degree-d graded component under evaluation at points.

    Rows of the raw matrix are monomials in graded-lex order evaluated at
    the canonical representatives; the code dimension is its rank,
    den(ws, d) minus the degree-d slice of the vanishing ideal.
    """
    if not points:
        raise EmptyPointSet("evaluation needs at least one point")
    monomials = enumerate_monomials(ws, d)
    if not monomials:
        raise EmptyPointSet(f"no monomials of weighted degree {d} for weights {tuple(ws)}")
    rows = []
    for exps in monomials:
        row = []
        for p in points:
            v = 1
            for x, a in zip(p.rep, exps):
                if a:
                    v = field.mul(v, field.pow(int(x), a))
            row.append(v)
        rows.append(row)
    raw = MatrixGF.from_rows(field, rows)
    rep_dependent = any(p.k_s > 1 and d % p.k_s != 0 for p in points)
    provenance = {
        "kind": "evaluation",
        "weights": list(ws),
        "degree": d,
        "points": list(points),
        "monomials": [list(m) for m in monomials],
        "eval_matrix": raw,
        "rep_dependent": rep_dependent,
    }
    if rep_dependent:
        provenance["note"] = (
            "some points have nontrivial stabilizers with order not dividing "
            "the degree; codeword coordinates depend on the representative choice"
        )
    return LinearCode(field, raw, provenance)


def wprm_code(ws: WeightSystem, d: int, field: FieldSpec) -> LinearCode:
    """Evaluation code on the full weighted projective space."""
    return evaluation_code(ws, d, enumerate_wp_points(ws, field), field)


# --- duality / orthogonality ---------------------------------------------------------


def _require_hermitian_ok(field: FieldSpec, ip: InnerProduct):
    if ip == InnerProduct.HERMITIAN and not field.has_conjugation:
        raise NonSquareOrder(
            f"Hermitian inner product needs square field order, got q={field.q}"
        )


def dual_code(code: LinearCode, ip: InnerProduct = InnerProduct.EUCLIDEAN) -> LinearCode:
    """The [m, m-k] code of vectors ip-orthogonal to every codeword."""
    _require_hermitian_ok(code.field, ip)
    null = code.generator.nullspace()
    if ip == InnerProduct.HERMITIAN:
        null = null.conjugate()
    return LinearCode(
        code.field,
        null if null.rows else MatrixGF.zeros(code.field, 0, code.length),
        provenance={"kind": "dual", "of": code, "ip": ip.value},
    )


def inner_product(field: FieldSpec, u: np.ndarray, v: np.ndarray, ip: InnerProduct) -> int:
    _require_hermitian_ok(field, ip)
    total = 0
    for x, y in zip(u.tolist(), v.tolist()):
        if ip == InnerProduct.HERMITIAN:
            y = field.conjugate(y)
        total = field.add(total, field.mul(x, y))
    return total


def is_self_orthogonal(
    code: LinearCode, ip: InnerProduct = InnerProduct.EUCLIDEAN
) -> SelfOrthogonality:
    """True iff G sigma(G)^T = 0; on failure carries one violating row pair."""
    _require_hermitian_ok(code.field, ip)
    g = code.generator
    other = g.conjugate() if ip == InnerProduct.HERMITIAN else g
    gram = g.matmul(other.transpose())
    if gram.is_zero():
        return SelfOrthogonality(True, None)
    i, j = np.argwhere(gram.data)[0]
    return SelfOrthogonality(False, (int(i), int(j)))


# --- enumeration: distance and weights --------------------------------------------------


def _codeword_batches(code: LinearCode) -> Iterator[np.ndarray]:
    """Yield batches of all q^k codewords (message 0 included, first)."""
    field, g = code.field, code.generator.data
    k, q = code.k, code.field.q
    total = q**k
    for start in range(0, total, _ENUM_CHUNK):
        idx = np.arange(start, min(start + _ENUM_CHUNK, total), dtype=np.int64)
        msgs = np.empty((len(idx), k), dtype=np.int64)
        for j in range(k):
            msgs[:, j] = (idx // q ** (k - 1 - j)) % q
        yield field.matmul_arr(msgs, g)


def min_distance(code: LinearCode, budget: int = DEFAULT_DISTANCE_BUDGET) -> DistanceResult:
    """Exact minimum weight when q^k fits the budget, else a safe upper bound."""
    if code._distance is not None and code._distance.exact:
        return code._distance
    if code.k == 0:
        result = DistanceResult(None, True, "no nonzero codewords")
    elif code.field.q**code.k <= budget:
        best = code.length + 1
        first = True
        for batch in _codeword_batches(code):
            weights = np.count_nonzero(batch, axis=1)
            if first:
                weights = weights[1:]  # drop the zero message
                first = False
            if weights.size:
                best = min(best, int(weights.min()))
        result = DistanceResult(best, True, "exhaustive")
    else:
        singleton = code.length - code.k + 1
        row_min = int(np.count_nonzero(code.generator.data, axis=1).min())
        result = DistanceResult(min(singleton, row_min), False, "upper-bound")
    code._distance = result
    return result


def weight_distribution(
    code: LinearCode, budget: int = DEFAULT_DISTANCE_BUDGET
) -> dict[int, int]:
    """weight -> count over all q^k codewords."""
    if code._weights is not None:
        return dict(code._weights)
    if code.field.q**code.k > budget:
        raise BudgetExceeded(
            f"q^k = {code.field.q}^{code.k} exceeds the enumeration budget {budget}"
        )
    counts = np.zeros(code.length + 1, dtype=np.int64)
    for batch in _codeword_batches(code):
        weights = np.count_nonzero(batch, axis=1)
        counts += np.bincount(weights, minlength=code.length + 1)
    dist = {w: int(c) for w, c in enumerate(counts.tolist()) if c}
    code._weights = dist
    if code._distance is None or not code._distance.exact:
        positive = [w for w in dist if w > 0]
        code._distance = DistanceResult(
            min(positive) if positive else None, True, "weight distribution"
        )
    return dict(dist)


# --- WPRM closed-form dimension (experimental) -----------------------------------------


@dataclass(frozen=True)
class WprmPlaneDimension:
    """Closed-form dimension guess vs the authoritative evaluation rank.

    The closed form is evaluated without its unspecified overlap
    correction term, so disagreement with the rank is expected for some
    parameters and is reported, never hidden.
    """

    closed_form: int
    rank: int
    agrees: bool
    experimental: bool = True

    def to_json(self) -> dict:
        return {
            "closed_form": self.closed_form,
            "rank": self.rank,
            "agrees": self.agrees,
            "experimental": self.experimental,
        }


def wprm_plane_dimension(w1: int, w2: int, d: int, q: int) -> WprmPlaneDimension:
    """Dimension of the degree-d code on WP(1, w1, w2) over GF(q).

    Requires gcd(w1, w2) = 1.  The second (subtracted) sum only applies
    once d reaches w1*(q-1); below that the truncation set is empty.
    """
    import math

    if math.gcd(w1, w2) != 1:
        raise ValueError(f"plane weights must satisfy gcd(w1, w2) = 1, got ({w1}, {w2})")
    mu1 = min(d // w1, q - 1)
    closed = sum((d - w1 * i) // w2 + 1 for i in range(mu1 + 1))
    if d - w1 * (q - 1) >= 0:
        ell = min(q - 1, (d - w1 * (q - 1)) // w2)
        closed -= sum(q - 1 - i for i in range(ell + 1))
    field = field_from_order(q)
    ws = WeightSystem((1, w1, w2))
    rank = wprm_code(ws, d, field).k
    return WprmPlaneDimension(closed_form=closed, rank=rank, agrees=closed == rank)


# --- deterministic isotropic subcode extraction -------------------------------------------


def greedy_isotropic_subcode(
    code: LinearCode, ip: InnerProduct = InnerProduct.EUCLIDEAN
) -> LinearCode:
    """Largest self-orthogonal subcode findable by one deterministic greedy pass.

    Candidates are the raw evaluation-matrix rows in graded-lex monomial
    order when the code has evaluation provenance, else the RREF generator
    rows.  A candidate is kept when it is isotropic, orthogonal to all
    kept vectors, and enlarges the span.  The found dimension is whatever
    it is; nothing forces a target.
    """
    _require_hermitian_ok(code.field, ip)
    raw = code.provenance.get("eval_matrix")
    candidates = raw if isinstance(raw, MatrixGF) else code.generator
    field = code.field
    kept: list[np.ndarray] = []
    span = MatrixGF.zeros(field, 0, code.length)
    for i in range(candidates.rows):
        v = candidates.row(i)
        if not v.any():
            continue
        if inner_product(field, v, v, ip) != 0:
            continue
        if any(inner_product(field, v, b, ip) != 0 for b in kept):
            continue
        if span.contains_vector(v):
            continue
        kept.append(v)
        span = span.stack(MatrixGF(field, v.reshape(1, -1))).rref()[0]
    sub = LinearCode(
        field,
        span if kept else MatrixGF.zeros(field, 0, code.length),
        provenance={
            "kind": "greedy-isotropic-subcode",
            "of": code,
            "ip": ip.value,
            "kept_candidates": len(kept),
        },
    )
    return sub
