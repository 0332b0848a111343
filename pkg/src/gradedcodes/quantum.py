"""CSS lifting of classical codes to quantum stabilizer codes.

Stabilizer arithmetic is plain linear algebra over GF(q): H_X and H_Z are
the row supports of the X- and Z-type generators, commutation is the
matrix identity H_X H_Z^T = 0, and the logical count is
k = n - rank(H_X) - rank(H_Z).  Phases never enter any of the computed
parameters, so none are tracked.

Distance conventions: the quantum distance is the minimum weight over
normalizer-minus-stabilizer vectors, computed exactly per type (Z-side:
ker H_X minus the row space of H_Z; X-side symmetric) whenever the kernel
spaces are enumerable within budget.  A code with k = 0 has no logical
operators at all; its distance is the explicit ``undefined`` sentinel
rather than a number, which keeps Singleton checks honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ContainmentViolated, NotSelfOrthogonal
from .gf import FieldSpec, parse_field_spec
from .lincode import (
    DEFAULT_DISTANCE_BUDGET,
    InnerProduct,
    LinearCode,
    dual_code,
    is_self_orthogonal,
    min_distance,
)
from .matrix import MatrixGF

_ENUM_CHUNK = 1 << 15


@dataclass(frozen=True)
class DistanceInfo:
    value: int | None
    kind: str  # "exact" | "lower" | "upper" | "undefined" | "unknown"
    note: str = ""

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def to_json(self) -> dict:
        out = {"value": self.value, "kind": self.kind}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class CommutationVerdict:
    ok: bool
    witness: tuple[int, int] | None  # (X-row, Z-row) of the first violation

    def __bool__(self) -> bool:
        return self.ok


class CssCode:
    """A CSS stabilizer code given by X- and Z-type generator matrices.

    Construction does not enforce commutation (hand-built inputs may
    violate it; see :func:`commutation_check`); the library constructors
    below always verify it.
    """

    __slots__ = ("field", "n", "h_x", "h_z", "distance", "provenance")

    def __init__(
        self,
        field: FieldSpec,
        h_x: MatrixGF,
        h_z: MatrixGF,
        distance: DistanceInfo | None = None,
        provenance: dict | None = None,
    ):
        if h_x.cols != h_z.cols:
            raise ValueError("H_X and H_Z must act on the same qudits")
        self.field = field
        self.n = h_x.cols
        self.h_x = h_x
        self.h_z = h_z
        self.distance = distance or DistanceInfo(None, "unknown")
        self.provenance = provenance or {}

    @property
    def k(self) -> int:
        return self.n - self.h_x.rank() - self.h_z.rank()

    def parameters(self) -> tuple[int, int, int | None]:
        return (self.n, self.k, self.distance.value)

    def __repr__(self) -> str:
        d = self.distance.value if self.distance.exact else "?"
        return f"CssCode[[{self.n},{self.k},{d}]]_q={self.field.q}"

    def to_json(self) -> dict:
        return {
            "field": self.field.spec_string(),
            "n": self.n,
            "k": self.k,
            "h_x": self.h_x.tolist(),
            "h_z": self.h_z.tolist(),
            "distance": self.distance.to_json(),
            "provenance": _provenance_json(self.provenance),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CssCode":
        field = parse_field_spec(obj["field"])
        n = obj["n"]
        h_x = MatrixGF.from_rows(field, obj["h_x"], cols=n)
        h_z = MatrixGF.from_rows(field, obj["h_z"], cols=n)
        dist = obj.get("distance", {})
        info = DistanceInfo(dist.get("value"), dist.get("kind", "unknown"), dist.get("note", ""))
        return cls(field, h_x, h_z, info, obj.get("provenance"))


def _provenance_json(prov: dict) -> dict:
    out = {}
    for key, value in prov.items():
        if isinstance(value, LinearCode):
            out[key] = f"[{value.length},{value.k}]_q={value.field.q}"
        elif isinstance(value, MatrixGF):
            out[key] = value.tolist()
        else:
            out[key] = value
    return out


# --- constructors ------------------------------------------------------------------


def css_from_self_orthogonal(
    code: LinearCode, ip: InnerProduct = InnerProduct.EUCLIDEAN
) -> CssCode:
    """Lift a self-orthogonal [m, k] code to [[m, m - 2k]].

    H_X is the generator of the code; H_Z is the same generator,
    conjugated entry-wise in the Hermitian case so that commutation reads
    H_X H_Z^T = G sigma(G)^T = 0.
    """
    verdict = is_self_orthogonal(code, ip)
    if not verdict:
        raise NotSelfOrthogonal(
            f"code is not {ip.value}-self-orthogonal; generator rows "
            f"{verdict.witness} have nonzero inner product",
            witness=verdict.witness,
        )
    h_x = code.generator
    h_z = h_x.conjugate() if ip == InnerProduct.HERMITIAN else h_x
    out = CssCode(
        code.field,
        h_x,
        h_z,
        provenance={
            "kind": "self-orthogonal-lift",
            "source": code,
            "source_dual": dual_code(code, ip),
            "ip": ip.value,
        },
    )
    _assert_commutes(out)
    if out.k != out.n - 2 * code.k:
        raise AssertionError("logical count differs from m - 2k; rank bug")
    return out


def css_from_pair(c1: LinearCode, c2: LinearCode) -> CssCode:
    """CSS code of a pair with dual containment C2-perp <= C1.

    H_X is the parity-check matrix of C1 (generator of its Euclidean
    dual), H_Z that of C2; parameters are [[n, k1 + k2 - n]].
    """
    if c1.field != c2.field or c1.length != c2.length:
        raise ValueError("pair must share field and length")
    c2perp = dual_code(c2)
    contained, witness = c1.contains(c2perp)
    if not contained:
        raise ContainmentViolated(
            "C2-perp is not contained in C1", witness=witness.tolist()
        )
    h_x = dual_code(c1).generator
    h_z = c2perp.generator
    out = CssCode(
        c1.field,
        h_x,
        h_z,
        provenance={"kind": "css-pair", "c1": c1, "c2": c2},
    )
    _assert_commutes(out)
    if out.k != c1.k + c2.k - out.n:
        raise AssertionError("logical count differs from k1 + k2 - n; rank bug")
    return out


def _assert_commutes(code: CssCode):
    verdict = commutation_check(code)
    if not verdict:
        raise AssertionError(
            f"constructed stabilizers do not commute at rows {verdict.witness}"
        )


def commutation_check(code: CssCode) -> CommutationVerdict:
    """Verify H_X H_Z^T = 0; on failure carries the first violating pair."""
    if code.h_x.rows == 0 or code.h_z.rows == 0:
        return CommutationVerdict(True, None)
    product = code.h_x.matmul(code.h_z.transpose())
    if product.is_zero():
        return CommutationVerdict(True, None)
    i, j = np.argwhere(product.data)[0]
    return CommutationVerdict(False, (int(i), int(j)))


# --- distance ----------------------------------------------------------------------


def _kernel_min_weight_outside(
    field: FieldSpec, kernel_basis: MatrixGF, stabilizer: MatrixGF
) -> int | None:
    """Minimum weight over span(kernel_basis) minus rowspace(stabilizer)."""
    k = kernel_basis.rows
    if k == 0:
        return None
    q = field.q
    total = q**k
    best: int | None = None
    for start in range(0, total, _ENUM_CHUNK):
        idx = np.arange(start, min(start + _ENUM_CHUNK, total), dtype=np.int64)
        msgs = np.empty((len(idx), k), dtype=np.int64)
        for j in range(k):
            msgs[:, j] = (idx // q ** (k - 1 - j)) % q
        vectors = field.matmul_arr(msgs, kernel_basis.data)
        members = stabilizer.membership_mask(vectors)
        weights = np.count_nonzero(vectors, axis=1)
        outside = weights[~members]
        if outside.size:
            candidate = int(outside.min())
            best = candidate if best is None else min(best, candidate)
    return best


def quantum_distance(code: CssCode, budget: int = DEFAULT_DISTANCE_BUDGET) -> DistanceInfo:
    """Exact normalizer-minus-stabilizer minimum weight when enumerable.

    d_Z = min weight over ker(H_X) \\ rowspace(H_Z); d_X symmetric;
    d = min(d_X, d_Z).  When the kernel spaces exceed the budget the
    result falls back to provenance: the classical lower bound
    min(d_C, d_C-perp) for self-orthogonal lifts (computed only if those
    enumerations fit the budget), else "unknown".  The result is cached
    on the code object.
    """
    if code.distance.exact:
        return code.distance
    if code.k == 0:
        info = DistanceInfo(None, "undefined", "no logical operators")
        code.distance = info
        return info
    q = code.field.q
    ker_x = code.h_x.nullspace()
    ker_z = code.h_z.nullspace()
    if q**ker_x.rows <= budget and q**ker_z.rows <= budget:
        d_z = _kernel_min_weight_outside(code.field, ker_x, code.h_z.rref()[0])
        d_x = _kernel_min_weight_outside(code.field, ker_z, code.h_x.rref()[0])
        candidates = [d for d in (d_x, d_z) if d is not None]
        if not candidates:  # pragma: no cover - k > 0 guarantees a logical op
            info = DistanceInfo(None, "undefined", "no logical operators")
        else:
            info = DistanceInfo(min(candidates), "exact")
        code.distance = info
        return info
    info = _distance_from_provenance(code, budget)
    code.distance = info
    return info


def _distance_from_provenance(code: CssCode, budget: int) -> DistanceInfo:
    source = code.provenance.get("source")
    ip = code.provenance.get("ip", InnerProduct.EUCLIDEAN.value)
    if isinstance(source, LinearCode):
        dual = code.provenance.get("source_dual")
        if not isinstance(dual, LinearCode):
            dual = dual_code(source, InnerProduct(ip))
        # cached exact values short-circuit inside min_distance, so bounds
        # computed earlier remain usable even under a tiny budget here
        d_c = min_distance(source, budget)
        d_dual = min_distance(dual, budget)
        if d_c.exact and d_dual.exact:
            values = [r.value for r in (d_c, d_dual) if r.value is not None]
            if values:
                return DistanceInfo(
                    min(values), "lower", "classical bound min(d_C, d_C_perp)"
                )
    return DistanceInfo(None, "unknown", "kernel spaces exceed the budget")


def witness_upper_bound(code: CssCode, witnesses: Sequence[Sequence[int]]) -> DistanceInfo:
    """Upper-bound the distance by explicit logical-operator candidates.

    Each witness must lie in ker(H_X) or ker(H_Z) without lying in the
    opposite-type stabilizer row space; invalid witnesses are rejected.
    """
    best: int | None = None
    for w in witnesses:
        vec = np.asarray(list(w), dtype=np.int64)
        if vec.shape != (code.n,):
            raise ValueError(f"witness length {vec.shape} != n = {code.n}")
        in_ker_x = not code.field.matmul_arr(
            code.h_x.data, vec.reshape(-1, 1)
        ).any() if code.h_x.rows else True
        in_ker_z = not code.field.matmul_arr(
            code.h_z.data, vec.reshape(-1, 1)
        ).any() if code.h_z.rows else True
        is_logical = (in_ker_x and not code.h_z.contains_vector(vec)) or (
            in_ker_z and not code.h_x.contains_vector(vec)
        )
        if not is_logical:
            raise ValueError("witness is not a logical operator (or is a stabilizer)")
        weight = int(np.count_nonzero(vec))
        best = weight if best is None else min(best, weight)
    if best is None:
        raise ValueError("no witnesses supplied")
    info = DistanceInfo(best, "upper", "explicit logical-operator witness")
    if not code.distance.exact:
        code.distance = info
    return info
