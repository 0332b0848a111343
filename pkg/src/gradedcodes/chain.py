"""Graded chain complexes over GF(q) and the codes they induce.

A complex stores one matrix per degree d in (lo, hi], acting on column
vectors: M_d maps C_d to C_{d-1}, so validity is M_{d-1} @ M_d = 0.  The
adjoint differential is the transpose in the standard basis (standard
inner product), which is what makes the degree-d code below well formed:
H_X rows span im(d_{d+1}) and H_Z rows span im(d_d^T), and their
orthogonality inside C_d is exactly (M_d M_{d+1})^T = 0.

Grade labels are carried verbatim (ints, or pairs for bigraded imports);
the only operation applied to them here is the "keep j <= cutoff"
filtration used before code construction.  Height filtrations of weighted
point sets return graded bases plus nested evaluation codes; they do NOT
fabricate differentials - callers supply boundary matrices through
load_complex to complete a complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegreeOutOfRange,
    DifferentialSquareNonzero,
    EmptyFiltration,
    InternalInvariantError,
    ShapeMismatch,
)
from .gf import FieldSpec, field_create, parse_field_spec
from .lincode import DEFAULT_DISTANCE_BUDGET, LinearCode, evaluation_code
from .matrix import MatrixGF
from .quantum import CssCode, commutation_check, quantum_distance
from .wgeom import Height, WeightSystem, WPoint, weighted_height


class ChainComplex:
    """Finite chain complex with validated differentials."""

    __slots__ = ("field", "lo", "hi", "dims", "grades", "diffs")

    def __init__(
        self,
        field: FieldSpec,
        dims: dict[int, int],
        diffs: dict[int, MatrixGF],
        grades: dict[int, tuple] | None = None,
    ):
        degrees = sorted(dims)
        if not degrees:
            raise ShapeMismatch("complex needs at least one degree")
        lo, hi = degrees[0], degrees[-1]
        if degrees != list(range(lo, hi + 1)):
            raise ShapeMismatch(f"degrees {degrees} are not contiguous")
        for d in range(lo + 1, hi + 1):
            if d not in diffs:
                raise ShapeMismatch(f"missing differential for degree {d}")
            m = diffs[d]
            if m.shape != (dims[d - 1], dims[d]):
                raise ShapeMismatch(
                    f"differential at degree {d} has shape {m.shape}, "
                    f"expected ({dims[d - 1]}, {dims[d]})"
                )
        for d in diffs:
            if not lo + 1 <= d <= hi:
                raise ShapeMismatch(f"differential degree {d} outside ({lo}, {hi}]")
        for d in range(lo + 2, hi + 1):
            square = diffs[d - 1].matmul(diffs[d])
            if not square.is_zero():
                i, j = np.argwhere(square.data)[0]
                raise DifferentialSquareNonzero(
                    f"d_{d - 1} o d_{d} != 0: entry ({i}, {j}) = "
                    f"{int(square.data[i, j])}",
                    degree=d,
                    entry=(int(i), int(j), int(square.data[i, j])),
                )
        if grades:
            for d, labels in grades.items():
                if d in dims and len(labels) != dims[d]:
                    raise ShapeMismatch(
                        f"{len(labels)} grade labels for dim-{dims[d]} degree {d}"
                    )
        self.field = field
        self.lo = lo
        self.hi = hi
        self.dims = dict(dims)
        self.grades = {d: tuple(v) for d, v in (grades or {}).items()}
        self.diffs = dict(diffs)

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def differential(self, d: int) -> MatrixGF | None:
        return self.diffs.get(d)

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def to_json(self) -> dict:
        out = {
            "field": self.field.spec_string(),
            "degrees": [self.lo, self.hi],
            "dims": {str(d): self.dims[d] for d in sorted(self.dims)},
            "diff": {str(d): self.diffs[d].tolist() for d in sorted(self.diffs)},
        }
        if self.grades:
            out["grades"] = {
                str(d): [list(g) if isinstance(g, tuple) else g for g in labels]
                for d, labels in sorted(self.grades.items())
            }
        return out


def load_complex(description: dict) -> ChainComplex:
    """Validate and build a complex from its JSON description."""
    field = parse_field_spec(description["field"])
    lo, hi = description["degrees"]
    dims = {int(d): int(v) for d, v in description["dims"].items()}
    if sorted(dims) != list(range(lo, hi + 1)):
        raise ShapeMismatch(
            f"dims keys {sorted(dims)} do not cover degrees [{lo}, {hi}]"
        )
    diffs = {}
    for key, rows in description.get("diff", {}).items():
        d = int(key)
        target = dims.get(d - 1, 0)
        expected_rows = target
        if len(rows) != expected_rows and not (len(rows) == 0 and expected_rows == 0):
            raise ShapeMismatch(
                f"differential {d} has {len(rows)} rows, expected {expected_rows}"
            )
        data = (
            np.array(rows, dtype=np.int64) % field.p
            if field.e == 1
            else np.array(rows, dtype=np.int64)
        )
        if data.size == 0:
            data = np.zeros((expected_rows, dims.get(d, 0)), dtype=np.int64)
        diffs[d] = MatrixGF(field, data)
    grades = None
    if "grades" in description:
        grades = {
            int(d): tuple(tuple(g) if isinstance(g, list) else g for g in labels)
            for d, labels in description["grades"].items()
        }
    return ChainComplex(field, dims, diffs, grades)


@dataclass(frozen=True)
class HomologyReport:
    """Betti numbers dim H_d = dim ker d_d - rank d_{d+1}, all degrees."""

    betti: dict[int, int]
    dims: dict[int, int]
    euler: int

    def to_json(self) -> dict:
        return {
            "betti": {str(d): b for d, b in sorted(self.betti.items())},
            "dims": {str(d): v for d, v in sorted(self.dims.items())},
            "euler": self.euler,
        }


def homology(complex_: ChainComplex) -> HomologyReport:
    betti = {}
    for d in complex_.degrees():
        dim_d = complex_.dim(d)
        out_rank = complex_.diffs[d].rank() if d in complex_.diffs else 0
        in_rank = complex_.diffs[d + 1].rank() if d + 1 in complex_.diffs else 0
        kernel = dim_d - out_rank
        betti[d] = kernel - in_rank
        if betti[d] < 0:
            raise InternalInvariantError(f"negative Betti number at degree {d}")
    euler_dims = sum((-1) ** d * complex_.dim(d) for d in complex_.degrees())
    euler_betti = sum((-1) ** d * b for d, b in betti.items())
    if euler_dims != euler_betti:
        raise InternalInvariantError(
            f"Euler characteristic mismatch: dims give {euler_dims}, "
            f"homology gives {euler_betti}"
        )
    return HomologyReport(betti=betti, dims=dict(complex_.dims), euler=euler_dims)


def homological_code(
    complex_: ChainComplex,
    d: int,
    distance_budget: int = DEFAULT_DISTANCE_BUDGET,
) -> CssCode:
    """The degree-d CSS code: H_X spans im(d_{d+1}), H_Z spans im(d_d^T).

    Degrees at the ends of the range are allowed; a missing adjacent
    differential simply contributes no stabilizers of that type (so a
    zero-differential complex gives [[dim C_d, dim C_d]]).
    """
    if not complex_.lo <= d <= complex_.hi:
        raise DegreeOutOfRange(
            f"degree {d} outside complex range [{complex_.lo}, {complex_.hi}]"
        )
    n = complex_.dim(d)
    field = complex_.field
    up = complex_.differential(d + 1)
    down = complex_.differential(d)
    h_x = up.transpose() if up is not None else MatrixGF.zeros(field, 0, n)
    h_z = down if down is not None else MatrixGF.zeros(field, 0, n)
    code = CssCode(
        field,
        h_x,
        h_z,
        provenance={"kind": "homological", "degree": d, "dims": dict(complex_.dims)},
    )
    if not commutation_check(code):
        raise InternalInvariantError(
            "homological stabilizers do not commute despite d^2 = 0"
        )
    expected_k = homology(complex_).betti[d]
    if code.k != expected_k:
        raise InternalInvariantError(
            f"logical count {code.k} differs from Betti number {expected_k}"
        )
    quantum_distance(code, distance_budget)
    return code


# --- toric complex -----------------------------------------------------------------


def toric_complex(length: int) -> ChainComplex:
    """Cellular chain complex of the L x L periodic square lattice over GF(2).

    Degree-2/1/0 spaces are plaquettes, edges, vertices with dims
    (L^2, 2L^2, L^2).  Edge indexing: horizontal edge (x, y) -> y*L + x,
    vertical edge (x, y) -> L^2 + y*L + x.
    """
    if length < 2:
        raise ValueError("toric lattice needs L >= 2")
    L = length
    gf2 = field_create(2)
    n_cells = L * L

    def h_edge(x: int, y: int) -> int:
        return (y % L) * L + (x % L)

    def v_edge(x: int, y: int) -> int:
        return n_cells + (y % L) * L + (x % L)

    def vertex(x: int, y: int) -> int:
        return (y % L) * L + (x % L)

    d2 = np.zeros((2 * n_cells, n_cells), dtype=np.int64)
    for y in range(L):
        for x in range(L):
            p = y * L + x
            for edge in (h_edge(x, y), h_edge(x, y + 1), v_edge(x, y), v_edge(x + 1, y)):
                d2[edge, p] ^= 1
    d1 = np.zeros((n_cells, 2 * n_cells), dtype=np.int64)
    for y in range(L):
        for x in range(L):
            d1[vertex(x, y), h_edge(x, y)] ^= 1
            d1[vertex(x + 1, y), h_edge(x, y)] ^= 1
            d1[vertex(x, y), v_edge(x, y)] ^= 1
            d1[vertex(x, y + 1), v_edge(x, y)] ^= 1
    return ChainComplex(
        gf2,
        dims={0: n_cells, 1: 2 * n_cells, 2: n_cells},
        diffs={1: MatrixGF(gf2, d1), 2: MatrixGF(gf2, d2)},
    )


def toric_logical_witnesses(length: int) -> list[list[int]]:
    """Two weight-L non-contractible cycles on the L x L torus.

    The first (all horizontal edges in row 0) lies in ker d_1; the second
    (all horizontal edges in column 0) meets every plaquette boundary an
    even number of times.  Both witness distance <= L at degree 1.
    """
    L = length
    n = 2 * L * L
    row_loop = [0] * n
    for x in range(L):
        row_loop[x] = 1  # h_edge(x, 0)
    column_loop = [0] * n
    for y in range(L):
        column_loop[y * L] = 1  # h_edge(0, y)
    return [row_loop, column_loop]


def toric_code(length: int, distance_budget: int = DEFAULT_DISTANCE_BUDGET) -> CssCode:
    """Degree-1 code of the toric complex ([[2L^2, 2, L]])."""
    return homological_code(toric_complex(length), 1, distance_budget)


# --- height filtration -----------------------------------------------------------------


@dataclass(frozen=True)
class FiltrationLevel:
    threshold: Height
    points: tuple[WPoint, ...]
    code: LinearCode | None  # evaluation code of degree = threshold (finite only)

    @property
    def dim(self) -> int:
        return len(self.points)

    def labels(self) -> list[tuple[int, ...]]:
        return [p.rep for p in self.points]


@dataclass(frozen=True)
class Filtration:
    """Nested graded bases C_t = GF(q)^{#{p : height(p) <= t}}.

    Only the filtration is produced here; boundary matrices between the
    levels are the caller's to supply (via load_complex), because no
    canonical differential comes with the data.
    """

    ws: WeightSystem
    field: FieldSpec
    levels: tuple[FiltrationLevel, ...]

    def dims(self) -> list[int]:
        return [level.dim for level in self.levels]

    def to_json(self) -> dict:
        return {
            "weights": list(self.ws),
            "field": self.field.spec_string(),
            "levels": [
                {
                    "threshold": (
                        "inf" if level.threshold == Height.INFINITE else level.threshold.lift
                    ),
                    "dim": level.dim,
                    "labels": [list(r) for r in level.labels()],
                    "code": None if level.code is None else {
                        "length": level.code.length,
                        "dimension": level.code.k,
                    },
                }
                for level in self.levels
            ],
        }


def height_filtration(
    points: Sequence[WPoint],
    ws: WeightSystem,
    field: FieldSpec,
    thresholds: Sequence,
    build_codes: bool = True,
) -> Filtration:
    """Filter points by weighted height at each threshold (ascending).

    Thresholds are integers or float("inf"); comparisons against heights
    are exact (cross-exponentiated).  For a finite integer threshold t the
    level also carries the degree-t evaluation code on its point subset
    (when it is nonempty and t > 0 admits monomials); the infinite
    threshold level carries the full point set and no code.
    """
    if not thresholds:
        raise EmptyFiltration("at least one threshold is required")
    coerced = [Height.coerce(t) for t in thresholds]
    for a, b in zip(coerced, coerced[1:]):
        if not a < b:
            raise ValueError("thresholds must be strictly ascending")
    heights = [(p, weighted_height(p, ws, field)) for p in points]
    levels = []
    for t in coerced:
        members = tuple(p for p, h in heights if h <= t)
        code = None
        if build_codes and members and t != Height.INFINITE:
            degree = t.lift
            from .gpoly import den

            if den(ws, degree) > 0:
                code = evaluation_code(ws, degree, list(members), field)
        levels.append(FiltrationLevel(threshold=t, points=members, code=code))
    return Filtration(ws=ws, field=field, levels=tuple(levels))


# --- bigraded filtering -----------------------------------------------------------------


def restrict_to_grades(complex_: ChainComplex, cutoff: int) -> ChainComplex:
    """Keep the basis vectors with secondary grade j <= cutoff.

    Integer labels are their own j; pair labels (i, j) use the second
    component.  Raises when the restriction is not a subcomplex (a kept
    generator mapping onto a dropped one).
    """
    if not complex_.grades:
        raise ShapeMismatch("complex carries no grade labels to filter by")

    def j_of(label) -> int:
        if isinstance(label, tuple):
            return int(label[-1])
        return int(label)

    keep: dict[int, list[int]] = {}
    for d in complex_.degrees():
        labels = complex_.grades.get(d)
        if labels is None:
            raise ShapeMismatch(f"degree {d} has no grade labels")
        keep[d] = [i for i, lab in enumerate(labels) if j_of(lab) <= cutoff]
    dims = {d: len(keep[d]) for d in complex_.degrees()}
    diffs = {}
    for d in range(complex_.lo + 1, complex_.hi + 1):
        m = complex_.diffs[d].data
        kept_rows = keep[d - 1]
        kept_cols = keep[d]
        dropped_rows = [i for i in range(m.shape[0]) if i not in set(kept_rows)]
        if kept_cols and dropped_rows:
            leak = m[np.ix_(dropped_rows, kept_cols)]
            if leak.any():
                raise ShapeMismatch(
                    f"grade cutoff {cutoff} is not a subcomplex: differential at "
                    f"degree {d} maps a kept generator to a dropped one"
                )
        sub = (
            m[np.ix_(kept_rows, kept_cols)]
            if kept_rows and kept_cols
            else np.zeros((len(kept_rows), len(kept_cols)), dtype=np.int64)
        )
        diffs[d] = MatrixGF(complex_.field, sub)
    grades = {
        d: tuple(complex_.grades[d][i] for i in keep[d]) for d in complex_.degrees()
    }
    return ChainComplex(complex_.field, dims, diffs, grades)
