"""Entropy correction, orbifold Euler characteristic, and bound reports.

All bound arithmetic is exact rational (fractions.Fraction); no verdict
is ever decided by a floating comparison.  The refined bound

    d <= (n - k + 2)/2 - eps/2,   eps = 1/2 * sum_p (1 - 1/|G_p|)

is a *reporting target*, not an invariant: a code violating it is a
documented finding, while a violation of the plain quantum Singleton
bound on an exact-distance code is treated as an implementation bug by
the callers that construct those codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidStabilizer
from .quantum import CssCode
from .wgeom import OrbifoldData


def epsilon(data: OrbifoldData) -> Fraction:
    """1/2 * sum over census entries of (1 - 1/|G_p|), exact."""
    total = Fraction(0)
    for entry in data.entries:
        if entry.order < 2:
            raise InvalidStabilizer(
                f"census lists |G_p| = {entry.order} < 2 at {entry.point}"
            )
        total += 1 - Fraction(1, entry.order)
    return total / 2


def chi_orb(chi, data: OrbifoldData) -> Fraction:
    """Orbifold Euler characteristic: chi + sum (1 - 1/|G_p|).

    chi itself is an input (integer or rational); it is never derived
    from the census.
    """
    total = Fraction(chi)
    for entry in data.entries:
        if entry.order < 2:
            raise InvalidStabilizer(
                f"census lists |G_p| = {entry.order} < 2 at {entry.point}"
            )
        total += 1 - Fraction(1, entry.order)
    return total


def refined_bound(n: int, k: int, eps) -> tuple[Fraction, Fraction]:
    """(plain, refined) = ((n-k+2)/2, plain - eps/2), exact rationals."""
    if not 0 <= k <= n:
        raise ValueError(f"need n >= k >= 0, got n={n}, k={k}")
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError(f"epsilon must be nonnegative, got {eps}")
    plain = Fraction(n - k + 2, 2)
    return plain, plain - eps / 2


@dataclass(frozen=True)
class BoundReport:
    """Evaluation record of the plain and refined Singleton bounds."""

    n: int
    k: int
    distance: int | None
    distance_kind: str
    plain: Fraction
    eps: Fraction
    refined: Fraction
    convention: str
    satisfies_plain: bool | None  # None when the distance is not exact
    satisfies_refined: bool | None
    census: dict | None
    findings: tuple[str, ...]
    chi_orb: Fraction | None = None
    well_formed: bool | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "distance": {"value": self.distance, "kind": self.distance_kind},
            "plain_bound": _frac_json(self.plain),
            "epsilon": _frac_json(self.eps),
            "refined_bound": _frac_json(self.refined),
            "stabilizer_convention": self.convention,
            "satisfies_plain": self.satisfies_plain,
            "satisfies_refined": self.satisfies_refined,
            "census": self.census,
            "findings": list(self.findings),
            "chi_orb": None if self.chi_orb is None else _frac_json(self.chi_orb),
            "well_formed": self.well_formed,
        }


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


def bound_report(
    code: CssCode,
    census: OrbifoldData | None = None,
    eps=None,
    chi=None,
    well_formed: bool | None = None,
) -> BoundReport:
    """Evaluate both bounds against a code's observed distance.

    Epsilon comes from the census or is supplied directly (exactly one of
    the two).  Verdicts are null unless the distance is exact; a refined
    violation is emitted as a finding, never an error.
    """
    if (census is None) == (eps is None):
        raise ValueError("supply exactly one of census or eps")
    if census is not None:
        eps_value = epsilon(census)
        convention = census.convention
        census_json = census.to_json()
    else:
        eps_value = Fraction(eps)
        if eps_value < 0:
            raise ValueError("epsilon must be nonnegative")
        convention = "manual"
        census_json = None
    plain, refined = refined_bound(code.n, code.k, eps_value)
    dist = code.distance
    satisfies_plain = satisfies_refined = None
    findings: list[str] = []
    if dist.kind == "exact" and dist.value is not None:
        satisfies_plain = Fraction(dist.value) <= plain
        satisfies_refined = Fraction(dist.value) <= refined
        if not satisfies_plain:
            findings.append(
                f"plain quantum Singleton violated: d={dist.value} > {plain}"
            )
        if not satisfies_refined:
            findings.append(
                f"refined bound violated: d={dist.value} > {refined} "
                f"(eps={eps_value})"
            )
    chi_value = chi_orb(chi, census) if (chi is not None and census is not None) else None
    return BoundReport(
        n=code.n,
        k=code.k,
        distance=dist.value,
        distance_kind=dist.kind,
        plain=plain,
        eps=eps_value,
        refined=refined,
        convention=convention,
        satisfies_plain=satisfies_plain,
        satisfies_refined=satisfies_refined,
        census=census_json,
        findings=tuple(findings),
        chi_orb=chi_value,
        well_formed=well_formed,
    )
