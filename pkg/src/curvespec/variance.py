"""Variance of the exponents, the bound it is compared against, and the
lattice sums used to control it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .checks import Check, check_equal
from .errors import InvariantError
from .puiseux import CharacteristicData, characteristic_data, characteristic_identities
from .spectrum import Spectrum, sub_unit_by_stage

__all__ = [
    "variance",
    "HertlingResult",
    "hertling_check",
    "StageStats",
    "stage_stats",
    "lattice_F",
    "lattice_E",
    "lattice_F_bruteforce",
    "lattice_checks",
]


def variance(s: Spectrum, center=1) -> Fraction:
    """Exact variance ``(1/mu) sum (alpha - center)^2`` (center 1 for curves)."""
    if s.mu == 0:
        raise ValueError("variance of an empty spectrum")
    center = Fraction(center)
    return sum(((a - center) ** 2 * m for a, m in s.entries), Fraction(0)) / s.mu


class HertlingResult(NamedTuple):
    variance: Fraction
    bound: Fraction
    gap: Fraction
    holds: bool


def hertling_check(s: Spectrum, g: int) -> HertlingResult:
    """Compare the variance with ``(alpha_max - alpha_min)/12``.

    ``holds`` is the expected outcome for an irreducible branch with ``g``
    pairs: equality for one pair, strict inequality otherwise.
    """
    v = variance(s)
    bound = (s.max() - s.min()) / 12
    gap = bound - v
    holds = gap == 0 if g == 1 else gap > 0
    return HertlingResult(v, bound, gap, holds)


@dataclass(frozen=True)
class StageStats:
    nu: int
    mu_stage: int
    S: Fraction
    eps: Fraction


def stage_stats(cd, s: Spectrum | None = None) -> list[StageStats]:
    """Per-stage squared deviations of the exponents below 1.

    ``S = 2 sum (alpha - 1)^2`` over the stage's exponents below 1, and
    ``eps = 6 S - mu_stage (1 - alpha_1)``. If ``s`` is given its part below
    1 must coincide with the union of the stages. Raises
    :class:`InvariantError` when any exact identity fails.
    """
    cd = cd if isinstance(cd, CharacteristicData) else characteristic_data(cd)
    stages = sub_unit_by_stage(cd)
    if s is not None:
        union = sum(stages, start=type(stages[0])())
        if Spectrum.from_counts(union) != s.below(1):
            raise InvariantError("stage partition does not match the spectrum below 1")

    out = []
    for nu, stage in enumerate(stages, start=1):
        count = sum(stage.values())
        if 2 * count != cd.mu_stage[nu - 1]:
            raise InvariantError(f"stage {nu}: {count} exponents, expected {cd.mu_stage[nu - 1] // 2}")
        S = 2 * sum(((a - 1) ** 2 * c for a, c in stage.items()), Fraction(0))
        eps = 6 * S - cd.mu_stage[nu - 1] * (1 - cd.alpha1)
        out.append(StageStats(nu, cd.mu_stage[nu - 1], S, eps))

    last = out[-1]
    expected = cd.mu_stage[-1] * (1 - Fraction(1, cd.w[-1]) - Fraction(1, cd.n[-1]))
    if 6 * last.S != expected:
        raise InvariantError(f"last stage: 6S = {6 * last.S}, expected {expected}")
    for name, ok, detail in characteristic_identities(cd):
        if not ok:
            raise InvariantError(f"{name}: {detail}")
    total_eps = sum((st.eps for st in out), Fraction(0))
    if (cd.g == 1 and total_eps != 0) or (cd.g > 1 and total_eps >= 0):
        raise InvariantError(f"sum of eps is {total_eps} for g = {cd.g}")
    return out


def _check_ab(a, b):
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise ValueError(f"need coprime positive integers, got ({a},{b})")


def lattice_F(a: int, b: int) -> Fraction:
    """Sum of ``1 - i/a - j/b`` over ``i, j > 0`` with ``i/a + j/b <= 1``.

    Summed row by row in integers over the common denominator ``ab``.
    Accepts any coprime positive pair, since the recursions evaluate it
    with ``a < b`` as well.
    """
    _check_ab(a, b)
    total = 0
    for i in range(1, a):
        jmax = b * (a - i) // a
        # sum_{j=1}^{jmax} (ab - ib - ja)
        total += jmax * (a * b - i * b) - a * jmax * (jmax + 1) // 2
    return Fraction(total, a * b)


def lattice_F_bruteforce(a: int, b: int) -> Fraction:
    """Point-by-point version of :func:`lattice_F`, for small arguments."""
    _check_ab(a, b)
    return sum(
        (1 - Fraction(i, a) - Fraction(j, b)
         for i in range(1, a + 1) for j in range(1, b + 1)
         if Fraction(i, a) + Fraction(j, b) <= 1),
        Fraction(0),
    )


def lattice_E(a: int, b: int) -> Fraction:
    """``(a-1)(b-1)/6 - F(a, b)`` for coprime ``a > b``."""
    _check_ab(a, b)
    if a <= b:
        raise ValueError(f"need a > b, got ({a},{b})")
    return Fraction((a - 1) * (b - 1), 6) - lattice_F(a, b)


def lattice_checks(a: int, b: int) -> list[Check]:
    """Exact recursions and the lower bound for the pair ``a > b``.

    Compares direct sums across the subtraction step ``a -> a - b``, the
    division step ``a = m b + k``, the same step for ``E``, the lower bound
    ``E(a,b) >= (b-1)(a+b-1)/12b``, and the termwise inequality the bound's
    induction rests on.
    """
    _check_ab(a, b)
    if a <= b:
        raise ValueError(f"need a > b, got ({a},{b})")
    where = f"({a},{b})"
    F = lattice_F(a, b)
    checks = [
        check_equal(
            "lattice_subtract_step",
            F - Fraction(a - b, a) * lattice_F(a - b, b),
            Fraction((b - 1) * (2 * a * b - b * b - a - b), 6 * a),
            where,
        )
    ]
    E = lattice_E(a, b)
    lower = Fraction((b - 1) * (a + b - 1), 12 * b)
    checks.append(Check("lattice_E_lower_bound", E >= lower, f"{where}: E={E} < {lower}"))
    if b >= 2:
        m, k = divmod(a, b)
        checks.append(check_equal(
            "lattice_divide_step",
            F - Fraction(k, a) * lattice_F(k, b),
            Fraction((b - 1) * m, 12 * a) * ((2 * b * b - b) * m + 4 * b * k - 2 * k - 3 * b),
            where,
        ))
        checks.append(check_equal(
            "lattice_E_divide_step",
            E - Fraction(k, a) * lattice_E(b, k),
            Fraction(m * (b - 1) * (a + b + k), 12 * a),
            where,
        ))
        lhs = Fraction((k - 1) * (b + k - 1), a) + Fraction(m * (b - 1) * (a + b + k), a)
        rhs = Fraction((b - 1) * (a + b - 1), b)
        checks.append(Check("lattice_induction_inequality", lhs >= rhs, f"{where}: {lhs} < {rhs}"))
    return checks
