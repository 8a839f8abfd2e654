"""Spectrum of exponents, computed three independent ways.

* :func:`spectrum_enumeration` lists the exponents below 1 from lattice
  points and reflects them.
* :func:`phi_recursive` expands the recursive generating function one pair
  at a time.
* :func:`spectrum_steenbrink` counts cohomology classes on the rupture
  divisors of the resolution.

Exponents are :class:`fractions.Fraction`; a spectrum is a sorted multiset.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping, Sequence

from .errors import InvariantError
from .puiseux import CharacteristicData, characteristic_data

__all__ = [
    "Spectrum",
    "spectrum_enumeration",
    "sub_unit_by_stage",
    "phi_recursive",
    "quasihomogeneous_spectrum",
    "fractional_parts_sum_to_two",
    "fractional_parts_criterion",
    "steenbrink_classes",
    "spectrum_steenbrink",
    "check_symmetry",
    "first_difference",
]

ONE = Fraction(1)


@dataclass(frozen=True)
class Spectrum:
    """Multiset of exponents stored as strictly increasing ``(alpha, mult)``."""

    entries: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        prev = None
        for alpha, mult in self.entries:
            if not isinstance(alpha, Fraction) or mult < 1:
                raise ValueError(f"bad spectrum entry ({alpha!r}, {mult!r})")
            if prev is not None and alpha <= prev:
                raise ValueError("spectrum entries must be strictly increasing")
            prev = alpha

    @classmethod
    def from_counts(cls, counts: Mapping) -> "Spectrum":
        merged: Counter = Counter()
        for alpha, mult in counts.items():
            if mult < 0 or int(mult) != mult:
                raise InvariantError(f"coefficient {mult} of t^{alpha} is not a nonnegative integer")
            if mult:
                merged[alpha if type(alpha) is Fraction else Fraction(alpha)] += int(mult)
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def from_exponents(cls, exponents: Iterable) -> "Spectrum":
        return cls.from_counts(Counter(Fraction(a) for a in exponents))

    @property
    def mu(self) -> int:
        return sum(m for _, m in self.entries)

    def __len__(self):
        return self.mu

    def __iter__(self):
        for alpha, mult in self.entries:
            for _ in range(mult):
                yield alpha

    def counts(self) -> Counter:
        return Counter(dict(self.entries))

    def min(self) -> Fraction:
        return self.entries[0][0]

    def max(self) -> Fraction:
        return self.entries[-1][0]

    def reflect(self, total=2) -> "Spectrum":
        return Spectrum.from_counts({total - a: m for a, m in self.entries})

    def below(self, x=ONE) -> "Spectrum":
        return Spectrum(tuple(e for e in self.entries if e[0] < x))

    def above(self, x=ONE) -> "Spectrum":
        return Spectrum(tuple(e for e in self.entries if e[0] > x))

    def union(self, other: "Spectrum") -> "Spectrum":
        return Spectrum.from_counts(self.counts() + other.counts())

    def __str__(self):
        return "{" + ", ".join(str(a) if m == 1 else f"{a} (x{m})" for a, m in self.entries) + "}"


def _cd(data) -> CharacteristicData:
    return data if isinstance(data, CharacteristicData) else characteristic_data(data)


def sub_unit_by_stage(cd) -> list[Counter]:
    """Exponents below 1, grouped by the stage that produces them.

    Stage ``nu`` gives ``(i/n + j/w + r) / nprime`` for ``0 < i < n``,
    ``0 < j < w``, ``0 <= r < nprime`` with ``i/n + j/w < 1``.
    """
    cd = _cd(cd)
    out = []
    for nu in range(cd.g):
        n, w, npr = cd.n[nu], cd.w[nu], cd.nprime[nu + 1]
        stage: Counter = Counter()
        for i in range(1, n):
            # largest j with j/w < 1 - i/n, i.e. j*n < w*(n - i)
            jmax = (w * (n - i) - 1) // n
            for j in range(1, jmax + 1):
                base = Fraction(i, n) + Fraction(j, w)
                for r in range(npr):
                    stage[(base + r) / npr] += 1
        out.append(stage)
    return out


def spectrum_enumeration(cd) -> Spectrum:
    """Spectrum from lattice-point enumeration plus reflection about 1."""
    total: Counter = Counter()
    for stage in sub_unit_by_stage(cd):
        total += stage
    low = Spectrum.from_counts(total)
    return low.union(low.reflect())


# Exponent polynomials: Counter mapping exponent -> coefficient.

def _geometric_open(d: int) -> Counter:
    """``sum_{i=1}^{d-1} t^{i/d}``, the expansion of ``(t^{1/d} - t)/(1 - t^{1/d})``."""
    return Counter({Fraction(i, d): 1 for i in range(1, d)})


def _geometric_closed(d: int) -> Counter:
    """``sum_{r=0}^{d-1} t^{r/d}``, the expansion of ``(1 - t)/(1 - t^{1/d})``."""
    return Counter({Fraction(r, d): 1 for r in range(d)})


def _mul(p: Counter, q: Counter) -> Counter:
    out: Counter = Counter()
    for a, ca in p.items():
        for b, cb in q.items():
            out[a + b] += ca * cb
    return out


def _scale(p: Counter, d: int) -> Counter:
    """Substitute ``t -> t^{1/d}``."""
    return Counter({a / d: c for a, c in p.items()})


def _shift(p: Counter, s: Fraction) -> Counter:
    return Counter({a + s: c for a, c in p.items()})


def _phi(cd: CharacteristicData, g: int) -> Counter:
    if g == 1:
        k, n = cd.pairs[0]
        return _mul(_geometric_open(k), _geometric_open(n))
    prev = _phi(cd, g - 1)
    if ONE in prev:
        raise InvariantError(f"exponent 1 in the level-{g - 1} expansion")
    n, w = cd.n[g - 1], cd.w[g - 1]
    low = Counter({a: c for a, c in prev.items() if a < 1})
    high = Counter({a: c for a, c in prev.items() if a > 1})
    out = _mul(_geometric_open(w), _geometric_open(n))
    out += _mul(_geometric_closed(n), _scale(low, n))
    out += _shift(_mul(_geometric_closed(n), _scale(high, n)), 1 - Fraction(1, n))
    for a, c in out.items():
        if c < 0:
            raise InvariantError(f"negative coefficient {c} at t^{a}")
    return out


def phi_recursive(cd) -> Spectrum:
    """Spectrum from the recursive generating function, one pair at a time.

    The level-``g`` polynomial is the product of the two open geometric sums
    for ``w_g`` and ``n_g``, plus the level-``g-1`` polynomial with
    ``t -> t^{1/n_g}`` applied and multiplied by a closed geometric sum; its
    part above 1 is also shifted by ``1 - 1/n_g``.
    """
    cd = _cd(cd)
    return Spectrum.from_counts(_phi(cd, cd.g))


def quasihomogeneous_spectrum(weights: Sequence) -> Spectrum:
    """Spectrum of a quasihomogeneous function with the given weights.

    Each weight must be ``1/d`` with integral ``d >= 2``; the result is
    ``{sum_i m_i w_i : 1 <= m_i <= d_i - 1}``.
    """
    poly = Counter({Fraction(0): 1})
    for wt in weights:
        wt = Fraction(wt)
        if not 0 < wt < 1:
            raise ValueError(f"weight {wt} not in (0, 1)")
        inv = 1 / wt
        if inv.denominator != 1:
            raise ValueError(f"weight {wt} has non-integral reciprocal; the factor is not a finite sum")
        poly = _mul(poly, _geometric_open(int(inv)))
    return Spectrum.from_counts(poly)


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


def fractional_parts_sum_to_two(a1, a2, a3) -> bool:
    """True iff the fractional parts of ``a1, a2, a3`` sum to 2.

    The three numbers must have an integral sum.
    """
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    if (a1 + a2 + a3).denominator != 1:
        raise ValueError(f"{a1} + {a2} + {a3} is not an integer")
    return _frac(a1) + _frac(a2) + _frac(a3) == 2


def fractional_parts_criterion(a1, a2, a3) -> bool:
    """Equivalent form of :func:`fractional_parts_sum_to_two`:
    ``a1`` not integral and ``frac(a2 + a3) < frac(a3)``."""
    a1, a2, a3 = Fraction(a1), Fraction(a2), Fraction(a3)
    if (a1 + a2 + a3).denominator != 1:
        raise ValueError(f"{a1} + {a2} + {a3} is not an integer")
    return a1.denominator != 1 and _frac(a2 + a3) < _frac(a3)


def steenbrink_classes(m_alpha: int, neighbor_mults: Sequence[int]) -> list[int]:
    """Values ``0 < c < m_alpha`` whose twisted line bundle has a section.

    That is, ``sum_beta frac(c m_beta / m_alpha) == 2``. Divisors meeting at
    most two others contribute nothing.
    """
    if len(neighbor_mults) <= 2:
        return []
    target = 2 * m_alpha
    return [c for c in range(1, m_alpha) if sum((c * mb) % m_alpha for mb in neighbor_mults) == target]


def spectrum_steenbrink(dec, cd=None) -> Spectrum:
    """Spectrum from the multiplicities on the resolution.

    Each valid ``c`` at a vertex of multiplicity ``m`` gives the exponent
    ``2 - c/m`` in ``(1, 2)``; the exponents below 1 follow by symmetry.
    """
    from .resolution import decorate

    if not hasattr(dec, "graph"):
        dec = decorate(dec)
    cd = _cd(cd if cd is not None else dec.pairs)
    graph, m = dec.graph, dec.m
    high: Counter = Counter()
    for v in graph.vertices:
        if v.is_black:
            continue
        nbrs = graph.neighbors(v)
        for c in steenbrink_classes(m[v], [m[u] for u in nbrs]):
            high[2 - Fraction(c, m[v])] += 1
    count = sum(high.values())
    if 2 * count != cd.mu:
        raise InvariantError(f"{count} classes found, expected mu/2 = {cd.mu // 2}")
    upper = Spectrum.from_counts(high)
    return upper.union(upper.reflect())


def check_symmetry(s: Spectrum, total=2) -> bool:
    """True iff ``alpha -> total - alpha`` preserves the multiset."""
    return s.reflect(total) == s


def first_difference(a: Spectrum, b: Spectrum):
    """First exponent (in increasing order) whose multiplicity differs, or ``None``.

    Returns ``(alpha, mult_in_a, mult_in_b)``.
    """
    if a.entries == b.entries:
        return None
    ca, cb = a.counts(), b.counts()
    for alpha in sorted(set(ca) | set(cb)):
        if ca[alpha] != cb[alpha]:
            return alpha, ca[alpha], cb[alpha]
    return None
