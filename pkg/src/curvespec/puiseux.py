"""Puiseux pairs, the integers derived from them, and continued fractions.

Everything here is exact: integers are Python ints and rationals are
:class:`fractions.Fraction`. All types are immutable.

Indexing follows Python conventions. For ``g`` pairs, ``pairs[0]`` is the
first pair, ``CharacteristicData.w[0]`` is the first weight, and
``CharacteristicData.nprime`` has ``g + 1`` entries with ``nprime[nu]`` the
product of the ``n`` values strictly after stage ``nu`` (so ``nprime[0]``
is the product of all of them and ``nprime[g] == 1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import InvalidPairsError, InvariantError

__all__ = [
    "ModifiedPuiseuxPairs",
    "PuiseuxPairs",
    "CharacteristicData",
    "ContinuedFraction",
    "parse_pairs",
    "format_pairs",
    "characteristic_data",
    "continued_fraction",
    "invert_pairs",
    "characteristic_exponents",
    "pairs_from_exponents",
]

_PAIR_RE = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*$")


def _check_common(pairs: Sequence[tuple[int, int]]):
    if len(pairs) == 0:
        raise InvalidPairsError("empty pair list (a smooth branch has no Puiseux pairs)")
    for idx, pair in enumerate(pairs, start=1):
        if len(pair) != 2:
            raise InvalidPairsError(f"expected (k, n), got {pair!r}", idx)
        k, n = pair
        if not isinstance(k, int) or not isinstance(n, int) or isinstance(k, bool) or isinstance(n, bool):
            raise InvalidPairsError(f"entries must be integers, got {pair!r}", idx)
        if k < 1 or n < 1:
            raise InvalidPairsError(f"entries must be positive, got ({k},{n})", idx)
        if gcd(k, n) != 1:
            raise InvalidPairsError(f"gcd({k},{n})={gcd(k, n)}, entries must be coprime", idx)
        if idx >= 2 and n < 2:
            raise InvalidPairsError(f"n must be at least 2, got ({k},{n})", idx)


@dataclass(frozen=True)
class ModifiedPuiseuxPairs:
    """Pairs with respect to fixed coordinates; ``n_1 = 1`` is allowed."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        self._validate()

    def _validate(self):
        _check_common(self.pairs)

    @property
    def g(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    def __str__(self):
        return format_pairs(self)


@dataclass(frozen=True)
class PuiseuxPairs(ModifiedPuiseuxPairs):
    """Puiseux pairs ``(k_nu, n_nu)`` of an irreducible singular branch.

    Requires every ``n >= 2``, coprime entries and ``k_1 > n_1``.
    """

    def _validate(self):
        _check_common(self.pairs)
        k1, n1 = self.pairs[0]
        if n1 < 2:
            raise InvalidPairsError(f"n must be at least 2, got ({k1},{n1})", 1)
        if k1 <= n1:
            raise InvalidPairsError(f"first pair needs k > n, got ({k1},{n1})", 1)


def _as_pairs(pairs) -> PuiseuxPairs:
    if isinstance(pairs, PuiseuxPairs):
        return pairs
    if isinstance(pairs, str):
        return parse_pairs(pairs)
    return PuiseuxPairs(tuple(tuple(p) for p in pairs))


def parse_pairs(text: str) -> PuiseuxPairs:
    """Parse ``"k1,n1;k2,n2;..."`` into validated :class:`PuiseuxPairs`."""
    if not text or not text.strip():
        raise InvalidPairsError("empty pair list (a smooth branch has no Puiseux pairs)")
    parsed = []
    for idx, chunk in enumerate(text.split(";"), start=1):
        match = _PAIR_RE.match(chunk)
        if match is None:
            raise InvalidPairsError(f"malformed pair {chunk.strip()!r}, expected 'k,n'", idx)
        parsed.append((int(match.group(1)), int(match.group(2))))
    return PuiseuxPairs(tuple(parsed))


def format_pairs(pairs: Iterable[tuple[int, int]]) -> str:
    """Inverse of :func:`parse_pairs`."""
    return ";".join(f"{k},{n}" for k, n in pairs)


@dataclass(frozen=True)
class CharacteristicData:
    """Numerical invariants determined by the pairs.

    Attributes
    ----------
    pairs : PuiseuxPairs
    w : tuple of int
        Weights, ``w[0] = k_1`` and ``w[i] = w[i-1] n_{i-1} n_i + k_i``.
    nprime : tuple of int
        ``nprime[nu] = n_{nu+1} ... n_g`` for ``nu = 0..g``.
    mu_stage : tuple of int
        Per-stage Milnor contributions ``(w - 1)(n - 1) nprime``.
    mu : int
        Milnor number.
    alpha1 : Fraction
        Smallest exponent ``(k_1 + n_1) / (k_1 nprime[0])``.
    """

    pairs: PuiseuxPairs
    w: tuple[int, ...]
    nprime: tuple[int, ...]
    mu_stage: tuple[int, ...]
    mu: int
    alpha1: Fraction

    @property
    def g(self) -> int:
        return len(self.pairs)

    @property
    def k(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.pairs)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.pairs)


def characteristic_data(pairs) -> CharacteristicData:
    """Compute weights, cofactors, Milnor number and smallest exponent.

    The two integer identities linking these quantities are checked before
    returning; a failure raises :class:`InvariantError`.
    """
    pairs = _as_pairs(pairs)
    ks = [k for k, _ in pairs]
    ns = [n for _, n in pairs]
    g = len(pairs)

    w = [ks[0]]
    for i in range(1, g):
        w.append(w[i - 1] * ns[i - 1] * ns[i] + ks[i])
    nprime = [prod(ns[nu:]) for nu in range(g + 1)]
    mu_stage = [(w[i] - 1) * (ns[i] - 1) * nprime[i + 1] for i in range(g)]
    alpha1 = Fraction(ks[0] + ns[0], ks[0] * nprime[0])

    cd = CharacteristicData(
        pairs=pairs,
        w=tuple(w),
        nprime=tuple(nprime),
        mu_stage=tuple(mu_stage),
        mu=sum(mu_stage),
        alpha1=alpha1,
    )
    for name, ok, detail in characteristic_identities(cd):
        if not ok:
            raise InvariantError(f"{name} failed for {format_pairs(pairs)}: {detail}")
    return cd


def characteristic_identities(cd: CharacteristicData):
    """Yield ``(name, ok, detail)`` for the integer identities of ``cd``.

    * coprimality and strict growth of the weights;
    * partial sums of the stage Milnor numbers, for every prefix ``j``;
    * ``w_g n_g == sum_nu k_nu nprime_{nu-1} nprime_nu``.
    """
    ks, ns, w, npr = cd.k, cd.n, cd.w, cd.nprime
    g = cd.g
    for i in range(g):
        ok = gcd(w[i], ns[i]) == 1 and (i == 0 or w[i] > w[i - 1] * ns[i - 1] * ns[i])
        yield f"weight_coprime_growth[{i + 1}]", ok, f"w={w[i]}, n={ns[i]}"
    for j in range(1, g + 1):
        lhs = sum(cd.mu_stage[:j])
        rhs = (w[j - 1] - 1) * npr[j - 1]
        for nu in range(1, j + 1):
            n_before = ns[nu - 2] if nu >= 2 else 0
            rhs -= (ks[nu - 1] + n_before * ns[nu - 1] - 1) * npr[nu]
        yield f"mu_partial_sum[{j}]", lhs == rhs, f"{lhs} vs {rhs}"
    lhs = w[-1] * ns[-1]
    rhs = sum(ks[nu - 1] * npr[nu - 1] * npr[nu] for nu in range(1, g + 1))
    yield "weight_cofactor_sum", lhs == rhs, f"{lhs} vs {rhs}"


@dataclass(frozen=True)
class ContinuedFraction:
    """Euclidean continued fraction of ``k/n``.

    ``a[i-1]`` is the partial quotient ``a_i`` (``i = 1..h``), ``r[i]`` the
    remainder ``r_i`` (``i = 0..h+1``), and ``convergents[i+1]`` the pair
    ``(P_i, Q_i)`` for ``i = -1..h``. Use :meth:`convergent` for 1-based
    access with the ``-1`` and ``0`` seeds.
    """

    k: int
    n: int
    a: tuple[int, ...]
    r: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]

    @property
    def h(self) -> int:
        return len(self.a)

    def quotient(self, i: int) -> int:
        return self.a[i - 1]

    def convergent(self, i: int) -> tuple[int, int]:
        return self.convergents[i + 1]

    def P(self, i: int) -> int:
        return self.convergents[i + 1][0]

    def Q(self, i: int) -> int:
        return self.convergents[i + 1][1]

    def value(self) -> Fraction:
        """Rebuild ``k/n`` from the partial quotients alone."""
        x = Fraction(self.a[-1])
        for q in reversed(self.a[:-1]):
            x = q + 1 / x
        return x


def continued_fraction(k: int, n: int) -> ContinuedFraction:
    """Expand ``k/n`` by the Euclidean algorithm.

    No normalization of the last quotient is applied, and ``k < n`` gives a
    leading quotient of 0.

    >>> continued_fraction(7, 2).a
    (3, 2)
    >>> continued_fraction(1, 3).r
    (1, 3, 1, 0)
    """
    if k < 1 or n < 2:
        raise ValueError(f"need k >= 1 and n >= 2, got ({k},{n})")
    if gcd(k, n) != 1:
        raise ValueError(f"gcd({k},{n})={gcd(k, n)}, entries must be coprime")
    r = [k, n]
    a = []
    while r[-1] != 0:
        q, rem = divmod(r[-2], r[-1])
        a.append(q)
        r.append(rem)
    conv = [(0, 1), (1, 0)]
    for q in a:
        (p2, q2), (p1, q1) = conv[-2], conv[-1]
        conv.append((q * p1 + p2, q * q1 + q2))
    cf = ContinuedFraction(k=k, n=n, a=tuple(a), r=tuple(r), convergents=tuple(conv))
    if cf.r[cf.h] != 1 or cf.convergent(cf.h) != (k, n):
        raise InvariantError(f"continued fraction of {k}/{n} is inconsistent")
    return cf


def invert_pairs(pairs) -> ModifiedPuiseuxPairs:
    """Pairs with respect to the swapped coordinates: the first pair is reversed."""
    pairs = pairs if isinstance(pairs, ModifiedPuiseuxPairs) else ModifiedPuiseuxPairs(tuple(pairs))
    (k1, n1), rest = pairs.pairs[0], pairs.pairs[1:]
    return ModifiedPuiseuxPairs(((n1, k1),) + rest)


def characteristic_exponents(pairs) -> list[Fraction]:
    """Exponents ``k_1/n_1 + k_2/(n_1 n_2) + ...`` at which each new pair enters."""
    pairs = _as_pairs(pairs)
    out = []
    beta, denom = Fraction(0), 1
    for k, n in pairs:
        denom *= n
        beta += Fraction(k, denom)
        out.append(beta)
    return out


def pairs_from_exponents(exponents: Sequence) -> PuiseuxPairs:
    """Recover the pairs from the characteristic exponents.

    The product ``n_1 ... n_nu`` is the lcm of the denominators of the first
    ``nu`` exponents, which fixes each ``n`` and then each ``k``.
    """
    exps = [Fraction(e) for e in exponents]
    if not exps:
        raise InvalidPairsError("empty exponent list")
    pairs = []
    prev_beta, prev_denom = Fraction(0), 1
    for idx, beta in enumerate(exps, start=1):
        if beta <= prev_beta:
            raise InvalidPairsError(f"exponents must increase strictly, got {beta} after {prev_beta}", idx)
        denom = prev_denom * beta.denominator // gcd(prev_denom, beta.denominator)
        n = denom // prev_denom
        k = (beta - prev_beta) * denom
        if k.denominator != 1:
            raise InvariantError("non-integral k while inverting exponents")
        pairs.append((int(k), n))
        prev_beta, prev_denom = beta, denom
    result = PuiseuxPairs(tuple(pairs))
    if characteristic_exponents(result) != exps:
        raise InvalidPairsError(f"exponents {[str(e) for e in exps]} are not realized by any pairs")
    return result
