"""Cross-checks every computation route and identity for a set of pairs.

:func:`verify_pairs` is the single entry point used by the CLI ``verify``
command and by the test suite. Sweeps over random pairs are driven by a
:class:`SweepSpec` and a seeded :class:`random.Random`.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .checks import Check, check_equal
from .errors import CurveSpecError, InvalidPairsError, InvariantError
from .puiseux import (
    PuiseuxPairs,
    _as_pairs,
    characteristic_data,
    characteristic_exponents,
    characteristic_identities,
    continued_fraction,
    format_pairs,
    invert_pairs,
    pairs_from_exponents,
)
from .resolution import (
    BLACK,
    DecoratedResolution,
    decorate,
    log_canonical_threshold,
    multiplicities,
    verify_closed_forms,
    with_multiplicities,
)
from .spectrum import (
    Spectrum,
    check_symmetry,
    first_difference,
    phi_recursive,
    quasihomogeneous_spectrum,
    spectrum_enumeration,
    spectrum_steenbrink,
    sub_unit_by_stage,
)
from .variance import hertling_check, stage_stats, variance

__all__ = [
    "VerificationReport",
    "verify_pairs",
    "perturb_multiplicity",
    "SweepSpec",
    "parse_sweep",
    "random_pairs",
    "sweep_cases",
    "describe",
]


@dataclass
class VerificationReport:
    pairs: PuiseuxPairs
    checks: list[Check] = field(default_factory=list)
    spectrum: Spectrum | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), "" if passed else detail))


def perturb_multiplicity(dec: DecoratedResolution, delta: int = 1) -> DecoratedResolution:
    """Fault-injection hook: shift the multiplicity of the first divisor."""
    m = dict(dec.m)
    m[dec.diagram.vertices[0]] += delta
    return with_multiplicities(dec, m)


def _route(report, name, fn, reference):
    try:
        s = fn()
    except InvariantError as exc:
        report.add(name, False, str(exc))
        return None
    diff = first_difference(s, reference)
    detail = "" if diff is None else f"first differing exponent {diff[0]}: multiplicity {diff[1]} vs {diff[2]}"
    report.add(name, diff is None, detail)
    return s


def _cf_checks(report, pairs):
    for nu, (k, n) in enumerate(pairs, start=1):
        cf = continued_fraction(k, n)
        dets = all(cf.P(i) * cf.Q(i - 1) - cf.P(i - 1) * cf.Q(i) == (-1) ** i for i in range(1, cf.h + 1))
        report.add(f"convergent_determinants[{nu}]", dets, f"stage {nu}")
        report.add(f"continued_fraction_value[{nu}]", cf.value() == Fraction(k, n), f"stage {nu}")


def _diagram_checks(report, dec):
    diagram, graph = dec.diagram, dec.graph
    order = diagram.order
    backwards = all(order[t] < order[v] for v, t in diagram.arrows())
    report.add("arrows_point_backwards", backwards)
    report.add("arrows_at_most_two", all(len(diagram.proximity[v]) <= 2 for v in diagram.white))
    report.add("first_vertex_free", len(diagram.proximity[diagram.vertices[0]]) == 0)
    report.add("black_single_arrow", diagram.proximity[BLACK] == (diagram.last_of_stage[-1],))
    report.add("dual_graph_tree", graph.is_tree(), f"{len(graph.edges)} edges, {len(graph.vertices)} vertices")
    rupt = graph.ruptures()
    report.add(
        "ruptures_are_stage_ends",
        rupt == list(diagram.last_of_stage) and all(graph.degree(v) == 3 for v in rupt),
        f"ruptures {rupt}, stage ends {list(diagram.last_of_stage)}",
    )
    others = [v for v in graph.vertices if v not in rupt and graph.degree(v) > 2]
    report.add("other_degrees_at_most_two", not others, f"{others}")


def _ordering_checks(report, dec, cd):
    diagram, e = dec.diagram, dec.e
    lct = log_canonical_threshold(dec)
    report.add("lct_attained_at_first_stage_end", e[diagram.last_of_stage[0]] == lct,
               f"min {lct} vs {e[diagram.last_of_stage[0]]}")
    report.add("lct_formula", lct == cd.alpha1, f"{lct} vs {cd.alpha1}")
    for nu in range(1, cd.g + 1):
        last = diagram.last_of_stage[nu - 1]
        evens = [v for v in diagram.stage_vertices(nu) if v.row % 2 == 0 or v == last]
        dec_ok = all(e[a] > e[b] for a, b in zip(evens, evens[1:]))
        report.add(f"even_vertices_decreasing[{nu}]", dec_ok, f"{[str(e[v]) for v in evens]}")


def verify_pairs(pairs, *, perturb: bool = False, max_vertices=None, max_weight=None) -> VerificationReport:
    """Run every route and identity for ``pairs``.

    Invalid input and guard violations propagate as exceptions; everything
    else becomes a :class:`Check` in the returned report. ``perturb``
    corrupts one multiplicity before the checks run.
    """
    pairs = _as_pairs(pairs)
    dec = decorate(pairs, max_vertices=max_vertices, max_weight=max_weight)
    cd = characteristic_data(pairs)
    report = VerificationReport(pairs)

    for name, ok, detail in characteristic_identities(cd):
        report.add(name, ok, detail)
    _cf_checks(report, pairs)
    report.add("inversion_involution", invert_pairs(invert_pairs(pairs)).pairs == pairs.pairs)
    report.add("exponent_round_trip", pairs_from_exponents(characteristic_exponents(pairs)) == pairs)

    if perturb:
        dec = perturb_multiplicity(dec)
    report.add("multiplicity_recursion",
               dict(multiplicities(dec.diagram)) == dict(dec.m), "stored multiplicities differ from recursion")

    reference = spectrum_enumeration(cd)
    report.spectrum = reference
    _route(report, "route_generating_function", lambda: phi_recursive(cd), reference)
    _route(report, "route_resolution", lambda: spectrum_steenbrink(dec, cd), reference)

    s = reference
    report.checks.append(check_equal("spectrum_size", s.mu, cd.mu))
    counts = [sum(st.values()) for st in sub_unit_by_stage(cd)]
    report.checks.append(check_equal("stage_counts", [2 * c for c in counts], list(cd.mu_stage)))
    report.add("support_in_open_interval", 0 < s.min() and s.max() < 2, f"[{s.min()}, {s.max()}]")
    report.add("no_unit_exponent", Fraction(1) not in s.counts())
    report.add("symmetric", check_symmetry(s))
    report.checks.append(check_equal("min_exponent", s.min(), cd.alpha1))
    report.checks.append(check_equal("max_exponent", s.max(), 2 - cd.alpha1))
    report.checks.append(check_equal("lct_equals_min_exponent", log_canonical_threshold(dec), s.min()))
    if cd.g == 1:
        k, n = pairs[0]
        report.add("quasihomogeneous_match", quasihomogeneous_spectrum([Fraction(1, k), Fraction(1, n)]) == s)

    _diagram_checks(report, dec)
    report.checks.extend(verify_closed_forms(dec))
    _ordering_checks(report, dec, cd)

    h = hertling_check(s, cd.g)
    report.add("variance_bound", h.holds, f"gap {h.gap} with g = {cd.g}")
    try:
        stats = stage_stats(cd, s)
    except InvariantError as exc:
        report.add("stage_statistics", False, str(exc))
    else:
        report.add("stage_statistics", True)
        total = sum((st.S for st in stats), Fraction(0)) / cd.mu
        report.checks.append(check_equal("variance_from_stages", total, variance(s)))
    return report


_SWEEP_ITEM = re.compile(r"^\s*([a-z]+)\s*(<=|>=|=)\s*(\d+)\s*$")
_SWEEP_KEYS = {("g", "<="): "g_max", ("g", ">="): "g_min", ("k", "<="): "k_max", ("n", "<="): "n_max",
               ("w", "<="): "w_max", ("count", "="): "count", ("seed", "="): "seed"}


@dataclass(frozen=True)
class SweepSpec:
    """Bounds for random pairs.

    ``g`` is uniform on ``[g_min, g_max]`` and fixed for the case; each ``n``
    uniform on ``[2, n_max]``; the first ``k`` uniform on ``(n, k_max]`` and
    later ones on ``[1, k_max]``. Non-coprime pairs are redrawn, and the
    tuple (with the same ``g``) is redrawn while the last weight exceeds
    ``w_max``.
    """

    g_max: int = 2
    g_min: int = 1
    k_max: int = 12
    n_max: int = 5
    w_max: int | None = None
    count: int = 50
    seed: int = 0


def parse_sweep(text: str) -> SweepSpec:
    """Parse e.g. ``"g<=2,k<=12,n<=5,count=50,seed=7"``."""
    values = {}
    for item in text.split(","):
        match = _SWEEP_ITEM.match(item)
        key = match and _SWEEP_KEYS.get((match.group(1), match.group(2)))
        if not key:
            raise InvalidPairsError(f"bad sweep item {item.strip()!r}")
        values[key] = int(match.group(3))
    spec = SweepSpec(**values)
    if spec.g_min < 1 or spec.g_max < spec.g_min or spec.n_max < 2 or spec.k_max < 3 or spec.count < 0:
        raise InvalidPairsError(f"infeasible sweep bounds {text!r}")
    return spec


def random_pairs(rng: random.Random, spec: SweepSpec, max_tries: int = 10_000) -> PuiseuxPairs:
    g = rng.randint(spec.g_min, spec.g_max)
    for _ in range(max_tries):
        pairs = []
        for nu in range(g):
            while True:
                n = rng.randint(2, spec.n_max)
                lo = n + 1 if nu == 0 else 1
                if lo > spec.k_max:
                    continue
                k = rng.randint(lo, spec.k_max)
                if gcd(k, n) == 1:
                    break
            pairs.append((k, n))
        if spec.w_max is not None:
            w = pairs[0][0]
            for i in range(1, g):
                w = w * pairs[i - 1][1] * pairs[i][1] + pairs[i][0]
            if w > spec.w_max:
                continue
        return PuiseuxPairs(tuple(pairs))
    raise CurveSpecError(f"no pairs within {spec} after {max_tries} draws")


def sweep_cases(spec: SweepSpec, distinct: bool = False) -> list[PuiseuxPairs]:
    """``spec.count`` cases from ``random.Random(spec.seed)``; with ``distinct``
    repeats are skipped (the generator must be able to produce enough)."""
    rng = random.Random(spec.seed)
    if not distinct:
        return [random_pairs(rng, spec) for _ in range(spec.count)]
    seen: dict = {}
    for _ in range(100 * spec.count + 100):
        if len(seen) == spec.count:
            break
        seen.setdefault(random_pairs(rng, spec), None)
    else:
        raise CurveSpecError(f"fewer than {spec.count} distinct cases within {spec}")
    return list(seen)


def describe(report: VerificationReport) -> str:
    return f"{format_pairs(report.pairs)}: {len(report.checks)} checks, mu = {report.spectrum.mu}"
