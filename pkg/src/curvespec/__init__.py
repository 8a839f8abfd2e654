"""Resolution combinatorics, spectrum and variance of an irreducible plane
curve singularity, computed exactly from its Puiseux pairs."""

__version__ = "0.1.0"

from .errors import CurveSpecError, InvalidPairsError, InvariantError, ResourceLimitError
from .puiseux import (
    CharacteristicData,
    ContinuedFraction,
    ModifiedPuiseuxPairs,
    PuiseuxPairs,
    characteristic_data,
    characteristic_exponents,
    continued_fraction,
    invert_pairs,
    pairs_from_exponents,
    parse_pairs,
)
from .resolution import (
    BLACK,
    DecoratedResolution,
    DualGraph,
    EnriquesDiagram,
    Vertex,
    build_enriques,
    decorate,
    discrepancies,
    dual_graph,
    export_dot,
    log_canonical_threshold,
    multiplicities,
    verify_closed_forms,
)
from .spectrum import (
    Spectrum,
    check_symmetry,
    fractional_parts_sum_to_two,
    phi_recursive,
    quasihomogeneous_spectrum,
    spectrum_enumeration,
    spectrum_steenbrink,
)
from .variance import hertling_check, lattice_E, lattice_F, stage_stats, variance
from .verify import verify_pairs
