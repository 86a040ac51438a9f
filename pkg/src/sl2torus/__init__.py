"""Explicit parametrization of commuting unit-determinant 2x2 real matrix
pairs modulo simultaneous conjugation: spectral classification, the eleven
canonical sectors, equivalence testing, an independent conjugator-search
oracle, and depiction utilities."""

from .errors import (
    ClassificationAmbiguous,
    DegenerateCC,
    DeterminantError,
    ForbiddenCombo,
    NoRealEigenvalues,
    NotCommuting,
    ParamOutOfRange,
    SL2TorusError,
)
from .sl2 import (
    IDENTITY,
    SL2Matrix,
    SpectralType,
    ToleranceConfig,
    classify,
    conjugate,
    eigen_data,
    make_sl2,
    rotation,
    trace_class,
)
from .pairs import CommutingPair, allowed_combination, coarse_combo, make_pair
from .canonical import (
    SECTORS,
    CanonTrace,
    CanonicalPair,
    apply_conjugation,
    canonicalize,
    equivalent,
    reconstruct,
)
from .oracle import (
    ConjugatorSearchReport,
    exact_classify,
    search_conjugator,
    sl2_from_coords,
)
from .atlas import (
    SEPARATED,
    CellIncidence,
    EmbeddedPoint,
    SectorDomain,
    component_key,
    component_labels,
    depiction_component,
    embed,
    incidence,
    parameter_domain,
    sample_sector,
    sector_distance,
)

__version__ = "0.1.0"
