"""Signal processing on finite groups: triple correlation, full and
selective bispectra, and bispectrum inversion."""

from .errors import (
    GSpectraError,
    IncompleteInputError,
    IncompletenessError,
    InconsistentInputError,
    InvalidParameterError,
    InversionFailureError,
    NonGenericSignalError,
    ConsistencyError,
    UnsupportedError,
)
from .groups import (
    FiniteGroup,
    GroupElement,
    GroupSignal,
    act,
    group_from_kind,
    make_commutative,
    make_cyclic,
    make_dihedral,
    make_full_octahedral,
    make_octahedral,
    orbit_distance,
    random_signal,
)
from .irreps import (
    CharacterTable,
    Irrep,
    IrrepSet,
    KroneckerTable,
    characters,
    irreps_commutative,
    irreps_cyclic,
    irreps_dihedral,
    irreps_for,
    irreps_full_octahedral,
    irreps_octahedral,
    kronecker_table,
)
from .fourier import (
    FourierCoefficients,
    check_equivariance,
    fft_cyclic,
    gft,
    igft,
    igft_complex,
    plancherel_gap,
)
from .clebsch import CGDecomposition, cg_dihedral_2d, cg_general, get_cg
from .spectra import (
    BispectrumCoefficients,
    SelectionPlan,
    TripleCorrelation,
    avg_pool,
    commutative_bispectrum,
    full_bispectrum,
    max_pool,
    selection_plan,
    selective_bispectrum,
    triple_correlation,
)
from .inversion import (
    InversionResult,
    fix_phase_cyclic,
    invert,
    invert_commutative,
    invert_cyclic,
    invert_dihedral,
    invert_full_octahedral,
    invert_octahedral,
)
from .recovery import (
    RecoveryConfig,
    attack_reference,
    generic_signal,
    max_pool_attack,
    recover,
    recover_multistart,
    recovery_gradient,
    recovery_loss,
)
from .bench import BenchRecord, bench_suite, fit_scaling, write_csv

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
