"""Field and photon correlations of quantized vector light at slit openings."""

from .complementarity import (
    ComplementarityReport,
    active_mode_count,
    active_modes,
    distinguishability,
    field_purity,
    order_n_complementarity,
    particle_entropy,
    single_mode_per_slit,
    slit_photon_numbers,
    total_visibility,
    triality_report,
)
from .correlations import (
    ReducedDensityMatrix,
    cross_spectral_density,
    photon_index_tuples,
    reduced_density_matrix,
    reduced_density_matrix_oracle,
)
from .errors import CapacityError, ConfigError, PhysicsError
from .fields import (
    FieldDensityMatrix,
    FieldGeometry,
    cartesian_coherence_matrix,
    degree_of_coherence,
    field_density_matrix,
    random_geometry,
    slit_intensities,
)
from .fock import (
    ModeLabel,
    apply_annihilation,
    apply_creation,
    basis_dimension,
    block_basis,
    enumerate_basis,
)
from .fringes import FringeCurve, fringe_curve
from .states import (
    MultiphotonState,
    PhotonBlock,
    from_first_quantized,
    mix,
    pure_state,
    random_state,
    single_photon_state,
    to_first_quantized,
    two_photon_superposition,
    vacuum_state,
)

__version__ = "0.1.0"
