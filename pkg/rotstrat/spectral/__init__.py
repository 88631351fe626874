from ._constants import *

from .grid import (
    Grid,
    GridSpec,
    get_fft_workers,
    make_grid,
    set_fft_workers,
    )

from .fields import (
    PhysicalField,
    SpectralField,
    dealias,
    divergence_residual,
    enforce_parity,
    parity_residual,
    sample_physical,
    to_physical,
    to_spectral,
    )

from .operators import (
    baroclinic_part,
    barotropic_plane,
    curl,
    curl2,
    divergence,
    gradient,
    laplacian,
    plane_to_volume,
    skew_gradient,
    vertical_mean,
    )

from .norms import (
    Moments,
    energy,
    grad_sq,
    h1_norm,
    l2_norm,
    moments,
    weighted_norm,
    )
