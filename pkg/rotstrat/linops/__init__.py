from .params import PhysParams

from .frames import (
    ModeFrame,
    ModeTable,
    frame_vectors,
    helmholtz_matrix,
    mode_frame,
    pjp_matrix,
    skew_matrix,
    )

from .projections import (
    ageostrophic_project,
    band_project,
    chi,
    geostrophic_project,
    helmholtz_project,
    wave_project,
    )

from .propagator import (
    Propagator,
    apply_propagator,
    linear_frequency,
    linear_propagator,
    mean_propagator,
    rotate_frame,
    )
