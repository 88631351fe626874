from .laws import (
    VorticityState,
    biot_savart_ratio,
    potential_from_skew_gradient,
    state_from_vorticity,
    velocity2d_from_vorticity,
    velocity_from_vorticity_3d,
    vorticity_state,
    )
