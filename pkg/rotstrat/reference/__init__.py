from ._constants import *

from .vortex import (
    VortexParams,
    background_values,
    edge_wrap_estimate,
    oseen,
    vortex_fields,
    vortex_solution,
    vortex_state,
    vortex_vorticity,
    )

from .hermite import (
    HermiteIndex,
    hermite_coefficients,
    hermite_function,
    hermite_indices,
    hermite_polynomial,
    hermite_projection,
    )

from .scaling import (
    ScaledSnapshot,
    from_scaled,
    heat_evolve2d,
    scale_field2d,
    scaled_grid,
    to_scaled,
    )
