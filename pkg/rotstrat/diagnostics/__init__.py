from ._constants import *

from .series import (
    TimeSeries,
    default_window,
    series_frame,
    )

from .fitting import (
    DecayFit,
    OscillationFit,
    fit_decay,
    fit_max,
    fit_oscillation,
    phase_offset,
    )

from .functionals import (
    barotropic_vorticity,
    energy_functionals,
    functionals_at,
    gaussian_distance,
    geostrophic_norms,
    geostrophic_split,
    psi,
    rotating_moments,
    )

from .observers import (
    SERIES,
    SPLIT_SERIES,
    Observer,
    RecordView,
    )

from .dispersive import (
    DispersiveResult,
    dispersive_sweep,
    )
