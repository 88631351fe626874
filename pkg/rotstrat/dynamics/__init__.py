from ._constants import *

from .state import (
    SimState,
    StepperConfig,
    )

from .rhs import nonlinear_rhs

from .stepper import (
    Trajectory,
    convergence_order,
    estimate_dt,
    run,
    step,
    )

from .split import (
    LambdaRSplit,
    SplitTracker,
    lambda_r_split,
    )
