from . import (
    biotsavart,
    diagnostics,
    dynamics,
    lab,
    linops,
    reference,
    spectral,
    )

from .spectral import GridSpec, make_grid
from .linops import PhysParams
from .reference import VortexParams
from .dynamics import SimState, StepperConfig, run
from .lab import Scenario, load_scenario, parse_scenario, run_experiment
from .validation import *

__version__ = '0.1.0'
__author__ = 'Zachary Einck <zacharyeinck@gmail.com>'
