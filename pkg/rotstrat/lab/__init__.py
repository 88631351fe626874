from ._constants import *

from .scenario import (
    KEYS,
    Scenario,
    load_scenario,
    parse_scenario,
    )

from .snapshot import (
    inspect_snapshot,
    load_snapshot,
    read_header,
    save_snapshot,
    )

from .initial import (
    dipole,
    initial_state,
    random_baroclinic,
    single_mode,
    single_mode_reference,
    vortex_initial,
    )

from .catalog import (
    PRESETS,
    Check,
    Preset,
    catalog,
    get_preset,
    )

from .runner import (
    RunResult,
    acceptance_frame,
    fits_frame,
    resolve,
    run_experiment,
    simulate,
    )

from .verify import verify

from .cli import main
