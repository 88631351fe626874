from .decorators import validate_setter

from .exceptions import (
    AcceptanceError,
    CorruptSnapshotError,
    FitError,
    NumericalError,
    ResolutionError,
    ScenarioParseError,
    ScenarioValidationError,
    SnapshotError,
    SpecError,
    UnknownExperimentError,
    VersionMismatchError,
    )

from .utils import (
    parse_fraction,
    validate_array,
    validate_value,
    )
