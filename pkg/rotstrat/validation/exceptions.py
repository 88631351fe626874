class SpecError(ValueError):
    ''' invalid grid, field or operator input '''


class ScenarioParseError(SpecError):
    '''
    Description
    ------------
    Raised when a scenario file line cannot be parsed.

    Parameters
    ------------
    message : str
        Error message.
    line : int | None
        1-based line number of the offending line.
    '''

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)


class ScenarioValidationError(SpecError):
    '''
    Description
    ------------
    Raised when a parsed scenario violates one of its invariants.

    Parameters
    ------------
    message : str
        Error message.
    invariant : str | None
        Short name of the violated invariant.
    '''

    def __init__(self, message, invariant=None):
        self.invariant = invariant
        super().__init__(message)


class ResolutionError(SpecError):
    ''' the grid cannot resolve the requested quantity '''


class FitError(ValueError):
    ''' a time series cannot be fitted '''


class NumericalError(ArithmeticError):
    ''' non-finite values or runaway growth during a run '''


class SnapshotError(ValueError):
    ''' base class for snapshot IO failures '''


class CorruptSnapshotError(SnapshotError):
    pass


class VersionMismatchError(SnapshotError):
    pass


class AcceptanceError(AssertionError):
    '''
    Description
    ------------
    Raised when one or more acceptance checks fail and assertions are
    enabled.

    Parameters
    ------------
    failed : list
        Names of the failed checks.
    '''

    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__(
            f'acceptance checks failed: {", ".join(self.failed)}'
            )


class UnknownExperimentError(LookupError):
    ''' experiment name that is neither a preset nor a scenario file '''
