DECAY_MODELS = ('algebraic', 'exponential')

MIN_FIT_SAMPLES = 4

SAMPLES_PER_PERIOD = 8

# search interval of the oscillation envelope exponent
ENVELOPE_BOUNDS = (-4.0, 4.0)
