from fractions import Fraction


BOUNDARY_CONDITIONS = ('periodic', 'stress-free')

DEFAULT_DEALIAS = Fraction(2, 3)

# component order of the state vector
COMPONENTS = ('u1', 'u2', 'u3', 'theta')

# +1 for cosine (even) series in x3, -1 for sine (odd) series
STRESS_FREE_PARITY = (1, 1, -1, -1)

# parity of the vorticity components of a stress-free velocity
VORTICITY_PARITY = (-1, -1, 1)

FRAMES = ('stationary', 'rotating')
