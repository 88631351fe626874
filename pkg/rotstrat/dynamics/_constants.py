FORMULATIONS = ('full', 'background_perturbation')

SCHEMES = ('lawson_rk4',)

DEFAULT_CFL = 0.5

DEFAULT_DT_MAX = 0.05

# abort when a norm exceeds this multiple of its initial value
BLOWUP_FACTOR = 1e6
