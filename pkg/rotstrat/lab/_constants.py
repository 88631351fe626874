# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4

SNAPSHOT_MAGIC = b'BVXL'
FORMAT_VERSION = 1

# little-endian: magic, version, N, Nv, bc, dealias numerator and
# denominator, L, Omega, Gamma, nu, t,
# frame, formulation, background flag, A, B1, B2
SNAPSHOT_HEADER = '<4sIIIBII5dBBB3d'

INIT_TYPES = (
    'vortex',
    'vortex_plus_perturbation',
    'random_baroclinic',
    'single_mode',
    'from_snapshot',
    )

PERTURBATIONS = ('dipole', 'random_baroclinic', 'none')

BRANCHES = ('g', '+', '-')

DEFAULT_SERIES = ('energy', 'baroclinic_L2', 'moment_A', 'moment_B1', 'moment_B2')

# box side below which the vortex tail feels the periodic images
BOX_RULE_FACTOR = 8.0

# relative spread of I allowed between neighbouring Ω values
SWEEP_TOLERANCE = 0.02
