MAX_HERMITE_ORDER = 12

# relative weighted mass allowed in the outer frame of the box
HERMITE_TAIL_TOL = 1e-6

# width of the outer frame, as a fraction of L
HERMITE_TAIL_FRAME = 0.1
