"""Named constants shared across the discrimination modules."""

# Largest operator dimension handled (2-qubit signal x 2 ports).
MAX_DIM = 8
# Largest number of signal states accepted by the ensemble constructors.
MAX_M = 360

# Tolerances. Every operation takes its tolerance as an explicit keyword argument
# defaulting to one of these.
DEFAULT_TOL = 1e-10
PRIOR_TOL = 1e-12
ANGLE_TOL = 1e-8
FEASIBILITY_TOL = 1e-12
PROBABILITY_FLOOR = 1e-12
# Probabilities below this are treated as exact zeros before taking logs.
ZERO_PROBABILITY = 1e-15

# Oracle refinement.
STEP_SHRINK = 0.5
MIN_STEP = 1e-9
MIN_GRID = 8

# ValidationError codes.
ERROR_INVALID = "invalid"
ERROR_CONTRACT = "contract"
ERROR_CONVERSION = "conversion"
ERROR_INFEASIBLE = "infeasible"
ERROR_DIMENSION = "dimension"

# Strategy families understood by the CLI.
FAMILY_COVARIANT = "covariant"
FAMILY_W = "w"
FAMILY_SUBGROUP = "subgroup"
FAMILY_MU4 = "mu4"
FAMILY_COVARIANT_FROM_W = "covariant-from-w"
FAMILY_GENERAL_W = "general-w"
FAMILY_STATE_DIRECTIONS = "state-directions"
FAMILY_VON_NEUMANN = "von-neumann"
FAMILY_PAIRS = "pairs"
FAMILY_CHOICES = (
    (FAMILY_COVARIANT, "Z_M-covariant M-element POVM"),
    (FAMILY_W, "Optimal 3-element POVM W(m, n)"),
    (FAMILY_SUBGROUP, "Subgroup POVM B_l"),
    (FAMILY_MU4, "4-element shifted convex combination for M=5"),
    (FAMILY_COVARIANT_FROM_W, "Uniform combination of all shifts of W"),
    (FAMILY_GENERAL_W, "General real 3-element POVM W(theta, phi_a, phi_b)"),
    (FAMILY_STATE_DIRECTIONS, "POVM along the signal states (P_e-optimal)"),
    (FAMILY_VON_NEUMANN, "Orthogonal pair of signal states (even M)"),
    (FAMILY_PAIRS, "Feasible (m, n) pairs for W"),
)

FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMAT_RANK1 = "rank1"
