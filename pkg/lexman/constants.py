CONVENTION_IDEAL = "ideal"

DEFAULT_SETTINGS = {
    # extra degrees added on top of max(generator degree, e_r) + n when picking D
    "truncation_margin": 2,
    # largest D the adaptive driver may reach before giving up
    "truncation_cap": 24,
    # hard cap on the number of steps applied by the stabilization pipeline
    "step_cap": 1000,
    # inclusion-exclusion enumerates subsets of generators; refuse beyond this
    "max_inclusion_exclusion_generators": 20,
    # Betti tables are computed over the lcm lattice of the generators
    "max_betti_generators": 64,
    # largest lcm lattice the Betti computation will walk
    "max_lattice_size": 20000,
    # characteristics compared when a pipeline run is audited
    "audit_characteristics": [0, 2],
    # characteristics used by theorem verification
    "default_characteristics": [0, 2, 3],
}

# bounds of the random instance generator at desk scale
MAX_RANDOM_VARIABLES = 5
