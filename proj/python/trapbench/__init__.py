"""Dynamic deceptive trap-function benchmark with dissortative-mating GAs."""

from ._core import (
    Bitstring,
    ComparisonVerdict,
    ConcatTrapProblem,
    ConfigError,
    DynamicsSpec,
    Environment,
    Rng,
    TrapSpec,
    __version__,
    admga_solve_static,
    averaged_fbg,
    complement,
    concat_fitness,
    deceptiveness_threshold,
    default_pm_grid,
    flip_count_for,
    hamming,
    is_deceptive,
    list_algorithms,
    mask_sequence,
    mean_best_of_generation,
    random_bitstring,
    run_cell,
    run_trace,
    student_t_two_tailed_p,
    t_critical_two_tailed,
    t_test_paired,
    t_test_two_sample,
    trap_value,
    unitation,
    xor_bits,
)

__all__ = [
    "Bitstring",
    "ComparisonVerdict",
    "ConcatTrapProblem",
    "ConfigError",
    "DynamicsSpec",
    "Environment",
    "Rng",
    "TrapSpec",
    "__version__",
    "admga_solve_static",
    "averaged_fbg",
    "complement",
    "concat_fitness",
    "deceptiveness_threshold",
    "default_pm_grid",
    "flip_count_for",
    "hamming",
    "is_deceptive",
    "list_algorithms",
    "mask_sequence",
    "mean_best_of_generation",
    "random_bitstring",
    "run_cell",
    "run_trace",
    "student_t_two_tailed_p",
    "t_critical_two_tailed",
    "t_test_paired",
    "t_test_two_sample",
    "trap_value",
    "unitation",
    "xor_bits",
]
