"""Tournament solutions, random models, brackets, and a Monte Carlo harness."""

from . import errors
from .core import Tournament, from_matrix, path_worstcase, transitive
from .experiments import (
    CSV_HEADER,
    ExperimentConfig,
    ResultRow,
    cell_seed,
    read_csv,
    run_cell,
    run_grid,
    write_csv,
)
from .models import (
    ModelSpec,
    RngStream,
    load_probability_matrix,
    probability_matrix,
    sample,
)
from .single_elim import (
    Bracket,
    is_superking,
    playout,
    se_winners_exhaustive,
    superking_bracket,
    validate_bracket,
    winning_bracket,
    winning_bracket_exhaustive,
)
from .solutions import (
    MAX,
    DominatingSet,
    KingSet,
    dominating_set_greedy,
    is_r_dominating,
    k_kings,
    middle_vertex,
    r_dominating_set,
    reach_within,
    top_cycle,
)

__all__ = [
    "Tournament",
    "from_matrix",
    "transitive",
    "path_worstcase",
    "MAX",
    "KingSet",
    "DominatingSet",
    "reach_within",
    "k_kings",
    "top_cycle",
    "dominating_set_greedy",
    "r_dominating_set",
    "is_r_dominating",
    "middle_vertex",
    "ModelSpec",
    "RngStream",
    "probability_matrix",
    "sample",
    "load_probability_matrix",
    "Bracket",
    "playout",
    "validate_bracket",
    "is_superking",
    "superking_bracket",
    "winning_bracket",
    "winning_bracket_exhaustive",
    "se_winners_exhaustive",
    "ExperimentConfig",
    "ResultRow",
    "run_cell",
    "run_grid",
    "write_csv",
    "read_csv",
    "cell_seed",
    "CSV_HEADER",
    "errors",
]

__version__ = "0.1.0"
