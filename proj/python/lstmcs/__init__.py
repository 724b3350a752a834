"""Python surface for the LSTM-guided distributed compressive sensing core.

Everything is implemented in the C++ extension module `_lstmcs`; this package
re-exports it under a stable name.
"""

from _lstmcs import (
    default_config,
    gen_measurement_ensemble,
    gen_sparse_ensemble,
    lstm_solve,
    measure,
    nmse,
    omp_solve,
    run_command,
    somp_solve,
)

__all__ = [
    "default_config",
    "gen_measurement_ensemble",
    "gen_sparse_ensemble",
    "lstm_solve",
    "measure",
    "nmse",
    "omp_solve",
    "run_command",
    "somp_solve",
]
