"""Age-of-information analysis for status updates facing an eavesdropper.

Closed-form FCFS M/M/1 age expressions, a weighted-product welfare
objective trading freshness at the legitimate receiver against staleness
at the eavesdropper, load-factor optimizers with the vanishing-capture
asymptote, a validating discrete-event simulator, and sweep tables behind
the headline figures.
"""

from .core import (
    AoiPair,
    DomainError,
    SystemParams,
    TradeoffWeight,
    aoi_pair,
    avg_aoi_mm1,
    bergson_objective,
    utilities,
)
from .optimize import (
    AsymptoteResult,
    OptimResult,
    asymptotic_polynomial,
    asymptotic_root,
    maximize_objective,
    minimize_aoi,
)
from .simulate import (
    AgeTrace,
    DegenerateRunError,
    EmptyTraceError,
    SimConfig,
    SimResult,
    age_integral,
    build_age_trace,
    lindley_departures,
    run,
)
from .sweeps import (
    SweepGrid,
    Table,
    asymptote_curve,
    fig1_objective_curves,
    fig2_rho_star_vs_beta,
    fig3_f_star_vs_a,
    fig4_rho_star_vs_a,
    run_sweep,
    table_filename,
    write_csv,
    write_jsonl,
)

__version__ = "0.1.0"

__all__ = [
    "AgeTrace",
    "AoiPair",
    "AsymptoteResult",
    "DegenerateRunError",
    "DomainError",
    "EmptyTraceError",
    "OptimResult",
    "SimConfig",
    "SimResult",
    "SweepGrid",
    "SystemParams",
    "Table",
    "TradeoffWeight",
    "age_integral",
    "aoi_pair",
    "asymptote_curve",
    "asymptotic_polynomial",
    "asymptotic_root",
    "avg_aoi_mm1",
    "bergson_objective",
    "build_age_trace",
    "fig1_objective_curves",
    "fig2_rho_star_vs_beta",
    "fig3_f_star_vs_a",
    "fig4_rho_star_vs_a",
    "lindley_departures",
    "maximize_objective",
    "minimize_aoi",
    "run",
    "run_sweep",
    "table_filename",
    "utilities",
    "write_csv",
    "write_jsonl",
]
