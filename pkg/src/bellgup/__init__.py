"""Bell operators, their squares, and minimal-length deformations."""

from .bounds import CODATA, ExperimentSpec, GupBounds, gup_bounds, reproduce_paper_table
from .cglmp import (
    OPTIMAL_GAMMA,
    QUOTED_MAX,
    CglmpSettings,
    c223_operator,
    c223_square_rhs,
    cglmp_max,
    g_correlator,
    optimal_state,
    square_gap,
)
from .chsh import (
    TSIRELSON_BOUND,
    BellStateKind,
    ChshSettings,
    bell_state,
    chsh_operator,
    chsh_square_identity,
    optimal_settings,
    tsirelson_max,
)
from .gup import (
    DeformationModel,
    EvalMode,
    GupParams,
    Kinematics,
    capital_P,
    deformed_b2,
    deformed_c223_sq,
    f_of_p,
    g_factor,
    relative_deviation,
    spin_commutator_residual,
)
from .observables import (
    Direction,
    OutcomeSpectrum,
    QutritObservable,
    qubit_observable,
    qutrit_observable,
    unitary_from_params,
)
from .optimize import MaximizeResult, OptimizerConfig, maximize

__version__ = "0.1.0"
