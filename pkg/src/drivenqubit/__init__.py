"""Nonclassicality of a linearly driven, dephasing qubit.

Closed forms for the no-signaling-in-time witness and the temporal steering
parameter, a density-matrix oracle that checks them, and solvers that tune the
chirp rate to maximize either quantity at a chosen time.
"""

from .dynamics import (
    DrivingProtocol,
    NoiseModel,
    PauliVector,
    PropagatorBlock,
    evolve,
    measurement_dephasing_x,
    phase_integral,
    plus_state,
    propagator,
)
from .oracle import (
    DensityMatrix,
    IntegratorConfig,
    StepBudgetExceeded,
    integrate,
    lindblad_rhs,
    nonselective_measure_x,
    steering_oracle,
    witness_oracle,
)
from .solvers import (
    ConvergenceError,
    NoMaximumError,
    SearchWindow,
    TailorResult,
    find_extrema,
    tailor,
)
from .steering import (
    SteeringPoint,
    steering_bound,
    steering_delta_derivative,
    steering_extrema,
    steering_point,
    steering_value,
)
from .sweep import GridSpec, SweepGrid, Trace, export, grid, load, overlay_extrema, trace
from .witness import (
    ExtremumSolution,
    WitnessPoint,
    analytic_extrema_zero_omega,
    coherence_bound,
    prob_plus_measured,
    prob_plus_unmeasured,
    witness_delta_derivative,
    witness_point,
    witness_value,
)

__version__ = "0.1.0"
