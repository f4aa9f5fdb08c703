"""Time-optimal gates on a nuclear spin steered by an NV electronic actuator."""

from .baseline import EqualTimeResult, equal_time_best, equal_time_unitary
from .errors import ActuatorError, DegenerateFrame, NoSolutionFound, ResonanceError, SpinDataError
from .physics import (
    DEFAULT_CONSTANTS,
    ROUNDED_CONSTANTS,
    ControlFrame,
    EnhancementFactors,
    FieldConfig,
    HyperfineSpin,
    PhysicalConstants,
    control_frame,
    direct_drive_time,
    enhancement_factors,
    enhancement_factors_alpha_kappa,
    rwa_check,
)
from .spindata import SpinTable, builtin_table, load_table, parse_table, serialize, table_stats
from .su2 import Axis, Rotation, Unitary, compose, fidelity, goal, infidelity, rot_unitary
from .sweeps import crossover_rabi, sweep_grid, sweep_theta
from .synthesis import (
    LengthBound,
    Regime,
    SwitchingSequence,
    SynthesisResult,
    family_time,
    family_unitary,
    max_switches,
    phi1_from_phi0,
    regime,
    synthesize,
)

__version__ = "0.1.0"
