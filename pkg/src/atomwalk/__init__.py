"""atomwalk: spin-dependent lattice walk simulations.

Single-walker interference with tunable decoherence, a temporal-correlation
(macrorealism) test with an interaction-free intermediate measurement,
two-boson interference with a realistic detection Monte Carlo, and a
maximum-likelihood estimator for two-atom pair loss.  The core is pure
numpy; a FastAPI service and a CLI expose the experiment runners.
"""

__version__ = "0.1.0"

from .states import (
    BoundaryOverflowError,
    DensityOperator,
    PureState,
    Spin,
    from_spinor,
    inner,
    new_localized,
    to_density,
)
from .walk import (
    CoinParams,
    ShiftMap,
    StepConfig,
    apply_coin,
    apply_electric_phase,
    apply_shift,
    coin_matrix,
    evolve,
    step,
)
from .decoherence import (
    NoiseModel,
    channel_pos_project,
    channel_spin_project,
    evolve_density,
    evolve_trajectory,
    trajectory_rng,
)
from .measurement import (
    PositionDistribution,
    position_distribution,
    q3_value,
    remove_spin,
    rms_width,
)
from .leggett_garg import (
    LGProtocolConfig,
    LGResult,
    MeasurementMode,
    correlator_c21,
    k_value,
    run_with_t2,
    run_without_t2,
    theta_scan,
)
from .two_particle import (
    DetectionModel,
    DistinguishabilityModel,
    HomOutcome,
    ObservedCounts,
    TwoBosonState,
    detection_mc,
    hom_ideal,
    hom_probabilities,
    hom_run,
    hom_significance,
)
from .collisions import (
    CollisionCounts,
    LossModelParams,
    PcollEstimate,
    estimate_pcoll,
    loss_vs_time_series,
    outcome_probabilities,
    sample_counts,
)
