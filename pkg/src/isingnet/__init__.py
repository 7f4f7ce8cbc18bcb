"""Integer 2-local Ising nets: gluing, clamping, Knuth factoring nets and local-update search."""

__version__ = "0.1.0"

from .algebra import (
    ExecutionResult,
    GlueSpec,
    Program,
    clamp,
    compatible,
    compose,
    execute,
    glue,
)
from .category import (
    NetMorphism,
    NoPushout,
    Span,
    TableNet,
    is_admissible,
    is_morphism,
    pushout,
    reindex,
)
from .exceptions import (
    AssignmentError,
    BudgetError,
    EmptySampleError,
    EnumerationCapError,
    GlueSpecError,
    IncompatibleProgramsError,
    LabelError,
    NetError,
    SerializationError,
    SubsetError,
    TrivialSizeError,
    VertexCollisionError,
)
from .gates import and_gate, full_multiplier
from .knuth import (
    FactoringOutcome,
    FactorStatus,
    KnuthDims,
    KnuthNet,
    build_knuth,
    factor,
    factoring_program,
    general_dims,
)
from .solver import (
    ExactFigureOracle,
    FigureStrategy,
    RunOutcome,
    local_update_run,
    unsat_multiplier_figure,
)
from .spins import (
    Configuration,
    IsingNet,
    QuadraticForm,
    Spin,
    energy,
    ground_energy_and_states,
    spin_value,
)
