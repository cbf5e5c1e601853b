"""Drag-to-rank weight elicitation for multi-attribute rating.

One analyst drag is converted into pairwise preference constraints under
three schemes (local neighborhood, type-proportional global sampling, and
per-type adjacent pairs), a soft-margin linear ranker is trained per
scheme, and every entity is re-scored, re-ranked, and re-rated through
entropy-minimizing score segmentation. Results are served to a companion
UI over HTTP and to scripts through the CLI.
"""

from .constraints import (
    ConstraintSet,
    DragEvent,
    TrainingPair,
    apply_drag,
    derive_global,
    derive_local,
    derive_type,
)
from .data import (
    Dataset,
    Entity,
    IndicatorSchema,
    IngestError,
    NormalizedMatrix,
    export_dataset,
    ingest,
    normalize,
)
from .metrics import kendall_tau, tau_matrix
from .projection import ProjectionError, ProjectionParams, ProjectionResult, project
from .scoring import (
    RankingResult,
    RatingSegmentation,
    ScoredEntity,
    WeightScheme,
    assign_ratings,
    build_segmentation,
    entropy_split,
    rank_and_rate,
    round_scores,
    score,
)
from .session import ConflictError, SessionStore, UnknownResource
from .trainer import PerTypeWeights, TrainerConfig, WeightVector, train, train_per_type

__version__ = "0.1.0"

__all__ = [
    "ConstraintSet",
    "DragEvent",
    "TrainingPair",
    "apply_drag",
    "derive_global",
    "derive_local",
    "derive_type",
    "Dataset",
    "Entity",
    "IndicatorSchema",
    "IngestError",
    "NormalizedMatrix",
    "export_dataset",
    "ingest",
    "normalize",
    "kendall_tau",
    "tau_matrix",
    "ProjectionError",
    "ProjectionParams",
    "ProjectionResult",
    "project",
    "RankingResult",
    "RatingSegmentation",
    "ScoredEntity",
    "WeightScheme",
    "assign_ratings",
    "build_segmentation",
    "entropy_split",
    "rank_and_rate",
    "round_scores",
    "score",
    "ConflictError",
    "SessionStore",
    "UnknownResource",
    "PerTypeWeights",
    "TrainerConfig",
    "WeightVector",
    "train",
    "train_per_type",
    "__version__",
]
