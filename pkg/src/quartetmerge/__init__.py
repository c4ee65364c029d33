"""Inferring where unknown sources join a known logical routing tree.

The tree from a probing source to N receivers is given; a second source
attaches at one edge per receiver root path.  Quartet queries on receiver
pairs reveal how the two joining edges sit relative to the pair's
branching point, and the algorithms here reconstruct the full joining map
from as few such queries as possible.
"""

from .errors import (
    BadSpec,
    InconsistentAnswer,
    InsufficientReceivers,
    InvalidConfiguration,
    InvalidTree,
    MisplacedJoin,
    ParseError,
    QuartetMergeError,
    SameReceiver,
    Stalled,
    StructuralViolation,
    TooLarge,
    UnknownReceiver,
)
from .exhaustive import (
    all_pairs,
    answer_set,
    enumerate_valid_configs,
    identifies,
    lower_bound,
    min_identifying_set,
    min_quartets,
    min_quartets_all,
)
from .gbs import (
    BenefitQuad,
    CandidateState,
    GbsTrace,
    SearchStep,
    apply_update,
    compute_benefits,
    run_gbs,
    select_quartet,
)
from .generators import (
    GeneratorSpec,
    make_tree,
    perfect_binary,
    perfect_ternary,
    random_config,
    star,
    tall_binary,
)
from .multisource import MultiResult, run_multi
from .oracle import (
    ExactOracle,
    MajorityVoteOracle,
    NoiseSpec,
    NoisyOracle,
    OracleAnswer,
    OracleStats,
    make_oracle,
)
from .rea import ReaTrace, SurgeryStep, WorkingTree, pick_siblings, run_rea
from .results import InferenceResult
from .sweep import (
    ALGORITHMS,
    SweepRow,
    SweepSummary,
    run_sweep,
    summarize,
    write_csv,
)
from .topofile import (
    parse_topology,
    parse_topology_file,
    serialize_topology,
    write_topology_file,
)
from .topology import (
    GroundTruth,
    JoiningConfig,
    LogicalTree,
    QuartetType,
    RootPath,
    is_valid_config,
    quartet_type,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BadSpec",
    "BenefitQuad",
    "CandidateState",
    "ExactOracle",
    "GbsTrace",
    "GeneratorSpec",
    "GroundTruth",
    "InconsistentAnswer",
    "InferenceResult",
    "InsufficientReceivers",
    "InvalidConfiguration",
    "InvalidTree",
    "JoiningConfig",
    "LogicalTree",
    "MajorityVoteOracle",
    "MisplacedJoin",
    "MultiResult",
    "NoiseSpec",
    "NoisyOracle",
    "OracleAnswer",
    "OracleStats",
    "ParseError",
    "QuartetMergeError",
    "QuartetType",
    "ReaTrace",
    "RootPath",
    "SameReceiver",
    "SearchStep",
    "Stalled",
    "StructuralViolation",
    "SurgeryStep",
    "SweepRow",
    "SweepSummary",
    "TooLarge",
    "UnknownReceiver",
    "WorkingTree",
    "all_pairs",
    "answer_set",
    "apply_update",
    "compute_benefits",
    "enumerate_valid_configs",
    "identifies",
    "is_valid_config",
    "lower_bound",
    "make_oracle",
    "make_tree",
    "min_identifying_set",
    "min_quartets",
    "min_quartets_all",
    "parse_topology",
    "parse_topology_file",
    "perfect_binary",
    "perfect_ternary",
    "pick_siblings",
    "quartet_type",
    "random_config",
    "run_gbs",
    "run_multi",
    "run_rea",
    "run_sweep",
    "select_quartet",
    "serialize_topology",
    "star",
    "summarize",
    "tall_binary",
    "write_csv",
    "write_topology_file",
    "__version__",
]
