"""Exact algorithmic statistics on a tiny total machine.

Everything downstream (complexity, model deficiency, structure functions,
probability models, information laws) reduces to exhaustive enumerations
of a small prefix-free instruction set, so all reported quantities are
exact integers or dyadic rationals — no estimates, no floats.
"""

from .bits import CodeError, bar, bits_to_nat, nat_to_bits, pair, std, unpair
from .cache import load_or_build
from .complexity import (
    Absent,
    MIRecord,
    SoiReport,
    k_cond,
    mutual_info,
    require_k,
    shortest_program,
    soi_audit,
)
from .constants import (
    ConstantsError,
    load_constants,
    regression_check,
    save_constants,
)
from .enumeration import (
    ComplexityTable,
    EntryCapExceeded,
    TableError,
    TableFormatError,
    TableVersionError,
    build_table,
    enumerate_halting,
    export_table,
    find_prefix_violation,
    import_table,
)
from .infolaws import (
    JointModel,
    JointModelError,
    LawsAudit,
    Statistic,
    Transform,
    default_transforms,
    expected_mi_audit,
    format_joint_text,
    laws_audit,
    nonincrease_audit,
    parse_joint_text,
    prior_sweep,
    prob_mi,
    prob_suff_check,
    pushforward,
    standard_joints,
    suff_identity_audit,
    theta_suff_audit,
    weight_models,
)
from .machine import (
    MACHINE_VERSION,
    Budgets,
    Condition,
    RunOutcome,
    Status,
    opcode_decode,
    run,
)
from .models_prob import (
    Bernoulli,
    BernoulliDemoReport,
    Codebook,
    DistDesc,
    DistLangError,
    ProbDeficiencyRecord,
    SuffStatPReport,
    TableDist,
    UniformOn,
    bernoulli_demo,
    codebook,
    codeword_length,
    deficiency_p,
    format_distlang,
    model_condition,
    parse_distlang,
    pk,
    suffstat_p,
    two_part_p,
)
from .models_set import (
    All,
    CapExceeded,
    Cyl,
    DeficiencyRecord,
    Hamming,
    ListSet,
    ModelOpts,
    NonStochReport,
    SetDesc,
    SetLangError,
    Singleton,
    StructureCurve,
    SuffStatReport,
    UnionSet,
    deficiency,
    enumerate_models,
    format_setlang,
    nonstoch_scan,
    parse_setlang,
    stochastic,
    structfn,
    suffstat,
    two_part,
)
from .skstats import (
    MxRecord,
    SkIndex,
    XrRow,
    logn_gap,
    mx,
    sk,
    sk_csv,
    sk_mx,
    slice_bound_check,
    t_kraft_sum,
    xr,
    xr_bound_check,
    xr_csv,
    xr_report,
)

__version__ = "0.1.0"

__all__ = [
    "MACHINE_VERSION",
    "Absent",
    "All",
    "Bernoulli",
    "BernoulliDemoReport",
    "Budgets",
    "CapExceeded",
    "CodeError",
    "Codebook",
    "ComplexityTable",
    "Condition",
    "ConstantsError",
    "Cyl",
    "DeficiencyRecord",
    "DistDesc",
    "DistLangError",
    "EntryCapExceeded",
    "Hamming",
    "JointModel",
    "JointModelError",
    "LawsAudit",
    "ListSet",
    "MIRecord",
    "ModelOpts",
    "MxRecord",
    "NonStochReport",
    "ProbDeficiencyRecord",
    "RunOutcome",
    "SetDesc",
    "SetLangError",
    "Singleton",
    "SkIndex",
    "SoiReport",
    "Statistic",
    "Status",
    "StructureCurve",
    "SuffStatPReport",
    "SuffStatReport",
    "TableDist",
    "TableError",
    "TableFormatError",
    "TableVersionError",
    "Transform",
    "UniformOn",
    "UnionSet",
    "XrRow",
    "__version__",
    "bar",
    "bernoulli_demo",
    "bits_to_nat",
    "build_table",
    "codebook",
    "codeword_length",
    "default_transforms",
    "deficiency",
    "deficiency_p",
    "enumerate_halting",
    "enumerate_models",
    "expected_mi_audit",
    "export_table",
    "find_prefix_violation",
    "format_distlang",
    "format_joint_text",
    "format_setlang",
    "import_table",
    "k_cond",
    "laws_audit",
    "load_constants",
    "load_or_build",
    "logn_gap",
    "model_condition",
    "mutual_info",
    "mx",
    "nat_to_bits",
    "nonincrease_audit",
    "nonstoch_scan",
    "opcode_decode",
    "pair",
    "parse_distlang",
    "parse_joint_text",
    "parse_setlang",
    "pk",
    "prior_sweep",
    "prob_mi",
    "prob_suff_check",
    "pushforward",
    "regression_check",
    "require_k",
    "run",
    "save_constants",
    "shortest_program",
    "sk",
    "sk_csv",
    "sk_mx",
    "slice_bound_check",
    "soi_audit",
    "standard_joints",
    "std",
    "stochastic",
    "structfn",
    "suff_identity_audit",
    "suffstat",
    "suffstat_p",
    "t_kraft_sum",
    "theta_suff_audit",
    "two_part",
    "two_part_p",
    "unpair",
    "weight_models",
    "xr",
    "xr_bound_check",
    "xr_csv",
    "xr_report",
]
