"""Splitting subsets of endofunctions, invariant-subset generating
functions, and exact evaluation at roots of unity.

Everything user-facing is 1-indexed: ``Endofunction((2, 3, 1))`` is the
3-cycle 1 -> 2 -> 3 -> 1.
"""

from .core import (
    AttachedTree,
    Component,
    Endofunction,
    FunctionalGraph,
    StructureClass,
    Tag,
    classify,
    decompose,
    endofunction_at,
    endofunction_index,
    enumerate_endofunctions,
    parse_endofunction,
    random_endofunction,
    random_endofunctions,
)
from .cyclotomic import (
    CyclotomicInteger,
    NotInteger,
    as_integer,
    complete_homogeneous_at_roots,
    cyclotomic_polynomial,
    eval_at_roots,
    eval_unipoly_at_root,
    root_power,
)
from .errors import (
    CapExceeded,
    DimensionMismatch,
    EmptyInput,
    ImageOutOfRange,
    InputError,
    InvalidD,
    NoVariables,
    NonIntegerToken,
    NotATree,
    OddN,
    OracleMismatch,
    OrderMismatch,
    OverflowGuard,
    SplitcountError,
)
from .genfun import (
    flag_count_bruteforce,
    flag_gf,
    flag_gf_at_roots,
    flag_gf_tree,
    invariant_gf,
    invariant_gf_value,
    invariant_subsets_bruteforce,
)
from .poly import (
    MultiPoly,
    UniPoly,
    complete_homogeneous,
    gaussian_binomial,
    gaussian_binomial_pascal,
)
from .splitting import (
    SplittingResult,
    has_splitting_alone,
    has_splitting_with_root,
    is_splitting,
    sigma_bruteforce,
    sigma_fast,
    tree_unique_splitting,
)
from .verify import (
    TheoremCheck,
    VerifyReport,
    check_d2,
    check_flag,
    exhaustive_verify,
    identities_verify,
    merge_reports,
    random_verify,
    write_report,
)

__version__ = "0.1.0"
