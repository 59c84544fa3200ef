"""Regular path queries over edge-labelled graph databases."""
from .approx import compute_approximation, enum_approx
from .enumeration import (
    DynamicBaseline,
    baseline_on_update,
    enum_baseline,
    enum_sublinear,
    sublinear_prepare,
)
from .errors import RpqError
from .evaluation import (
    boole,
    boole_to_check,
    check,
    check_to_boole,
    count,
    eval_all,
    oracle_eval,
    witness,
)
from .graph import (
    GraphDatabase,
    SigmaGraph,
    Update,
    apply_update,
    degree_stats,
    load_edge_list,
    reverse,
    save_edge_list,
    well_form,
)
from .product import build_product, pair_reachable
from .query import classify, compile_nfa, nfa_accepts, parse_rpq
from .restricted import enum_bt, enum_disjunction, enum_restricted, enum_s_double, enum_s_single
from .scc import tarjan_scc

__all__ = [name for name in dir() if not name.startswith("_")]
