"""Greedy sparse witnesses and Carleson-constant certificates for finite set systems."""

__version__ = "0.1.0"

from .collection import SetCollection, avg_height, height, weak_height
from .errors import SparseGreedyError
from .generators import gen_dyadic, gen_line_family, gen_random, gen_staircase, pigeonhole_bound
from .greedy_log import LogTrace, candidate_g, normalize_witness, run_log, select_log
from .greedy_opt import (
    Adaptive,
    Fixed,
    OptTrace,
    carleson_certificate,
    good_set,
    run_opt,
    select_opt,
    witness_from_trace,
)
from .measure import Atom, GroundSpace, MSet, build_space, mu, set_algebra, shadow
from .oracle import (
    OracleReport,
    carleson_exact,
    m_eta_lower_bound,
    maximal_levelset,
    verify_sparse_witness,
    weak_carleson_exact,
)
from .partition import PartitionResult, is_p1, split, verify_partition
from .witness import SparseWitness

__all__ = [
    "Adaptive",
    "Atom",
    "Fixed",
    "GroundSpace",
    "LogTrace",
    "MSet",
    "OptTrace",
    "OracleReport",
    "PartitionResult",
    "SetCollection",
    "SparseGreedyError",
    "SparseWitness",
    "avg_height",
    "build_space",
    "candidate_g",
    "carleson_certificate",
    "carleson_exact",
    "gen_dyadic",
    "gen_line_family",
    "gen_random",
    "gen_staircase",
    "good_set",
    "height",
    "is_p1",
    "m_eta_lower_bound",
    "maximal_levelset",
    "mu",
    "normalize_witness",
    "pigeonhole_bound",
    "run_log",
    "run_opt",
    "select_log",
    "select_opt",
    "set_algebra",
    "shadow",
    "split",
    "verify_partition",
    "verify_sparse_witness",
    "weak_carleson_exact",
    "weak_height",
    "witness_from_trace",
]
