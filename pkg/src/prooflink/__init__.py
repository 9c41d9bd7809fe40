"""Proof-net search for the Lambek calculus and multiplicative intuitionistic
linear logic, with closure-based pruning of axiom links and k-best ranking."""

from .closure import AnnotatedGraph, Digraph, bool_closure, excl_closure
from .filter import prune, prune_connectedness, prune_cycles, required_pairs, select_link
from .formula import (
    Atom,
    Over,
    Polarity,
    Prod,
    Sequent,
    Under,
    atom_multiset,
    balanced,
    parse_formula,
    parse_sequent,
)
from .frame import candidate_links, count_linkings, essential_graph, unfold
from .kbest import INF, CostMatrix, cost_matrix, hungarian, murty_kbest
from .prover import (
    ProofNet,
    SearchOptions,
    dr_oracle,
    enumerate_bruteforce,
    planar_ok,
    prove,
    validate_essential,
)

__version__ = "0.1.0"
