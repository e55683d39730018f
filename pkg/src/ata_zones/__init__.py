"""Zone-based emptiness and model checking for one-clock alternating timed automata."""
from .ata import OneATA, accepts, config, dnf_normalize, discrete_successors
from .emptiness import ExploreConfig, Verdict, explore, extract_witness, mtl_sat
from .entailment import node_entails, node_entails_bounded
from .intervals import Interval
from .mtl import parse_mtl, translate, width_bound
from .product import TimedAutomaton, model_check
from .zones import Node, VarName, successor

__all__ = [
    "ExploreConfig", "Interval", "Node", "OneATA", "TimedAutomaton", "VarName", "Verdict",
    "accepts", "config", "discrete_successors", "dnf_normalize", "explore", "extract_witness",
    "model_check", "mtl_sat", "node_entails", "node_entails_bounded", "parse_mtl",
    "successor", "translate", "width_bound",
]
