"""Sequential proportional election methods with exact rational arithmetic."""

from .approval import run_pareto_phragmen, run_pareto_thiele, run_phragmen, run_thiele
from .methods import REGISTRY, run_method
from .numerics import BallotError, BallotMatrix
from .partylist import DivisorFamily, PartyTally, apportion_divisor, apportion_largest_quotients
from .pointwise import run_pareto_pointwise, run_pointwise
from .score_geom import run_geom, run_pareto_geom
from .score_reweight import run_score_reweight
from .sequential import MethodError

__version__ = "0.1.0"

__all__ = [
    "REGISTRY", "BallotError", "BallotMatrix", "DivisorFamily", "MethodError", "PartyTally",
    "apportion_divisor", "apportion_largest_quotients", "run_geom", "run_method",
    "run_pareto_geom", "run_pareto_phragmen", "run_pareto_pointwise", "run_pareto_thiele",
    "run_phragmen", "run_pointwise", "run_score_reweight", "run_thiele",
]
