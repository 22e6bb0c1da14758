"""Unruh-DeWitt detectors near a reflecting plane: response, correlations, harvesting."""

from .correlation import XResult, x_comoving_circular, x_sync_two_radii, x_uniform_pair
from .entanglement import HarvestResult, PairConfig, concurrence, harvest_pair
from .errors import (AngularVelocityMismatch, BudgetExhausted, CoincidentDetectors, ConfigError,
                     DegeneratePole, ExtrapolationUnstable, NegativeProbability,
                     NoTransitionInInterval, NonPositiveParameter, RootNotBracketed, UDWError,
                     WindowOverlap)
from .kinematics import (CircularKinematics, DetectorSpec, PairGeometry, PairKind,
                         UniformKinematics, circular_from_omega, derive_circular,
                         light_cone_root_S, solve_light_cone_root)
from .oracle import (CircularWorldline, EpsilonLadder, UniformWorldline, oracle_transition,
                     oracle_x)
from .quadrature import (PoleSet, QuadratureBudget, bracket_all_roots, integrate_damped,
                         integrate_pv)
from .response import TransitionResult, transition_circular, transition_uniform
from .specfun import erfc, vacuum_static_term
from .sweep import CriticalQuery, CriticalResult, SweepSpec, find_critical, run_sweep, write_csv

__version__ = "0.1.0"
