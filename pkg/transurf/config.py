#!/usr/bin/env python

__doc__ = """
Module: config.py

Tunables of the decision procedure, with their defaults.
The cli builds a Config from its flags; library callers pass one explicitly
or rely on the defaults.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
import logging
from typing import Tuple

from transurf.errors import ConfigError


logger = logging.getLogger(__name__)


ROUTES = ("shortcut", "general", "both")


@dataclass(frozen=True)
class Config:
    """Budgets and switches of the pipeline.
    Attributes:
      vector_budget (int): maximum number of candidate vectors tried.
      pair_budget (int): maximum number of (s1, s2) sample pairs per vector.
      conic_point_height (int): height bound of the conic rational-point search.
      root_candidate_budget (int): maximum (numerator, denominator) divisor pairs
        tried when peeling factors linear in one variable off a plane curve.
      degree_budget (int): cap on the total degree of elimination intermediates.
      seed (int): seed of every pseudo-random stream.
      route (str): C2 route, one of 'shortcut', 'general', 'both'; 'both' runs the
        shortcut, cross-checks it against the general route and falls back to
        the general route when the shortcut fails.
      vectors (tuple): forced candidate vectors; empty means the default stream.
      sample_points (int): parametrization points sampled to select implicit factors.
      component_budget (int): maximum number of C1 components tried per candidate vector.
    """

    vector_budget: int = 25
    pair_budget: int = 10
    conic_point_height: int = 20
    root_candidate_budget: int = 256
    degree_budget: int = 40
    seed: int = 0
    route: str = "shortcut"
    vectors: Tuple[Tuple[Fraction, Fraction, Fraction], ...] = field(default=())
    sample_points: int = 12
    component_budget: int = 4

    def validate(self) -> "Config":
        for name in ("vector_budget", "pair_budget", "conic_point_height", "root_candidate_budget",
                     "degree_budget", "sample_points", "component_budget"):
            if getattr(self, name) < 1:
                msg = f"{name} must be a positive integer; got {getattr(self, name)}."
                logger.error(msg)
                raise ConfigError(msg)
        if self.route not in ROUTES:
            msg = f"route must be one of {ROUTES}; got {self.route!r}."
            logger.error(msg)
            raise ConfigError(msg)
        for v in self.vectors:
            if len(v) != 3 or not any(v):
                msg = f"Invalid candidate vector: {v}."
                logger.error(msg)
                raise ConfigError(msg)
        return self

    def with_changes(self, **changes) -> "Config":
        return replace(self, **changes).validate()


DEFAULT_CONFIG = Config()


# Ladders ----------------------------------------------------------------
# Sample pairs (s1, s2) for the two-specialization shortcut; the first pairs
# follow the hand-worked examples, the rest are fixed small integers.
SAMPLE_PAIRS = (
    (1, -3), (2, -1), (1, 2), (-1, 3), (2, 3), (-2, 1), (3, -2), (1, 4), (-3, 2), (4, -1),
    (3, 5), (-4, 3), (5, -2), (2, 5), (-5, 1), (4, 7), (-3, 5), (6, -1), (1, -6), (7, 2),
)

# Multipliers q of the patterned candidate vectors (1,q,0), (1,0,q), ...
VECTOR_LADDER = (2, -1, Fraction(1, 2), -2, 3, Fraction(-1, 2), Fraction(1, 3), -3, Fraction(3, 2), Fraction(-1, 3))


def small_rationals(height: int):
    """Rationals n/d with max(|n|, d) <= height, by increasing height:
    0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2, 1/3, -1/3, 2/3, -2/3, ...
    """
    yield Fraction(0)
    for h in range(1, height + 1):
        level = set()
        for d in range(1, h + 1):
            for n in range(0, h + 1):
                if max(n, d) == h and n and Fraction(n, d).denominator == d:
                    level.add(Fraction(n, d))
        for x in sorted(level, key=lambda q: (q.denominator, q.numerator)):
            yield x
            yield -x
