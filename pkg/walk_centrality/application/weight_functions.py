"""
Weight function module for the walk_centrality application.

This module provides the time-dependent weight functions used for incoming walks,
outgoing walks and the transfer at the middle node, and the temporal walk weight
built on them.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence
from walk_centrality.application import constants as const
from walk_centrality.application.errors import ConfigurationError, ContractViolation

PhiFunction = Callable[[int, int], float]


@dataclass(frozen=True)
class WeightFunction:
    kind: str
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.kind in (const.ALPHA, const.COMBINED):
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ConfigurationError(f"{self.kind} weighting requires 0 < alpha < 1, got {self.alpha}")
        elif self.kind in (const.TIME, const.ONE):
            if self.alpha is not None:
                raise ConfigurationError(f"{self.kind} weighting takes no alpha")
        else:
            raise ConfigurationError(f"Unknown weight function kind: {self.kind}")

    def __call__(self, t1, t2):
        # Hot path of every backend; the t1 <= t2 contract is checked in eval_phi.
        if self.kind == const.ONE:
            return 1.0
        if self.kind == const.ALPHA:
            return self.alpha
        if self.kind == const.TIME:
            return 1.0 / (1 + t2 - t1)
        return self.alpha / (1 + t2 - t1)

    def __str__(self):
        if self.alpha is None:
            return self.kind
        return f"{self.kind}:{self.alpha:g}"


def constant_alpha(alpha):
    return WeightFunction(const.ALPHA, alpha)


def inverse_waiting():
    return WeightFunction(const.TIME)


def combined(alpha):
    return WeightFunction(const.COMBINED, alpha)


def one():
    return WeightFunction(const.ONE)


@dataclass(frozen=True)
class WeightConfig:
    phi_in: WeightFunction
    phi_out: WeightFunction
    phi_m: WeightFunction

    @classmethod
    def uniform(cls, phi, phi_m=None):
        return cls(phi_in=phi, phi_out=phi, phi_m=phi_m if phi_m is not None else one())


def parse_weight_function(text: str) -> WeightFunction:
    """
    Parse the CLI syntax 'alpha:<v>', 'time', 'combined:<v>' or 'one'.
    """
    kind, _, value = text.strip().partition(":")
    kind = kind.lower()
    if kind in (const.ALPHA, const.COMBINED):
        try:
            alpha = float(value)
        except ValueError:
            raise ConfigurationError(f"Weight function {text!r} needs a numeric alpha, e.g. {kind}:0.5")
        return WeightFunction(kind, alpha)
    if value:
        raise ConfigurationError(f"Weight function {kind!r} takes no parameter, got {text!r}")
    return WeightFunction(kind)


def eval_phi(phi: PhiFunction, t1: int, t2: int) -> float:
    if t1 > t2:
        raise ContractViolation(f"weight function evaluated with t1={t1} > t2={t2}")
    return phi(t1, t2)


def walk_weight(phi: PhiFunction, walk: Sequence, delta: int) -> float:
    """
    Product of phi(t_i + delta, t_{i+1}) over consecutive edges of a temporal walk.

    Walks of length zero and one weigh 1.
    """
    weight = 1.0
    for previous, current in zip(walk, walk[1:]):
        if previous.dst != current.src:
            raise ContractViolation(f"walk breaks between {previous} and {current}")
        if previous.t + delta > current.t:
            raise ContractViolation(f"edge {current} starts before arrival {previous.t + delta}")
        weight *= phi(previous.t + delta, current.t)
    return weight
