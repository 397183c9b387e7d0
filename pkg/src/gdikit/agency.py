"""Plasticity and empowerment of agent-environment pairs.

Plasticity is directed information flowing from observations into actions,
maximized over a finite environment set; empowerment is the reverse flow
maximized over a finite agent set.  Paired over matched intervals with the
DELAYED observation-to-action arrow and the FORWARD action-to-observation
arrow, the two quantities split one conditional mutual information, which
bounds their sum by an interface-and-interval constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NumericalIntegrityError, UnsupportedConfigurationError
from .measures import Arrow, Interval, MeasureQuery, cmi, gdi, span
from .trajectory import AgentFn, EnvFn, History, Interface, JointDist, Role, enumerate_joint

WITNESS_ATOL = 1e-12


@dataclass(frozen=True)
class AgencyQuery:
    """Interval pair for one plasticity/empowerment evaluation.

    Enumeration runs to the largest endpoint of either interval.  The
    empowerment arrow is always FORWARD; the plasticity arrow defaults to
    DELAYED, which pairs with it under the conservation identity, but FORWARD
    is selectable.
    """

    action_interval: Interval
    observation_interval: Interval
    plasticity_arrow: Arrow = Arrow.DELAYED

    @property
    def horizon(self) -> int:
        return max(self.action_interval.hi, self.observation_interval.hi)

    def plasticity_query(self) -> MeasureQuery:
        return MeasureQuery(
            Role.OBSERVATION,
            self.observation_interval,
            Role.ACTION,
            self.action_interval,
            self.plasticity_arrow,
        )

    def empowerment_query(self) -> MeasureQuery:
        return MeasureQuery(
            Role.ACTION,
            self.action_interval,
            Role.OBSERVATION,
            self.observation_interval,
            Arrow.FORWARD,
        )


@dataclass(frozen=True)
class TensionReport:
    """Plasticity, empowerment, the bound m, and the remaining slack."""

    plasticity: float
    empowerment: float
    bound: float

    @property
    def slack(self) -> float:
        return self.bound - self.plasticity - self.empowerment

    def to_csv_row(self) -> str:
        return (
            f"{self.plasticity:.17g},{self.empowerment:.17g},"
            f"{self.bound:.17g},{self.slack:.17g}"
        )


def plasticity(
    agent: AgentFn,
    envs: Sequence[EnvFn],
    query: AgencyQuery,
    interface: Interface,
) -> tuple[float, int]:
    """Max observation-to-action flow over the environment set.

    Returns the value in bits and the index of the attaining environment (ties
    break toward the lowest index).
    """
    if not envs:
        raise ValueError("plasticity needs a nonempty environment set")
    best, best_idx = -math.inf, 0
    for idx, env in enumerate(envs):
        dist = enumerate_joint(agent, env, query.horizon, interface)
        value = gdi(dist, query.plasticity_query()).value
        if value > best:
            best, best_idx = value, idx
    return best, best_idx


def empowerment(
    agents: Sequence[AgentFn],
    env: EnvFn,
    query: AgencyQuery,
    interface: Interface,
) -> tuple[float, int]:
    """Max action-to-observation flow over the agent set; mirror of plasticity."""
    if not agents:
        raise ValueError("empowerment needs a nonempty agent set")
    best, best_idx = -math.inf, 0
    for idx, agent in enumerate(agents):
        dist = enumerate_joint(agent, env, query.horizon, interface)
        value = gdi(dist, query.empowerment_query()).value
        if value > best:
            best, best_idx = value, idx
    return best, best_idx


def positive_plasticity_witness(
    agent: AgentFn,
    env: EnvFn,
    query: AgencyQuery,
    interface: Interface,
) -> int | None:
    """Least timestep whose observation block lowers uncertainty about the action.

    Returns the first timestep whose per-term flow exceeds 1e-12, or None; a
    timestep exists exactly when the pair's plasticity is positive, and that
    biconditional is re-checked at runtime.
    """
    dist = enumerate_joint(agent, env, query.horizon, interface)
    report = gdi(dist, query.plasticity_query())
    witness = next((i for i, t in report.terms if t > WITNESS_ATOL), None)
    if (witness is not None) != (report.value > WITNESS_ATOL):
        raise NumericalIntegrityError(
            f"witness/positivity mismatch: witness={witness}, value={report.value!r}"
        )
    return witness


def tension_bound(interface: Interface, query: AgencyQuery) -> float:
    """m = min(|obs interval| * log2 |O|, |action interval| * log2 |A|)."""
    return min(
        len(query.observation_interval) * math.log2(interface.num_observations),
        len(query.action_interval) * math.log2(interface.num_actions),
    )


def check_tension(
    agent: AgentFn,
    env: EnvFn,
    query: AgencyQuery,
    interface: Interface,
) -> TensionReport:
    """Evaluate the conservation-paired plasticity and empowerment of one pair.

    Plasticity uses the DELAYED observation-to-action arrow and empowerment the
    FORWARD action-to-observation arrow, so the two sum to the conditional
    mutual information between the interval blocks given their pasts.
    """
    dist = enumerate_joint(agent, env, query.horizon, interface)
    paired = AgencyQuery(query.action_interval, query.observation_interval, Arrow.DELAYED)
    p = gdi(dist, paired.plasticity_query()).value
    e = gdi(dist, paired.empowerment_query()).value
    return TensionReport(p, e, tension_bound(interface, query))


def conserved_cmi(dist: JointDist, query: AgencyQuery) -> float:
    """I(actions in interval; observations in interval | both pasts)."""
    act, obs = query.action_interval, query.observation_interval
    u = span(Role.ACTION, act.lo, act.hi)
    v = span(Role.OBSERVATION, obs.lo, obs.hi)
    w = span(Role.ACTION, 1, act.lo - 1) + span(Role.OBSERVATION, 1, obs.lo - 1)
    return cmi(dist, u, v, w)


def mirror_check(
    agent: AgentFn,
    env: EnvFn,
    query: AgencyQuery,
    interface: Interface,
) -> float:
    """Residual of the duality: the agent's empowerment is the environment's
    plasticity, and vice versa.

    Both sides are the same measure on the shared interaction law, read from
    opposite ends of the interface, so the comparison relabels the joint's
    per-step coordinates rather than simulating a second process.  Returns the
    larger of the two identity residuals.
    """
    dist = enumerate_joint(agent, env, query.horizon, interface)
    flipped = dist.swap_roles()
    # In the flipped joint the environment's emissions are the actions, so its
    # plasticity reads original actions as observations and vice versa.
    e_agent = gdi(dist, query.empowerment_query()).value
    p_env = gdi(
        flipped,
        MeasureQuery(
            Role.OBSERVATION,
            query.action_interval,
            Role.ACTION,
            query.observation_interval,
            Arrow.FORWARD,
        ),
    ).value
    p_agent = gdi(dist, query.plasticity_query()).value
    e_env = gdi(
        flipped,
        MeasureQuery(
            Role.ACTION,
            query.observation_interval,
            Role.OBSERVATION,
            query.action_interval,
            query.plasticity_arrow,
        ),
    ).value
    return max(abs(e_agent - p_env), abs(p_agent - e_env))


def build_extremal_pair(
    interface: Interface,
    query: AgencyQuery,
    kind: str,
) -> tuple[AgentFn, EnvFn]:
    """A pair driving one of the two quantities to the bound m and the other to 0.

    ``plasticity-max`` pairs an environment that emits fresh uniform symbols
    over the observation interval with an agent that mirrors each one back a
    fixed lag later; it needs |A| <= |O|, an observation interval at least as
    long as the action interval, and an action interval starting strictly
    after the observation interval.  ``empowerment-max`` is the role-swapped
    construction (echo environment, open-loop uniform agent).
    """
    act, obs = query.action_interval, query.observation_interval
    if kind == "plasticity-max":
        if interface.num_actions > interface.num_observations:
            raise UnsupportedConfigurationError("plasticity-max needs |A| <= |O|")
        if len(obs) < len(act):
            raise UnsupportedConfigurationError(
                "plasticity-max needs the observation interval at least as long"
            )
        if act.lo <= obs.lo:
            raise UnsupportedConfigurationError(
                "plasticity-max needs the action interval to start after the observation interval"
            )
        env = _fixed_then_uniform_env(start=obs.lo, support=interface.num_actions)
        agent = _lagged_mirror_agent(window=act, lag=act.lo - obs.lo)
        return agent, env
    if kind == "empowerment-max":
        if interface.num_observations > interface.num_actions:
            raise UnsupportedConfigurationError("empowerment-max needs |O| <= |A|")
        if len(act) < len(obs):
            raise UnsupportedConfigurationError(
                "empowerment-max needs the action interval at least as long"
            )
        if obs.lo < act.lo:
            raise UnsupportedConfigurationError(
                "empowerment-max needs the observation interval to start no earlier"
            )
        agent = _restricted_uniform_agent(start=act.lo, support=interface.num_observations)
        env = _lagged_echo_env(window=obs, lag=obs.lo - act.lo)
        return agent, env
    raise ValueError(f"unknown extremal kind {kind!r}")


def _point(k: int, i: int) -> np.ndarray:
    v = np.zeros(k)
    v[i] = 1.0
    return v


def _fixed_then_uniform_env(start: int, support: int) -> EnvFn:
    def env(history: History) -> np.ndarray:
        m = history.interface.num_observations
        step = len(history.actions)  # index of the observation being emitted
        if step < start:
            return _point(m, 0)
        out = np.zeros(m)
        out[:support] = 1.0 / support
        return out

    return env


def _lagged_mirror_agent(window: Interval, lag: int) -> AgentFn:
    def agent(history: History) -> np.ndarray:
        k = history.interface.num_actions
        step = len(history.actions) + 1  # index of the action being decided
        if step < window.lo or step > window.hi:
            return _point(k, 0)
        j = history.observations[step - lag - 1]
        return _point(k, j if j < k else 0)

    return agent


def _restricted_uniform_agent(start: int, support: int) -> AgentFn:
    def agent(history: History) -> np.ndarray:
        k = history.interface.num_actions
        step = len(history.actions) + 1
        if step < start:
            return _point(k, 0)
        out = np.zeros(k)
        out[:support] = 1.0 / support
        return out

    return agent


def _lagged_echo_env(window: Interval, lag: int) -> EnvFn:
    def env(history: History) -> np.ndarray:
        m = history.interface.num_observations
        step = len(history.actions)
        if step < window.lo or step > window.hi:
            return _point(m, 0)
        j = history.actions[step - lag - 1]
        return _point(m, j if j < m else 0)

    return env
