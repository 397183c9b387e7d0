"""Reference agents and environments.

All constructors return pure callables: identical histories yield identical
probability vectors, with any randomness expressed in the returned
distribution.  Learning agents (Q-learning) replay their updates from the
history on every call rather than carrying hidden state.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .trajectory import AgentFn, EnvFn, History, Interface

_MASK64 = (1 << 64) - 1

# Corridor action indices.
LEFT, RIGHT, PULL = 0, 1, 2


def _point_mass(k: int, i: int) -> np.ndarray:
    v = np.zeros(k)
    v[i] = 1.0
    return v


def _as_dist(probs: Sequence[float]) -> np.ndarray:
    v = np.asarray(probs, dtype=float)
    if v.ndim != 1 or np.any(v < 0) or abs(float(v.sum()) - 1.0) > 1e-12:
        raise ValueError(f"not a probability vector: {probs!r}")
    return v


# ---------------------------------------------------------------------------
# Observation-blind agents: their outputs cannot depend on what they saw.
# ---------------------------------------------------------------------------


def constant_agent(probs: Sequence[float]) -> AgentFn:
    """Always returns the same action distribution."""
    v = _as_dist(probs)

    def agent(history: History) -> np.ndarray:
        return v

    return agent


def open_loop_agent(seq_dist: np.ndarray) -> AgentFn:
    """Plays a distribution over whole action sequences, one axis per step.

    The action at step i is the sequence distribution conditioned on the
    agent's own past actions; observations never enter.  Histories longer than
    the table fall back to uniform play.
    """
    seq_dist = np.asarray(seq_dist, dtype=float)
    if np.any(seq_dist < 0) or abs(float(seq_dist.sum()) - 1.0) > 1e-12:
        raise ValueError("sequence table must be a distribution")

    def agent(history: History) -> np.ndarray:
        k = history.interface.num_actions
        i = len(history.actions)
        if i >= seq_dist.ndim:
            return np.full(k, 1.0 / k)
        cond = seq_dist[history.actions]  # index by the prefix, axes i..L-1 remain
        cond = cond.sum(axis=tuple(range(1, cond.ndim))) if cond.ndim > 1 else cond
        total = float(cond.sum())
        if total == 0.0:
            return np.full(k, 1.0 / k)
        return cond / total

    return agent


def length_agent(dists: Mapping[int, Sequence[float]]) -> AgentFn:
    """Action distribution chosen by the number of completed steps only."""
    table = {k: _as_dist(v) for k, v in dists.items()}

    def agent(history: History) -> np.ndarray:
        k = history.interface.num_actions
        v = table.get(history.steps)
        return v if v is not None else np.full(k, 1.0 / k)

    return agent


def past_action_agent(dists: Mapping[tuple[int, ...], Sequence[float]]) -> AgentFn:
    """Action distribution keyed on the tuple of past actions only."""
    table = {tuple(k): _as_dist(v) for k, v in dists.items()}

    def agent(history: History) -> np.ndarray:
        k = history.interface.num_actions
        v = table.get(tuple(history.actions))
        return v if v is not None else np.full(k, 1.0 / k)

    return agent


# ---------------------------------------------------------------------------
# Tabular Q-learning with epsilon-greedy exploration.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QLearnerSpec:
    """Configuration of the replayed tabular Q-learner.

    ``reward`` maps an observation index to a scalar; by default the
    observation index itself is the reward, matching a Bernoulli bandit whose
    outcomes are 0/1.
    """

    epsilon: float
    q_init: float = 0.0
    alpha: float = 0.1
    reward: Callable[[int], float] = field(default=float)

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")


def q_learning_agent(spec: QLearnerSpec) -> AgentFn:
    """Epsilon-greedy tabular Q-learning as a pure function of the history.

    Q starts at ``q_init`` for every action and is replayed through the
    history with step size ``alpha``; greedy ties are split uniformly over the
    tied arms, which keeps the empty-history policy uniform under a symmetric
    initialization.
    """

    def agent(history: History) -> np.ndarray:
        k = history.interface.num_actions
        q = np.full(k, spec.q_init)
        for a, o in zip(history.actions, history.observations):
            q[a] += spec.alpha * (spec.reward(o) - q[a])
        greedy = q >= q.max() - 1e-12
        probs = np.full(k, spec.epsilon / k)
        probs[greedy] += (1.0 - spec.epsilon) / int(greedy.sum())
        return probs

    return agent


# ---------------------------------------------------------------------------
# Environments.
# ---------------------------------------------------------------------------


def bernoulli_bandit(p: Sequence[float]) -> EnvFn:
    """Two-outcome bandit: observation 1 with probability p[last action]."""
    arms = np.asarray(p, dtype=float)
    if np.any(arms < 0) or np.any(arms > 1):
        raise ValueError("arm parameters must lie in [0, 1]")

    def env(history: History) -> np.ndarray:
        if history.interface.num_observations != 2:
            raise ValueError("bandit needs a binary observation alphabet")
        if len(arms) != history.interface.num_actions:
            raise ValueError(
                f"bandit has {len(arms)} arms but the interface has "
                f"{history.interface.num_actions} actions"
            )
        win = float(arms[history.actions[-1]])
        return np.array([1.0 - win, win])

    return env


def uniform_env() -> EnvFn:
    """Emits the uniform observation distribution on every history."""

    def env(history: History) -> np.ndarray:
        m = history.interface.num_observations
        return np.full(m, 1.0 / m)

    return env


def deterministic_env(choose: Callable[[History], int]) -> EnvFn:
    """Point mass on ``choose(history)``."""

    def env(history: History) -> np.ndarray:
        return _point_mass(history.interface.num_observations, choose(history))

    return env


def copy_env() -> EnvFn:
    """Echoes the most recent action as the observation; needs |O| >= |A|."""

    def env(history: History) -> np.ndarray:
        itf = history.interface
        if itf.num_observations < itf.num_actions:
            raise ValueError("copy environment needs at least as many observations as actions")
        return _point_mass(itf.num_observations, history.actions[-1])

    return env


def ignore_env(dists: Mapping[int, Sequence[float]] | None = None) -> EnvFn:
    """Observation distribution depends only on how many steps have elapsed."""
    table = {k: _as_dist(v) for k, v in (dists or {}).items()}

    def env(history: History) -> np.ndarray:
        m = history.interface.num_observations
        v = table.get(history.steps)
        return v if v is not None else np.full(m, 1.0 / m)

    return env


def mirror_agent(interface: Interface, start: int = 1) -> AgentFn:
    """Deterministically plays back the last observation's index.

    Before timestep ``start`` (or when the last observation has no matching
    action) it plays action 0.
    """
    if interface.num_actions > interface.num_observations:
        raise ValueError("mirror agent needs |A| <= |O|")

    def agent(history: History) -> np.ndarray:
        k = history.interface.num_actions
        step = len(history.actions) + 1  # the step being decided
        if step < start or not history.observations:
            return _point_mass(k, 0)
        j = history.observations[-1]
        return _point_mass(k, j if j < k else 0)

    return agent


# ---------------------------------------------------------------------------
# The corridor of rooms with stochastically controllable lights.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorridorSpec:
    """Corridor of ``rooms`` = n+1 rooms; the latent per-step flip has rate ``theta``.

    A lever pull in room i flips the observed light with probability i/n and
    otherwise defers to the latent flip; moving always defers to the latent
    flip.  Only the occupied room's light evolves; the walk starts in
    ``start_room`` and is clamped at the corridor ends.
    """

    rooms: int
    theta: float
    start_room: int = 0

    def __post_init__(self) -> None:
        if self.rooms < 2:
            raise ValueError("corridor needs at least 2 rooms")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must lie in [0, 1]")
        if not 0 <= self.start_room < self.rooms:
            raise ValueError("start_room outside the corridor")


def _corridor_position(spec: CorridorSpec, actions: Sequence[int]) -> int:
    pos = spec.start_room
    for a in actions:
        if a == LEFT:
            pos = max(pos - 1, 0)
        elif a == RIGHT:
            pos = min(pos + 1, spec.rooms - 1)
    return pos


def corridor_env(spec: CorridorSpec) -> EnvFn:
    """Mouse-in-a-corridor light dynamics over actions {left, right, pull}.

    The light starts off; each step it flips with the latent rate, except that
    a pull in room i overrides the latent flip with probability i/n (so room 0
    grants no control and room n full control).
    """
    n = spec.rooms - 1

    def env(history: History) -> np.ndarray:
        itf = history.interface
        if itf.num_actions != 3 or itf.num_observations != 2:
            raise ValueError("corridor needs 3 actions (left, right, pull) and 2 observations")
        act = history.actions[-1]
        if act == PULL:
            room = _corridor_position(spec, history.actions)
            flip = room / n + (1.0 - room / n) * spec.theta
        else:
            flip = spec.theta
        prev = history.observations[-1] if history.observations else 0
        out = np.empty(2)
        out[prev] = 1.0 - flip
        out[1 - prev] = flip
        return out

    return env


def corridor_stay_agent(spec: CorridorSpec, room: int) -> AgentFn:
    """A policy that stays in ``room`` and reacts to the light.

    Corner rooms have two position-preserving actions (the clamped move and
    the lever); there the policy pulls with probability 3/4 when the light is
    on and 1/4 when off, keeping its actions both light-driven and stochastic.
    Interior rooms only preserve position by pulling, so the policy degenerates
    to the constant lever press there.
    """
    if not 0 <= room < spec.rooms:
        raise ValueError("room outside the corridor")
    move = LEFT if room == 0 else RIGHT if room == spec.rooms - 1 else None

    def agent(history: History) -> np.ndarray:
        if move is None:
            return _point_mass(3, PULL)
        light = history.observations[-1] if history.observations else 0
        p_pull = 0.75 if light == 1 else 0.25
        out = np.zeros(3)
        out[PULL] = p_pull
        out[move] = 1.0 - p_pull
        return out

    return agent


# ---------------------------------------------------------------------------
# Seeded random policies (Dirichlet over each conditional distribution).
# ---------------------------------------------------------------------------


def _hashed_dirichlet(seed: int, tag: int, history: History, k: int) -> np.ndarray:
    # Per-history substream: NumPy SeedSequence over (seed, tag, history
    # content), drawn with PCG64.  The draw depends only on the history, never
    # on evaluation order, so the policy is a genuine pure function.
    entropy = [
        seed & _MASK64,
        tag,
        len(history.actions),
        len(history.observations),
        *history.actions,
        *history.observations,
    ]
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
    return rng.dirichlet(np.ones(k))


def random_agent(interface: Interface, seed: int) -> AgentFn:
    """Agent whose every conditional is an independent uniform-simplex draw."""
    cache: dict[tuple[tuple[int, ...], tuple[int, ...]], np.ndarray] = {}

    def agent(history: History) -> np.ndarray:
        key = (history.actions, history.observations)
        v = cache.get(key)
        if v is None:
            v = _hashed_dirichlet(seed, 1, history, interface.num_actions)
            cache[key] = v
        return v

    return agent


def random_env(interface: Interface, seed: int) -> EnvFn:
    """Environment counterpart of :func:`random_agent`."""
    cache: dict[tuple[tuple[int, ...], tuple[int, ...]], np.ndarray] = {}

    def env(history: History) -> np.ndarray:
        key = (history.actions, history.observations)
        v = cache.get(key)
        if v is None:
            v = _hashed_dirichlet(seed, 2, history, interface.num_observations)
            cache[key] = v
        return v

    return env


# ---------------------------------------------------------------------------
# Name registry used by the command line.
# ---------------------------------------------------------------------------

_CALL_RE = re.compile(r"^\s*([a-z-]+)\s*(?:\((.*)\))?\s*$")


def _parse_args(argstr: str | None) -> dict[str, str]:
    if not argstr or not argstr.strip():
        return {}
    out = {}
    for part in argstr.split(","):
        key, _, value = part.partition("=")
        if not _:
            raise ValueError(f"registry argument {part!r} is not key=value")
        out[key.strip()] = value.strip()
    return out


def _det_env_from_file(path: str) -> EnvFn:
    """Deterministic environment from lines of ``a1 o1 ... ak : obs``.

    Unlisted histories observe 0.
    """
    table: dict[tuple[int, ...], int] = {}
    with open(path) as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            syms, _, obs = ln.rpartition(":")
            table[tuple(int(t) for t in syms.split())] = int(obs)

    def choose(history: History) -> int:
        flat = []
        for i, a in enumerate(history.actions):
            flat.append(a)
            if i < len(history.observations):
                flat.append(history.observations[i])
        return table.get(tuple(flat), 0)

    return deterministic_env(choose)


def make_agent(spec: str, interface: Interface) -> AgentFn:
    """Build an agent from a registry string such as ``qlearn(eps=0.5,q0=0)``."""
    m = _CALL_RE.match(spec)
    if not m:
        raise ValueError(f"cannot parse agent spec {spec!r}")
    name, args = m.group(1), _parse_args(m.group(2))
    k = interface.num_actions
    if name == "constant":
        return constant_agent(np.full(k, 1.0 / k))
    if name == "open-loop":
        return open_loop_agent(np.full((k,) * 2, 1.0 / k**2))
    if name == "length":
        return length_agent({})
    if name == "past-action":
        return past_action_agent({})
    if name == "qlearn":
        return q_learning_agent(
            QLearnerSpec(
                epsilon=float(args.get("eps", 0.1)),
                q_init=float(args.get("q0", 0.0)),
                alpha=float(args.get("alpha", 0.1)),
            )
        )
    if name == "mirror":
        return mirror_agent(interface, start=int(args.get("start", 1)))
    raise ValueError(f"unknown agent {name!r}")


def make_env(spec: str, interface: Interface) -> EnvFn:
    """Build an environment from a registry string such as ``bandit(p0=0.4,p1=0.7)``."""
    m = _CALL_RE.match(spec)
    if not m:
        raise ValueError(f"cannot parse environment spec {spec!r}")
    name, args = m.group(1), _parse_args(m.group(2))
    if name == "bandit":
        p = [float(args.get(f"p{i}", 0.5)) for i in range(interface.num_actions)]
        return bernoulli_bandit(p)
    if name == "uniform":
        return uniform_env()
    if name == "copy":
        return copy_env()
    if name == "ignore":
        return ignore_env()
    if name == "det":
        if "file" not in args:
            raise ValueError("det environment needs file=<path>")
        return _det_env_from_file(args["file"])
    if name == "corridor":
        return corridor_env(
            CorridorSpec(
                rooms=int(args.get("rooms", 5)),
                theta=float(args.get("theta", 0.5)),
                start_room=int(args.get("start", 0)),
            )
        )
    raise ValueError(f"unknown environment {name!r}")
