"""Finite agent-environment interaction: interfaces, histories, and exact joints.

An agent and an environment share an interface of finite action/observation
alphabets and exchange symbols in the fixed global order A1 O1 A2 O2 ...
(actions first).  Policies are pure callables from a history to a probability
vector; the joint law over full length-n trajectories is enumerated exactly
as a dense table with one axis per emitted symbol.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapExceededError, PolicyContractError

# Normalization tolerances: policies at 1e-12, joint tables at 1e-10.
POLICY_ATOL = 1e-12
JOINT_ATOL = 1e-10

# Default cap on dense-table size: (|A|*|O|)**n cells.
DEFAULT_CELL_CAP = 2**24


class Role(Enum):
    """Which side of the interface a coordinate or symbol belongs to."""

    ACTION = "action"
    OBSERVATION = "observation"

    @property
    def other(self) -> "Role":
        return Role.OBSERVATION if self is Role.ACTION else Role.ACTION


@dataclass(frozen=True)
class Interface:
    """A pair of finite alphabets; both sides must have at least two symbols."""

    num_actions: int
    num_observations: int

    def __post_init__(self) -> None:
        if self.num_actions < 2 or self.num_observations < 2:
            raise ValueError(
                f"interface needs >= 2 symbols per side, got "
                f"({self.num_actions}, {self.num_observations})"
            )

    def size(self, role: Role) -> int:
        return self.num_actions if role is Role.ACTION else self.num_observations

    def swapped(self) -> "Interface":
        """The interface seen from the other side: actions and observations exchange."""
        return Interface(self.num_observations, self.num_actions)


@dataclass(frozen=True)
class History:
    """An alternating action/observation prefix of an interaction.

    Canonically actions lead: len(actions) == len(observations) means the next
    emitter is the agent ("ends in observation", or empty), len(actions) ==
    len(observations) + 1 means the next emitter is the environment ("ends in
    action").  Role-swapped views (see :func:`swap_roles`) may additionally
    present the transposed shape where observations lead by one.
    """

    interface: Interface
    actions: tuple[int, ...]
    observations: tuple[int, ...]

    def __post_init__(self) -> None:
        if abs(len(self.actions) - len(self.observations)) > 1:
            raise ValueError(
                f"history out of alternation: {len(self.actions)} actions vs "
                f"{len(self.observations)} observations"
            )
        for a in self.actions:
            if not 0 <= a < self.interface.num_actions:
                raise ValueError(f"action index {a} out of range")
        for o in self.observations:
            if not 0 <= o < self.interface.num_observations:
                raise ValueError(f"observation index {o} out of range")

    @property
    def ends_in_action(self) -> bool:
        return len(self.actions) == len(self.observations) + 1

    @property
    def is_empty(self) -> bool:
        return not self.actions and not self.observations

    @property
    def steps(self) -> int:
        """Number of completed (action, observation) exchanges."""
        return min(len(self.actions), len(self.observations))

    def with_action(self, a: int) -> "History":
        return History(self.interface, self.actions + (a,), self.observations)

    def with_observation(self, o: int) -> "History":
        return History(self.interface, self.actions, self.observations + (o,))

    def relabeled(self) -> "History":
        """The same symbol content viewed from the opposite role assignment."""
        return History(self.interface.swapped(), self.observations, self.actions)

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.actions):
            parts.append(f"a{a}")
            if i < len(self.observations):
                parts.append(f"o{self.observations[i]}")
        if len(self.observations) > len(self.actions):
            parts.append(f"o{self.observations[-1]}")
        return " ".join(parts) if parts else "(empty)"


# Policies: history -> probability vector.  Agents answer histories where the
# agent moves next, environments those where the environment moves next.
AgentFn = Callable[[History], np.ndarray]
EnvFn = Callable[[History], np.ndarray]


@dataclass(frozen=True)
class Trajectory:
    """A complete length-n interaction record."""

    horizon: int
    actions: tuple[int, ...]
    observations: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if len(self.actions) != self.horizon or len(self.observations) != self.horizon:
            raise ValueError("trajectory lengths must equal the horizon")


Coord = tuple[Role, int]


def _axis_of(coord: Coord, horizon: int) -> int:
    role, t = coord
    if not 1 <= t <= horizon:
        raise IndexError(f"timestep {t} outside horizon {horizon}")
    return 2 * (t - 1) + (0 if role is Role.ACTION else 1)


class JointDist:
    """Exact probability table over all length-n trajectories.

    The dense table has 2n axes ordered A1, O1, A2, O2, ..., An, On.  Instances
    are immutable after construction and safe to read concurrently; marginal
    tables are cached per coordinate subset.
    """

    def __init__(self, interface: Interface, horizon: int, table: np.ndarray):
        expected = (interface.num_actions, interface.num_observations) * horizon
        if table.shape != expected:
            raise ValueError(f"table shape {table.shape} != expected {expected}")
        if np.any(table < 0):
            raise ValueError("joint table has negative entries")
        total = float(table.sum())
        if abs(total - 1.0) > JOINT_ATOL:
            raise ValueError(f"joint table mass {total!r} not within {JOINT_ATOL} of 1")
        self.interface = interface
        self.horizon = horizon
        self.table = table
        self.table.setflags(write=False)
        self._marginal_cache: dict[tuple[int, ...], np.ndarray] = {}

    def coord_size(self, coord: Coord) -> int:
        return self.interface.size(coord[0])

    def marginal(self, coords: Iterable[Coord]) -> np.ndarray:
        """Marginal table over the given coordinates, axes in canonical time order.

        An empty coordinate set yields the scalar array 1.0.
        """
        axes = tuple(sorted(_axis_of(c, self.horizon) for c in coords))
        if len(set(axes)) != len(axes):
            raise ValueError("duplicate coordinates in marginal request")
        return self._marginal_axes(axes)

    def _marginal_axes(self, axes: tuple[int, ...]) -> np.ndarray:
        cached = self._marginal_cache.get(axes)
        if cached is None:
            drop = tuple(i for i in range(2 * self.horizon) if i not in axes)
            cached = self.table.sum(axis=drop) if drop else self.table
            cached = np.asarray(cached)
            cached.setflags(write=False)
            self._marginal_cache[axes] = cached
        return cached

    def grouped_marginal(self, *groups: Sequence[Coord]) -> np.ndarray:
        """Marginal over the union of coordinate groups, reshaped to one axis per group.

        Each output axis ranges over the joint alphabet of its group (row-major
        in canonical coordinate order); empty groups contribute a length-1 axis.
        """
        per_group_axes = []
        for group in groups:
            axes = tuple(sorted(_axis_of(c, self.horizon) for c in group))
            per_group_axes.append(axes)
        flat = [a for axes in per_group_axes for a in axes]
        if len(set(flat)) != len(flat):
            raise ValueError("coordinate groups overlap")
        base = self._marginal_axes(tuple(sorted(flat)))
        # Transpose the canonical-order marginal into group order, then merge
        # each group's axes into one.
        positions = {axis: i for i, axis in enumerate(sorted(flat))}
        perm = [positions[a] for a in flat]
        arranged = base.transpose(perm) if flat else base
        dims = list(arranged.shape)
        shape = []
        k = 0
        for axes in per_group_axes:
            size = 1
            for _ in axes:
                size *= dims[k]
                k += 1
            shape.append(size)
        return arranged.reshape(shape)

    def prob(self, traj: Trajectory) -> float:
        idx = tuple(x for pair in zip(traj.actions, traj.observations) for x in pair)
        return float(self.table[idx])

    def swap_roles(self) -> "JointDist":
        """The same joint law with per-step action/observation coordinates exchanged.

        This is the other party's view of one shared interaction; no new
        process is simulated.
        """
        perm = [2 * i + (1 - j) for i in range(self.horizon) for j in range(2)]
        return JointDist(
            self.interface.swapped(), self.horizon, np.ascontiguousarray(self.table.transpose(perm))
        )

    def apply_channel(self, channel: np.ndarray) -> "JointDist":
        """Push every observation through a memoryless stochastic channel.

        ``channel[y, z]`` is the probability that symbol ``y`` is relayed as
        ``z``; the output joint ranges over the relayed symbols, which are
        conditionally independent of everything else given the step's original
        observation.
        """
        channel = np.asarray(channel, dtype=float)
        if channel.ndim != 2 or channel.shape[0] != self.interface.num_observations:
            raise ValueError(
                f"channel must have {self.interface.num_observations} rows, got {channel.shape}"
            )
        if channel.shape[1] < 2:
            raise ValueError("channel needs at least two output symbols")
        if np.any(channel < 0) or not np.allclose(channel.sum(axis=1), 1.0, atol=POLICY_ATOL):
            raise ValueError("channel rows must be distributions")
        table = self.table
        for step in range(self.horizon):
            axis = 2 * step + 1
            table = np.tensordot(table, channel, axes=([axis], [0]))
            # tensordot appends the new axis; rotate it back into place.
            table = np.moveaxis(table, -1, axis)
        iface = Interface(self.interface.num_actions, channel.shape[1])
        return JointDist(iface, self.horizon, np.ascontiguousarray(table))

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """One line per nonzero trajectory: ``a1 o1 ... an on : p``."""
        lines = [
            f"gdi-joint v1 |A|={self.interface.num_actions} "
            f"|O|={self.interface.num_observations} n={self.horizon}"
        ]
        flat = self.table.reshape(-1)
        shape = self.table.shape
        for flat_idx in np.flatnonzero(flat):
            idx = np.unravel_index(flat_idx, shape)
            lines.append(" ".join(str(i) for i in idx) + f" : {flat[flat_idx]:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "JointDist":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = lines[0].split()
        if header[0] != "gdi-joint" or header[1] != "v1":
            raise ValueError(f"unrecognized joint header: {lines[0]!r}")
        fields = dict(part.split("=") for part in header[2:])
        iface = Interface(int(fields["|A|"]), int(fields["|O|"]))
        horizon = int(fields["n"])
        table = np.zeros((iface.num_actions, iface.num_observations) * horizon)
        for ln in lines[1:]:
            coords, _, prob = ln.rpartition(":")
            idx = tuple(int(tok) for tok in coords.split())
            if len(idx) != 2 * horizon:
                raise ValueError(f"bad trajectory line: {ln!r}")
            table[idx] = float(prob)
        return cls(iface, horizon, table)


def _validated(probs: np.ndarray, size: int, history: History, who: str) -> np.ndarray:
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (size,):
        raise PolicyContractError(
            f"{who} returned shape {probs.shape} (expected ({size},)) on history [{history}]"
        )
    if np.any(probs < 0):
        raise PolicyContractError(f"{who} returned negative mass on history [{history}]")
    if abs(float(probs.sum()) - 1.0) > POLICY_ATOL:
        raise PolicyContractError(
            f"{who} returned mass {float(probs.sum())!r} on history [{history}]"
        )
    return probs


def enumerate_joint(
    agent: AgentFn,
    env: EnvFn,
    horizon: int,
    interface: Interface,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> JointDist:
    """Exact joint over all length-``horizon`` trajectories of (agent, env).

    The probability of a1 o1 ... an on is the telescoping product of the
    agent's and environment's conditionals along the prefix chain.  Zero-mass
    branches are pruned, so deterministic pairs enumerate in linear time.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    na, no = interface.num_actions, interface.num_observations
    cells = (na * no) ** horizon
    if cells > cell_cap:
        raise CapExceededError(
            f"({na}*{no})**{horizon} = {cells} cells exceeds the cap of {cell_cap}"
        )
    table = np.zeros((na, no) * horizon)

    def fill(history: History, depth: int, mass: float, idx: tuple[int, ...]) -> None:
        if depth == horizon:
            table[idx] = mass
            return
        a_probs = _validated(agent(history), na, history, "agent")
        for a in range(na):
            pa = float(a_probs[a])
            if pa == 0.0:
                continue
            h_a = history.with_action(a)
            o_probs = _validated(env(h_a), no, h_a, "environment")
            for o in range(no):
                po = float(o_probs[o])
                if po == 0.0:
                    continue
                fill(h_a.with_observation(o), depth + 1, mass * pa * po, idx + (a, o))

    fill(History(interface, (), ()), 0, 1.0, ())
    return JointDist(interface, horizon, table)


def swap_roles(policy: Callable[[History], np.ndarray]) -> Callable[[History], np.ndarray]:
    """View a policy from the other side of the interface.

    An environment over (A, O) is an agent over (O, A) and vice versa: the
    returned callable relabels each incoming history (action and observation
    content exchange roles, symbols untouched) and delegates.  Relabeling is an
    involution, so applying the swap twice restores the original behavior
    exactly.
    """

    def swapped(history: History) -> np.ndarray:
        return policy(history.relabeled())

    return swapped
