import itertools

import numpy as np
import pytest

from gdikit.measures import Interval
from gdikit.trajectory import History, Interface
from gdikit.zoo import (
    LEFT,
    PULL,
    RIGHT,
    CorridorSpec,
    QLearnerSpec,
    bernoulli_bandit,
    constant_agent,
    copy_env,
    corridor_env,
    corridor_stay_agent,
    deterministic_env,
    ignore_env,
    length_agent,
    make_agent,
    make_env,
    mirror_agent,
    open_loop_agent,
    past_action_agent,
    q_learning_agent,
    random_agent,
    uniform_env,
)

ITF = Interface(2, 2)


def agent_histories(interface, max_steps):
    """All histories at which an agent is queried, up to max_steps steps."""
    out = [History(interface, (), ())]
    for k in range(1, max_steps + 1):
        for acts in itertools.product(range(interface.num_actions), repeat=k):
            for obss in itertools.product(range(interface.num_observations), repeat=k):
                out.append(History(interface, acts, obss))
    return out


def observation_variants(history):
    for obss in itertools.product(
        range(history.interface.num_observations), repeat=len(history.observations)
    ):
        yield History(history.interface, history.actions, obss)


class TestObservationBlindAgents:
    @pytest.mark.parametrize(
        "agent",
        [
            constant_agent([0.25, 0.75]),
            open_loop_agent(np.random.default_rng(0).dirichlet(np.ones(8)).reshape(2, 2, 2)),
            length_agent({0: [0.2, 0.8], 1: [0.9, 0.1], 2: [0.5, 0.5]}),
            past_action_agent({(): [0.4, 0.6], (0,): [1.0, 0.0], (1, 1): [0.3, 0.7]}),
        ],
        ids=["constant", "open-loop", "length", "past-action"],
    )
    def test_invariant_to_observation_substitution(self, agent):
        for h in agent_histories(ITF, 3):
            base = agent(h)
            for variant in observation_variants(h):
                np.testing.assert_array_equal(agent(variant), base)

    def test_open_loop_conditions_on_own_prefix(self):
        rng = np.random.default_rng(1)
        table = rng.dirichlet(np.ones(8)).reshape(2, 2, 2)
        agent = open_loop_agent(table)
        h = History(ITF, (1,), (0,))
        expected = table[1].sum(axis=1) / table[1].sum()
        np.testing.assert_allclose(agent(h), expected)

    def test_unnormalized_input_rejected(self):
        with pytest.raises(ValueError):
            constant_agent([0.5, 0.6])
        with pytest.raises(ValueError):
            open_loop_agent(np.ones((2, 2)))


class TestQLearning:
    def test_full_exploration_is_uniform_everywhere(self):
        agent = q_learning_agent(QLearnerSpec(epsilon=1.0))
        for h in agent_histories(ITF, 3):
            np.testing.assert_allclose(agent(h), [0.5, 0.5])

    def test_empty_history_symmetric_init_is_uniform(self):
        agent = q_learning_agent(QLearnerSpec(epsilon=0.25, q_init=0.4))
        np.testing.assert_allclose(agent(History(ITF, (), ())), [0.5, 0.5])

    def test_single_update_hand_replay(self):
        # One pull of arm 0 with reward 1: Q becomes (0.1, 0), greedy on arm 0.
        agent = q_learning_agent(QLearnerSpec(epsilon=0.0, q_init=0.0, alpha=0.1))
        np.testing.assert_array_equal(agent(History(ITF, (0,), (1,))), [1.0, 0.0])

    def test_purity_across_calls(self):
        agent = q_learning_agent(QLearnerSpec(epsilon=0.3, q_init=-0.5, alpha=0.2))
        h = History(ITF, (0, 1, 1), (1, 0, 1))
        np.testing.assert_array_equal(agent(h), agent(h))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QLearnerSpec(epsilon=1.5)
        with pytest.raises(ValueError):
            QLearnerSpec(epsilon=0.5, alpha=0.0)


class TestEnvironments:
    def test_bandit_sure_win(self):
        env = bernoulli_bandit([1.0, 1.0])
        for a in (0, 1):
            np.testing.assert_array_equal(env(History(ITF, (a,), ())), [0.0, 1.0])

    def test_bandit_arm_parameter(self):
        env = bernoulli_bandit([0.4, 0.7])
        np.testing.assert_allclose(env(History(ITF, (1,), ())), [0.3, 0.7])

    def test_bandit_arity_mismatch(self):
        env = bernoulli_bandit([0.4, 0.7])
        with pytest.raises(ValueError):
            env(History(Interface(3, 2), (2,), ()))

    def test_copy_env_points_at_last_action(self):
        env = copy_env()
        np.testing.assert_array_equal(env(History(ITF, (1,), ())), [0.0, 1.0])

    def test_copy_env_needs_enough_observations(self):
        env = copy_env()
        with pytest.raises(ValueError):
            env(History(Interface(3, 2), (0,), ()))

    def test_ignore_env_is_action_blind(self):
        env = ignore_env({0: [0.9, 0.1], 1: [0.2, 0.8]})
        h0 = History(ITF, (0,), ())
        h1 = History(ITF, (1,), ())
        np.testing.assert_array_equal(env(h0), env(h1))

    def test_deterministic_env_is_point_mass(self):
        env = deterministic_env(lambda h: h.actions[-1])
        assert env(History(ITF, (1,), ())).tolist() == [0.0, 1.0]


class TestMirrorAgent:
    def test_before_start_plays_zero(self):
        agent = mirror_agent(ITF, start=3)
        np.testing.assert_array_equal(agent(History(ITF, (1,), (1,))), [1.0, 0.0])

    def test_mirrors_last_observation(self):
        agent = mirror_agent(ITF, start=2)
        np.testing.assert_array_equal(agent(History(ITF, (0,), (1,))), [0.0, 1.0])

    def test_out_of_range_observation_falls_back(self):
        itf = Interface(2, 3)
        agent = mirror_agent(itf, start=1)
        np.testing.assert_array_equal(agent(History(itf, (0,), (2,))), [1.0, 0.0])

    def test_every_output_is_a_point_mass(self):
        agent = mirror_agent(ITF, start=2)
        for h in agent_histories(ITF, 3):
            assert sorted(agent(h).tolist()) == [0.0, 1.0]

    def test_needs_enough_observations(self):
        with pytest.raises(ValueError):
            mirror_agent(Interface(3, 2), start=1)


class TestCorridor:
    ITF3 = Interface(3, 2)

    def test_room_zero_pull_flips_at_theta(self):
        spec = CorridorSpec(rooms=5, theta=0.3)
        env = corridor_env(spec)
        out = env(History(self.ITF3, (PULL,), ()))
        np.testing.assert_allclose(out, [0.7, 0.3])  # light starts off

    def test_last_room_pull_is_deterministic(self):
        spec = CorridorSpec(rooms=3, theta=0.3, start_room=2)
        env = corridor_env(spec)
        out = env(History(self.ITF3, (PULL,), ()))
        np.testing.assert_allclose(out, [0.0, 1.0])

    def test_moves_flip_at_theta_everywhere(self):
        spec = CorridorSpec(rooms=4, theta=0.25, start_room=2)
        env = corridor_env(spec)
        out = env(History(self.ITF3, (RIGHT,), ()))
        np.testing.assert_allclose(out, [0.75, 0.25])

    def test_position_clamps_at_both_ends(self):
        from gdikit.zoo import _corridor_position

        spec = CorridorSpec(rooms=3, theta=0.5)
        assert _corridor_position(spec, (LEFT, LEFT, LEFT)) == 0
        assert _corridor_position(spec, (RIGHT,) * 5) == 2

    def test_wrong_interface_rejected(self):
        env = corridor_env(CorridorSpec(rooms=3, theta=0.5))
        with pytest.raises(ValueError):
            env(History(ITF, (0,), ()))

    def test_stay_agent_stays_and_reacts(self):
        spec = CorridorSpec(rooms=5, theta=0.5)
        agent = corridor_stay_agent(spec, 0)
        on = agent(History(self.ITF3, (PULL,), (1,)))
        off = agent(History(self.ITF3, (PULL,), (0,)))
        assert on[PULL] == 0.75 and on[LEFT] == 0.25 and on[RIGHT] == 0.0
        assert off[PULL] == 0.25 and off[LEFT] == 0.75

    def test_interior_room_degenerates_to_lever(self):
        spec = CorridorSpec(rooms=5, theta=0.5, start_room=2)
        agent = corridor_stay_agent(spec, 2)
        np.testing.assert_array_equal(agent(History(self.ITF3, (), ())), [0.0, 0.0, 1.0])


class TestRandomPolicies:
    def test_reproducible_across_instances(self):
        a1, a2 = random_agent(ITF, 42), random_agent(ITF, 42)
        h = History(ITF, (0, 1), (1, 0))
        np.testing.assert_array_equal(a1(h), a2(h))

    def test_different_seeds_differ(self):
        h = History(ITF, (0,), (1,))
        assert not np.array_equal(random_agent(ITF, 1)(h), random_agent(ITF, 2)(h))

    def test_order_independence(self):
        agent = random_agent(ITF, 7)
        h1, h2 = History(ITF, (), ()), History(ITF, (1,), (1,))
        first = (agent(h1).copy(), agent(h2).copy())
        agent2 = random_agent(ITF, 7)
        second = (agent2(h2).copy(), agent2(h1).copy())
        np.testing.assert_array_equal(first[0], second[1])
        np.testing.assert_array_equal(first[1], second[0])


class TestRegistry:
    def test_agent_names(self):
        for spec in ["constant", "open-loop", "length", "past-action", "qlearn(eps=0.5)", "mirror(start=2)"]:
            agent = make_agent(spec, ITF)
            probs = agent(History(ITF, (), ()))
            assert abs(float(np.sum(probs)) - 1.0) < 1e-12

    def test_env_names(self):
        for spec in ["bandit(p0=0.4,p1=0.7)", "uniform", "copy", "ignore"]:
            env = make_env(spec, ITF)
            probs = env(History(ITF, (0,), ()))
            assert abs(float(np.sum(probs)) - 1.0) < 1e-12

    def test_corridor_registry(self):
        env = make_env("corridor(rooms=3,theta=0.25,start=2)", Interface(3, 2))
        out = env(History(Interface(3, 2), (PULL,), ()))
        np.testing.assert_allclose(out, [0.0, 1.0])

    def test_det_env_from_file(self, tmp_path):
        path = tmp_path / "det.txt"
        path.write_text("0 : 1\n0 1 1 : 1\n")
        env = make_env(f"det(file={path})", ITF)
        assert env(History(ITF, (0,), ())).tolist() == [0.0, 1.0]
        assert env(History(ITF, (1,), ())).tolist() == [1.0, 0.0]

    def test_qlearn_arguments_parsed(self):
        agent = make_agent("qlearn(eps=0,q0=0,alpha=0.1)", ITF)
        np.testing.assert_array_equal(agent(History(ITF, (0,), (1,))), [1.0, 0.0])

    def test_unknown_names_rejected(self):
        with pytest.raises(ValueError):
            make_agent("nonesuch", ITF)
        with pytest.raises(ValueError):
            make_env("nonesuch", ITF)
