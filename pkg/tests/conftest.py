import bisect
import itertools
import random
from collections import Counter

import pytest

from gdikit.trajectory import History, Interface
from gdikit.zoo import QLearnerSpec, bernoulli_bandit, q_learning_agent


def rollout_frequencies(agent, env, interface, horizon, n, seed):
    """Independent step-by-step simulator: plain-Python sampling, no tables.

    Returns a Counter over (actions, observations) tuples.  This is the test
    oracle for the exact enumerator; it shares only the policy callables with
    the code under test, never the probability bookkeeping.
    """
    rnd = random.Random(seed)
    counts = Counter()
    cdf_cache = {}

    def sample(policy, tag, acts, obss):
        key = (tag, acts, obss)
        cdf = cdf_cache.get(key)
        if cdf is None:
            probs = policy(History(interface, acts, obss))
            cdf = list(itertools.accumulate(float(p) for p in probs))
            cdf_cache[key] = cdf
        return bisect.bisect_right(cdf, rnd.random())

    for _ in range(n):
        acts, obss = (), ()
        for _t in range(horizon):
            a = sample(agent, "a", acts, obss)
            acts += (a,)
            o = sample(env, "o", acts, obss)
            obss += (o,)
        counts[(acts, obss)] += 1
    return counts


@pytest.fixture(scope="session")
def qbandit_rollouts():
    """One million seeded rollouts of eps=0.5 Q-learning vs a (0.4, 0.7) bandit."""
    interface = Interface(2, 2)
    agent = q_learning_agent(QLearnerSpec(epsilon=0.5, q_init=0.0, alpha=0.1))
    env = bernoulli_bandit([0.4, 0.7])
    n = 1_000_000
    counts = rollout_frequencies(agent, env, interface, 3, n, seed=20240817)
    return interface, agent, env, counts, n
