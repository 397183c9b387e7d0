"""The two Q-learning/bandit experiments, computed exactly.

An eps-greedy tabular Q-learner plays a two-armed Bernoulli bandit.  Sweep 1
varies the exploration rate and watches plasticity (how much the observed
rewards steer the actions) fall to zero at eps=1.  Sweep 2 fixes eps=0 and
varies the initial Q value from pessimistic to optimistic; plasticity,
empowerment, and their sum stay under the interval bound throughout.

The command-line equivalents write CSVs:
    gdikit sweep-epsilon --out eps.csv
    gdikit sweep-qinit --out qinit.csv
"""

import numpy as np

from gdikit import AgencyQuery, Arrow, Interval, check_tension, enumerate_joint, gdi, tension_bound
from gdikit.trajectory import Interface
from gdikit.zoo import QLearnerSpec, bernoulli_bandit, q_learning_agent

interface = Interface(2, 2)
env = bernoulli_bandit([0.4, 0.7])
query = AgencyQuery(action_interval=Interval(2, 5), observation_interval=Interval(1, 3))

print("eps sweep: plasticity of Q-learning (q0=0, alpha=0.1), delayed arrow")
for eps in np.linspace(0.0, 1.0, 11):
    agent = q_learning_agent(QLearnerSpec(epsilon=float(eps)))
    dist = enumerate_joint(agent, env, query.horizon, interface)
    value = gdi(dist, query.plasticity_query()).value
    print(f"  eps={eps:.1f}  plasticity={value:.6f} bits")

m = tension_bound(interface, query)
print(f"\nq0 sweep: greedy Q-learning (eps=0); bound m = {m:.1f} bits")
print(f"  {'q0':>5}  {'plasticity':>10}  {'empowerment':>11}  {'sum':>8}")
for q0 in np.linspace(-1.0, 1.0, 11):
    agent = q_learning_agent(QLearnerSpec(epsilon=0.0, q_init=float(q0)))
    rep = check_tension(agent, env, query, interface)
    print(
        f"  {q0:+.1f}  {rep.plasticity:10.6f}  {rep.empowerment:11.6f}  "
        f"{rep.plasticity + rep.empowerment:8.6f}"
    )
