"""Monte Carlo estimation of a directed flow, checked against the exact value.

The mirror agent copies back each observation one step late, so observations
over [1:2] determine actions over [2:3] completely: exactly 2 bits.  We
estimate that flow from sampled trajectories at increasing sample sizes and
attach a bootstrap confidence interval.
"""

from gdikit import (
    Arrow,
    Interval,
    MeasureQuery,
    Role,
    bootstrap_ci,
    enumerate_joint,
    estimate_gdi,
    gdi,
    sample_trajectories,
)
from gdikit.trajectory import Interface
from gdikit.zoo import mirror_agent, uniform_env

interface = Interface(2, 2)
agent, env = mirror_agent(interface, start=2), uniform_env()
query = MeasureQuery(Role.OBSERVATION, Interval(1, 2), Role.ACTION, Interval(2, 3), Arrow.DELAYED)

exact = gdi(enumerate_joint(agent, env, 3, interface), query).value
print(f"exact flow: {exact:.6f} bits")

for n in (1_000, 10_000, 100_000):
    samples = sample_trajectories(agent, env, horizon=3, count=n, seed=5, interface=interface)
    point = estimate_gdi(samples, query)
    rep = bootstrap_ci(samples, query, replicates=500, seed=5)
    print(
        f"n={n:>7}: estimate {point:.5f}  "
        f"95% CI [{rep.ci_low:.5f}, {rep.ci_high:.5f}]  "
        f"covers exact: {rep.ci_low <= exact <= rep.ci_high}"
    )

print("\nplug-in estimates sit below the exact value here: 2 bits is the most")
print("these windows can carry, so sampling noise can only lose information.")
