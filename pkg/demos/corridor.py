"""The mouse corridor: plasticity and empowerment trade places along the rooms.

Each room has a light and a lever; pulling the lever in room i overrides the
light's random flip with probability i/n.  A mouse camped in the far-left room
is all plasticity (the light drives it, it controls nothing); camped at the
far right it is all empowerment.  Corner-room policies react to the light and
keep some randomness, which is what makes both quantities visible.
"""

from gdikit import AgencyQuery, Interval, check_tension
from gdikit.trajectory import Interface
from gdikit.zoo import CorridorSpec, corridor_env, corridor_stay_agent

interface = Interface(3, 2)  # left, right, pull / light off, on
rooms, theta, horizon = 5, 0.5, 4
query = AgencyQuery(Interval(1, horizon), Interval(1, horizon))

print(f"corridor with {rooms} rooms, latent flip rate {theta}, horizon {horizon}")
print(f"  {'room':>4}  {'plasticity':>10}  {'empowerment':>11}")
for room in range(rooms):
    spec = CorridorSpec(rooms=rooms, theta=theta, start_room=room)
    rep = check_tension(corridor_stay_agent(spec, room), corridor_env(spec), query, interface)
    print(f"  {room:>4}  {rep.plasticity:10.6f}  {rep.empowerment:11.6f}")

print("\n(interior rooms only preserve position by pulling, so their stay")
print("policy is constant and both quantities vanish)")
