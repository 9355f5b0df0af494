"""
Units and norm equations in Q(sqrt m)
=====================================
"""
# %%
import math

from hzseries.quadratic import fundamental_unit, norm_equation_orbits, walk_smaller_conjugates

for m in (5, 8, 12, 13, 21, 61):
    u = fundamental_unit(m)
    print(f"m = {m}: eps = ({u.T} + {u.U} sqrt {m})/2 = {u.value:.6f}")

# %%
# Totally positive solutions of X^2 - 5 Y^2 = 4*5*11, one orbit representative each.
orb = norm_equation_orbits(5, 220, totally_positive=True)
print(orb.orbit_reps)

# %%
# Along a ray the smaller conjugate (X - |Y| sqrt m)/2 shrinks by eps per step.
for X, Y in walk_smaller_conjugates(*orb.orbit_reps[0], orb.generator):
    print(X, Y, (X + Y * math.sqrt(5)) / 2)
    if X > 10**5:
        break
