"""
Calibration and class number identities
=======================================
"""
# %%
from hzseries.identities import calibrate, restricted_sum, verify_catalog
from hzseries.arith import sigma1

# Ratios C(n, 0) / (-12 sigma_1(n, chi_5)) by class of n mod 20.
rep = calibrate(5, None, sample_max=100)
for cls, k in sorted(rep.kappa.items(), key=lambda kv: kv[0].residue):
    print(cls, k)

# %%
# Classes where 5 divides n are not constant: the local factor at 5 depends
# on how often 5 divides n.
for v in rep.violations[:3]:
    print(v.to_json())

# %%
for r in verify_catalog(["m5", "m12-7", "m40"], max_n=300):
    print(r.record.source, r.record.residue_class, r.record.kappa, "pass" if r.passed else r.witness)

# %%
# Sums restricted to r = a mod 5 are fixed multiples of sigma(n).
for n in (1, 2, 3, 4, 6, 7):
    print(n, " ".join(str(restricted_sum(5, a, n) / sigma1(n)) for a in range(5)))
