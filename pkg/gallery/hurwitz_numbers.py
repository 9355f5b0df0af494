"""
Hurwitz class numbers
=====================

Two independent ways to get H(n), and the classical relation they satisfy.
"""
# %%
# The formula route goes through the fundamental discriminant; the oracle
# counts reduced forms with weights 1/2 and 1/3 for the special ones.
from hzseries.hurwitz import build_table, hurwitz_formula, hurwitz_oracle
from hzseries.arith import divisor_list

for n in (3, 4, 12, 16, 23, 28, 100):
    print(f"H({n}) = {hurwitz_formula(n)}   oracle {hurwitz_oracle(n)}")

# %%
# A table is just a list of Fractions.  It can be cached to disk.
table = build_table(400)
print(table.values[:12])

# %%
# sum_r H(4n - r^2) against sum_{d|n} max(d, n/d)
for n in range(1, 11):
    lhs = sum(table[4 * n - r * r] for r in range(-2 * n, 2 * n + 1))
    rhs = sum(max(d, n // d) for d in divisor_list(n))
    print(n, lhs, rhs)
