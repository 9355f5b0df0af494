"""
Hirzebruch-Zagier coefficients
==============================

Exact where possible, a float with a proven error bound otherwise.
"""
# %%
from hzseries.series import hz_coefficient, series_table
from hzseries.identities import scalarize_prime

# m = 1 gives the Eisenstein series 1 - 24 sum sigma(n) q^n.
print([str(hz_coefficient(1, None, n)) for n in range(6)])

# %%
t = series_table(5, 4, tol=1e-10)
for (g, n), v in t.sorted_rows():
    print(g, n, v)

# %%
# The JSON form is lossless: exact values stay strings.
print(t.to_json()[:300])

# %%
# Summing the components gives a scalar form; a second route through the
# units of Q(sqrt 5) gives the same numbers.
for item in scalarize_prime(5, 8, 1e-10):
    print(item.N, item.vector, "|", item.direct)
