"""
Discriminant forms
==================

The finite quadratic module attached to a binary form of discriminant m.
"""
# %%
from hzseries.discform import build_discriminant_form, ternary_check, zero_count_check, frac1

df = build_discriminant_form(5)
print("m = 5, elements:", [str(g) for g in df.elements])
print("beta =", df.beta, " Q(beta) =", df.q(df.beta))
print("Q on multiples of beta:", [df.q(j * df.beta) for j in range(5)])

# %%
# m = 8 is not cyclic; beta has order 4.
df8 = build_discriminant_form(8)
print("m = 8 orders:", sorted(g.order for g in df8.elements))

# %%
# Elements of the m = 25 form with integral norm and their pairing with beta.
df25 = build_discriminant_form(25)
for g in df25.elements_with_norm(0):
    print(g, df25.beta_pairing(g))

# %%
# The ternary form has discriminant -2 for every m, and both polynomials
# have the same number of zeros modulo small prime powers.
print([ternary_check(m) for m in (5, 8, 12, 13, 17)])
for g in df.elements:
    r, n = frac1(-df.beta_pairing(g)), frac1(-df.q(g))
    print(g, [zero_count_check(df, g, r, n, p, k) for p, k in ((2, 2), (3, 1), (7, 1))])
