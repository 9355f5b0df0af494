"""
Weil representation
===================

rho(S), rho(T) as numpy matrices, and how they intertwine the Heisenberg action.
"""
# %%
import numpy as np

from hzseries.series import discriminant_form
from hzseries.weil import (
    compatibility_residual,
    gamma0_matrix,
    proportionality,
    rho_generator,
    rho_word,
    select_orientation,
)

df = discriminant_form(13)
S, T = rho_generator(df, "S"), rho_generator(df, "T")
print("|S^4 - 1| =", np.abs(np.linalg.matrix_power(S, 4) - np.eye(13)).max())
print("|(ST)^3 - S^2| =", np.abs(np.linalg.matrix_power(S @ T, 3) - S @ S).max())

# %%
# On Gamma_0(13) the representation is a phase times e_g -> e(-bdQ(g)) e_{dg}.
M = ((3, 1), (26, 9))
c, resid = proportionality(rho_word(df, M), gamma0_matrix(df, M))
print("scalar", np.round(c, 12), "residual", resid)

# %%
orientation = select_orientation(df)
print(orientation, compatibility_residual(df, (1, 2, 0), ((2, 1), (1, 1)), orientation))
