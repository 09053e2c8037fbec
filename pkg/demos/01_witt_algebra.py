# %% [markdown]
# # The truncated current Witt algebra W_l
#
# W_l = W (x) k[t]/(t^(l+1)) has basis e_i t^j with -1 <= i <= p-2 and
# 0 <= j <= l.  Brackets and the p-map are hard-coded structure constants.

# %%
import numpy as np

from wcw.gf import Field
from wcw.witt import PChar, WittShape, bracket, height, p_map

F = Field(5)
W = WittShape(F, 1)
print(W, "dimension", W.dim)

# %% the bracket table, as (coefficient, target) or '.' for zero
for a in W.basis:
    row = []
    for b in W.basis:
        r = W.bracket_basis(a, b)
        row.append("." if r is None else f"{r[0]}{r[1]}")
    print(f"{str(a):>8} | " + " ".join(f"{c:>9}" for c in row))

# %% brackets of general elements are bilinear
x = W.e(-1, 0) + F(2) * W.e(1, 1)
y = W.e(2, 0)
print("[x, y] =", bracket(x, y))

# %% only e_0 t^j has a nonzero p-th power, and only while jp <= l
for b in W.graded(0):
    print(b, "->", p_map(W.e(*b)))

# %% heights of a few p-characters
for vals in ({}, {(-1, 1): 1}, {(0, 1): 1}, {(1, 1): 1}):
    chi = PChar(W, vals)
    print(chi, "height", height(chi))

# %% extension fields: F_{5^5} and its Artin-Schreier equation
G = Field(5, 5)
print(G, "modulus (low to high)", G.modulus)
from wcw.gf import artin_schreier_roots
print("roots of x^5 - x = 1:", [r.coeffs for r in artin_schreier_roots(G(1))])
