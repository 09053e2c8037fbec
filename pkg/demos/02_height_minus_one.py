# %% [markdown]
# # chi = 0 over W (l = 0): five simple modules
#
# Every Verma module Z(lambda) has dimension p.  Three of them are simple;
# Z(p-1) has a one-dimensional socle and Z(0) a trivial head.

# %%
from wcw.gf import Field
from wcw.modtools import is_irreducible, quotient, socle_and_maximal
from wcw.verma import build_verma
from wcw.witt import PChar, WittShape
from wcw.classify import classify

F = Field(5)
chi = PChar(WittShape(F, 0), {})

# %% Norton's test on each Verma
for lam in range(5):
    Z = build_verma(chi, lam)
    v = is_irreducible(Z, seed=0)
    soc, rad = socle_and_maximal(Z)
    print(f"Z({lam}): {v.tag:<22} socle dim {soc.dim}, radical dim {rad.dim}")

# %% the (p-1)-dimensional simple is Z(4) modulo its socle
Z4 = build_verma(chi, 4)
soc, _ = socle_and_maximal(Z4)
Q = quotient(Z4, soc)
print("Z(4)/soc: dim", Q.dim, is_irreducible(Q).tag)

# %% the driver does all of this and groups the simples into classes
report = classify(5, 0, chi, seed=0)
print(report.to_text())
