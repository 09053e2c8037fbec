# %% [markdown]
# # Height r > 1: one simple module of dimension p^((l+1)(s+1))
#
# For p = 5, l = 1 and chi(e_1 t) = 1 we have r = 2 and s = 1.  The module
# induced from W_(1) has dimension 5^4 = 625.

# %%
import time

from wcw.gf import Field
from wcw.modtools import is_irreducible
from wcw.verma import build_height_r, strade_elements
from wcw.witt import PChar, WittShape, height

chi = PChar(WittShape(Field(5), 1), {(1, 1): 1})
r = height(chi)
print("height", r, "s =", r // 2)

# %% the elements y_{k,j} and the three conditions
for k in range(r // 2 + 1):
    rec = strade_elements(chi, k)
    print(f"k={k}: y = {rec.y}")
    print(f"     diagonal {[str(d) for d in rec.diagonal]}, conditions {rec.conditions}")

# %% the induced module
t = time.perf_counter()
M = build_height_r(chi)
print("dim", M.dim, f"built and checked in {time.perf_counter() - t:.1f}s")
t = time.perf_counter()
v = is_irreducible(M, seed=0)
print(v.tag, "after", v.samples, "theta sample(s);", f"{time.perf_counter() - t:.1f}s")
