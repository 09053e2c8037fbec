# %% [markdown]
# # l = 1: heights 0 and 1
#
# Height 0: every Z(lambda) is simple and they are all isomorphic; an
# explicit intertwiner sends v_mu to (e_{-1} t)^(lambda-mu) (x) v_lambda.
# Height 1 with chi(e_0 t) != 0: the Vermas are simple and pairwise distinct.

# %%
import numpy as np

from wcw.classify import classify
from wcw.gf import Field
from wcw.modtools import hom_space, intertwiner_candidate, is_irreducible
from wcw.verma import build_verma, lambda_set
from wcw.witt import PChar, WittShape

F = Field(5)
W1 = WittShape(F, 1)

# %% height 0: chi(e_{-1} t) = 1
chi0 = PChar(W1, {(-1, 1): 1})
Vs = [build_verma(chi0, lam) for lam in lambda_set(chi0)]
print([is_irreducible(V).tag for V in Vs])
E0 = Vs[3].matrix((0, 0))
print("e_0 on Z(3) is diagonal:", not (E0 - np.diag(np.diag(E0))).any(), np.diag(E0)[:10])

it = intertwiner_candidate(Vs[3], Vs[1])
print("Z(1) -> Z(3) via w with exponent", it.exponent, "rank", np.linalg.matrix_rank(it.matrix))

# %% height 1, case (b)
chi1 = PChar(W1, {(0, 1): 1})
Ws = [build_verma(chi1, lam) for lam in lambda_set(chi1)]
print(np.array([[hom_space(A, B).dimension for B in Ws] for A in Ws]))
print(intertwiner_candidate(Ws[3], Ws[1]).reason)

# %% height 1, case (a) needs lambda outside the prime field
chi2 = PChar(W1, {(-1, 1): 1, (0, 0): 1})
report = classify(5, 1, chi2)
print(report.notes)
print(report.to_text())
