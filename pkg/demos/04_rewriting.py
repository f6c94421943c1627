# %% [markdown]
# An H-invariant y in W S(V) written as a_0 + b_1 v + ... + b_m v^m where each b_i is
# again an H-invariant in W S(V) of lower degree.

# %%
from modinv import (
    Example47Params,
    HPoly,
    Subspace,
    build_example47,
    kernel_subgroup_of_W,
    verify_section2_identities,
)
from modinv.linalg import identity

params = Example47Params.make(3, 2, 3)
F = params.field
W = Subspace.span(F, identity(4)[1:], 4)
H = kernel_subgroup_of_W(build_example47(params), W)

v, w1 = HPoly.variable(F, 4, 0), HPoly.variable(F, 4, 3)
y = w1 * (v ** 3 - w1 ** 2 * v)
wit = verify_section2_identities(y, W, [1, 0, 0, 0], H, W)
print("y =", y)
print("a_0 =", wit.a[0])
for i, b in enumerate(wit.b, start=1):
    print(f"b_{i} = {b}")
print("identities checked:", wit.identities_checked, " partial sums:", wit.partial_sums_checked)

# %% [markdown]
# A skew choice of V' and v works too; the witness is computed in adapted coordinates
# and mapped back.

# %%
import numpy as np

from modinv import GF, build_unitriangular
from modinv.invariants import wsv_invariants

F = GF(3)
U = build_unitriangular(3, F)
W = Subspace.span(F, [[1, 0, 0]], 3)
H = kernel_subgroup_of_W(U, W)
space = wsv_invariants(H, W, 4)
y = HPoly.from_vector(F, 3, 4, space.basis[-1])
wit = verify_section2_identities(y, Subspace.span(F, [[1, 0, 0], [0, 1, 1]], 3), [0, 1, 2], H, W)
print("y =", y)
print("b degrees:", [b.degree for b in wit.b])
