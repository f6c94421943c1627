# %% [markdown]
# {+I, -I} acting on F_3^2. No pseudo-reflections, so S(V)^G is not polynomial,
# but the action is fixed-point free and the singularity is isolated.

# %%
from modinv import GF, build_scalar_rep, certify_polynomiality, check_isolated, minimal_generators
from modinv.criteria import check_fixed_point_free
from modinv.invariants import fixed_subspace

D = build_scalar_rep(GF(3), [2, 2])
r = certify_polynomiality(D)
print(r.status, r.evidence)

for d, f in minimal_generators(D, 4):
    print(f"degree {d}: {f}")

print("dims of S^d(V)^G:", [fixed_subspace(D, d).dim for d in range(7)])
print("fixed point free:", check_fixed_point_free(D))
print("isolated:", check_isolated(D).isolated)
