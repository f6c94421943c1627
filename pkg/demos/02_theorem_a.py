# %% [markdown]
# Theorem A for G inside SL(V): S(V)^G is polynomial exactly when G is generated by
# transvections and every stabilizer of a line in V* has polynomial invariants.

# %%
from modinv import Example47Params, build_example47, build_slnq_natural, check_theorem_a

for G in (build_slnq_natural(2, 2), build_slnq_natural(2, 3),
          build_example47(Example47Params.make(3, 2, 3))):
    r = check_theorem_a(G)
    stab = sorted({line.stabilizer_order for line in r.cond2_lines})
    print(f"{G.name}: |G|={G.order}")
    print(f"    transvection generated: {r.cond1_transvection_generated}")
    print(f"    stabilizer orders: {stab}, all polynomial: "
          f"{all(line.report.status == 'PolynomialCertified' for line in r.cond2_lines)}")
    print(f"    verdict: {r.verdict}  direct: {r.direct_check.status} "
          f"{r.direct_check.generator_degrees}")

# %% [markdown]
# Outside SL(V) the "only if" half is not available, so the verdict stays open.

# %%
from modinv import GF, NotInSL, build_scalar_rep

R = build_scalar_rep(GF(5), [2, 1])
print(check_theorem_a(R).verdict)
try:
    check_theorem_a(R, strict=True)
except NotInSL as exc:
    print("strict mode:", exc)
