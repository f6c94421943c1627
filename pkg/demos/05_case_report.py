# %% [markdown]
# For each maximal submodule W, report |H|, the order of the induced action on V/W,
# and which of the listed cases that order is compatible with.

# %%
import json

from modinv import Example47Params, build_example47, build_slnq_natural, case_report

for G in (build_example47(Example47Params.make(3, 2, 3)), build_slnq_natural(2, 2)):
    rep = case_report(G)
    print(G.name, "|G| =", rep["group_order"], " in SL:", rep["in_SL"])
    for entry in rep["maximal_submodules"][:3]:
        print("   ", json.dumps({k: entry[k] for k in
                                 ("dim_V_mod_W", "H_order", "quotient_order", "consistent_cases")}))
    print("    polynomial:", rep["polynomiality"])
