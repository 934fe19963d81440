"""Contracting sparse tensors and checking against the loop oracle."""
# %%
import numpy as np

from ftt import (
    ContractionStats,
    contract_pair,
    contract_path,
    dense_contract,
    max_abs_diff,
    plan_for,
    random_dense,
    random_sparse,
    to_dense,
)

# %% a plan records which labels are kept and which are summed
plan = plan_for("ABab,BCcd->ACabcd", (5, 6, 3, 3), (6, 4, 2, 2))
print("contracted:", plan.contracted, "output shape:", plan.output_shape)

a = random_sparse((5, 6, 3, 3), 40, seed=1)
b = random_sparse((6, 4, 2, 2), 30, seed=2)

stats = ContractionStats()
c = contract_pair(a, b, "ABab,BCcd->ACabcd", stats)
print(c, stats)

# %% the sparse result agrees with brute force
ref = dense_contract(to_dense(a), to_dense(b), plan)
print("max |diff| vs oracle:", max_abs_diff(to_dense(c), ref))

# a dense partner gives a dense result
d = random_dense((6, 4, 2, 2), seed=3)
cd = contract_pair(a, d, "ABab,BCcd->ACabcd")
print(type(cd).__name__, cd.shape)
print("vs einsum:", np.abs(cd.array - np.einsum("ABab,BCcd->ACabcd", to_dense(a).array, d.array)).max())

# %% chains fold left to right; each spec starts from the previous output
m1 = random_sparse((4, 5), 8, seed=4)
m2 = random_sparse((5, 6), 10, seed=5)
m3 = random_sparse((6, 3), 6, seed=6)
chain = contract_path([m1, m2, m3], ["ab,bc->ac", "ac,cd->ad"])
dense_chain = to_dense(m1).array @ to_dense(m2).array @ to_dense(m3).array
print("chain vs matmul:", np.abs(to_dense(chain).array - dense_chain).max())

# %% labels left out of the output are summed; an empty output is a scalar
print(contract_pair(m1, m2, "ab,bc->a").shape)
print(float(contract_pair(m1, m1, "ab,ab->").data[0]), (to_dense(m1).array ** 2).sum())
