"""Building sparse tensors, canonical order and round trips to dense."""
# %%
import numpy as np

from ftt import DenseTensor, canonicalize, from_dense, new_sparse, sparsity, to_dense

# %% entries may arrive in any order and may repeat
t = new_sparse((3, 4), [[2, 1], [0, 3], [2, 1], [1, 0]], [1.0, -2.0, 0.5, 4.0])
print(t, t.canonical)

# canonical form: rows strictly increasing, repeats summed
c = canonicalize(t)
print(c.indices.tolist())
print(c.data.tolist())  # [-2.0, 4.0, 1.5]
print("sparsity", sparsity(c))  # 3 / 12

# %% dense round trip
d = to_dense(c)
print(d.array)
assert from_dense(d) == c

# small values can be dropped on the way in
noisy = DenseTensor((2, 2), [1e-14, 1.0, 0.0, -3.0])
print(from_dense(noisy, tol=1e-12).indices.tolist())  # [[0, 1], [1, 1]]

# %% arrays are read only, so a tensor can be shared freely
try:
    c.data[0] = 0.0
except ValueError as exc:
    print("read only:", exc)

print(np.array_equal(to_dense(c).array, d.array))
