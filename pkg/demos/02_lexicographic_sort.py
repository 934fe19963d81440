"""Column-by-column lexicographic sort with a domains array."""
# %%
import numpy as np

from ftt.lexsort import constrained_argsort, domains_from_sorted, lex_argsort, tuple_key, uniques

rows = np.array([[1, 2, 0], [0, 1, 1], [1, 0, 2], [0, 1, 0], [1, 2, 0]])

# %% sort the first column; its value changes become domain boundaries
perm = constrained_argsort(rows[:, 0], [0, len(rows)])
col0 = rows[perm, 0]
domains = domains_from_sorted(col0, [0, len(rows)])
print(col0, domains)  # [0 0 1 1 1] [0 2 5]

# the second column is only sorted inside [0, 2) and [2, 5)
step = constrained_argsort(rows[perm, 1], domains)
perm = perm[step]
print(rows[perm])

# %% lex_argsort runs every column and stops once all domains are singletons
perm, domains = lex_argsort(rows)
ordered = rows[perm]
print(ordered)
print("runs of equal rows:", domains)  # the duplicate [1, 2, 0] shares a run
print("first of each run:", uniques(ordered))

# the pure-Python merge/insertion path gives the same permutation
assert np.array_equal(lex_argsort(rows, method="hybrid")[0], perm)

# %% tuples as integers: leftmost entry most significant
print(tuple_key((1, 2, 3), (10, 10, 10)))  # 123
print(tuple_key((2, 3, 1), (3, 4, 2)))  # 2*8 + 3*2 + 1 = 23
