"""How cost falls with sparsity: work counter and wall time."""
# %%
from ftt.bench import ExperimentConfig, crossover, fit_slope, run_experiment, sparsity_grid

# %% matrix product, both operands at the same sparsity
grid = sparsity_grid(0.3, 0.003, 7)
rows = run_experiment(ExperimentConfig("matmul", grid, shape_a=(128, 128), shape_b=(128, 128)))
for r in rows:
    print(f"{r['sparsity']:.4f}  mults={r['mult_count']:>8}  t={r['time_sparse_s']:.2e}s")
# expected matches scale as p^2 * N^3
print("mult slope (both sparse):", round(fit_slope(rows, y="mult_count"), 3))

# %% hold one side dense and the work is linear in the other side's sparsity
rows = run_experiment(
    ExperimentConfig("matmul", grid, shape_a=(128, 128), shape_b=(128, 128), sweep_one_side=True)
)
print("mult slope (one side):", round(fit_slope(rows, y="mult_count"), 3))

# %% MPO site contraction with a dense control timed once per shape
cfg = ExperimentConfig(
    "mpo", sparsity_grid(0.1, 1e-4, 9), shape_a=(12,) * 4, shape_b=(12,) * 4,
    include_dense_control=True,
)
rows = run_experiment(cfg)
print("time slope:", round(fit_slope(rows), 3))
print("dense control:", f"{rows[0]['time_dense_s']:.2e}s", "crossover:", crossover(rows))
