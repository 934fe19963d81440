"""ftt: partial traces (einsum-style contractions) of sparse COO tensors."""

from ftt.canonical import canonicalize, is_partially_ordered, is_well_ordered
from ftt.contract import (
    ContractionStats,
    contract_pair,
    contract_path,
    contract_sparse_dense,
    contract_sparse_sparse,
)
from ftt.errors import FttError
from ftt.oracle import dense_contract, max_abs_diff
from ftt.plan import ContractionPlan, build_plan, parse_subscripts, plan_for
from ftt.randgen import random_dense, random_sparse, random_sparse_at
from ftt.tensor import (
    DenseTensor,
    SparseTensor,
    flatten_groups,
    from_dense,
    new_sparse,
    permute_axes,
    sparsity,
    to_dense,
)
from ftt.textio import read_sparse, write_sparse

__version__ = "0.1.0"

__all__ = [
    "ContractionPlan",
    "ContractionStats",
    "DenseTensor",
    "FttError",
    "SparseTensor",
    "build_plan",
    "canonicalize",
    "contract_pair",
    "contract_path",
    "contract_sparse_dense",
    "contract_sparse_sparse",
    "dense_contract",
    "flatten_groups",
    "from_dense",
    "is_partially_ordered",
    "is_well_ordered",
    "max_abs_diff",
    "new_sparse",
    "parse_subscripts",
    "permute_axes",
    "plan_for",
    "random_dense",
    "random_sparse",
    "random_sparse_at",
    "read_sparse",
    "sparsity",
    "to_dense",
    "write_sparse",
]
