"""Nearly orthogonal vector sets over prime fields.

Library + CLI for building k-nearly orthogonal sets via a randomized
tensor-product construction, verifying them exactly (clique search over
bitset adjacency), and checking the structural and spectral facts the
construction rests on at small scale.
"""

from nearortho.ff import FpVector, PrimeModulus, inner_product, is_self_orthogonal, normalize_leading
from nearortho.tensor import ProductBox, TensorFactorization, tensor_many, tensor_pair

__version__ = "0.1.0"

__all__ = [
    "FpVector",
    "PrimeModulus",
    "ProductBox",
    "TensorFactorization",
    "inner_product",
    "is_self_orthogonal",
    "normalize_leading",
    "tensor_many",
    "tensor_pair",
    "__version__",
]
