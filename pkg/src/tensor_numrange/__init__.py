"""Einstein-product tensor algebra, tensor spectra, Moore-Penrose inverses and
numerical ranges of even-order square tensors."""
from .errors import (
    ConvergenceError,
    NotHermitianError,
    NotSquareError,
    NumericalError,
    ShapeError,
    SingularTensorError,
    TensorError,
)
from .io import parse_tensor, read_tensor, serialize_tensor, write_tensor
from .numrange import (
    Boundary,
    boundary,
    classify_unitary,
    contains_point,
    locate_point,
    membership_margin,
    numerical_radius,
    ranges_intersect,
    separation_gap,
    support_function,
    support_values,
    theta_grid,
)
from .pinv import (
    PenroseResiduals,
    classify_structure,
    is_ep,
    moore_penrose,
    orthonormal_sum,
    penrose_residuals,
)
from .spectral import (
    determinant,
    eigenvalues,
    hermitian_eigensystem,
    inverse,
    polar_decompose,
    rank,
    singular_values,
    spectral_norm,
    spectral_radius,
    svd,
)
from .tensor import (
    Tensor,
    build_tensor,
    conj_transpose,
    direct_sum,
    einstein_product,
    frobenius_norm,
    hermitian_part,
    identity,
    inner_product,
    outer_product,
    pi_transpose,
    skew_hermitian_part,
    transpose,
    zeros,
)
from .unfold import fold, linear_index, multi_index, unfold

__version__ = "0.1.0"
