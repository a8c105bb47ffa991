"""monocat: monomorphism categories of finite-dimensional algebras, computed exactly over F_p."""

from .fp import Mat, rref, solve_linear, kernel_basis, image_basis

__all__ = ["Mat", "rref", "solve_linear", "kernel_basis", "image_basis"]
