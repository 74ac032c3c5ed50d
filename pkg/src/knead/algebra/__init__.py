from .matrix import Matrix, as_matrix, char_poly, char_poly_bareiss, companion, kron, rational_matrix
from .poly import IntPolynomial, Polynomial, RationalFunction, cyclotomic_product, poly_tensor
from .roots import smallest_positive_root, spectral_radius

__all__ = [
    "IntPolynomial", "Matrix", "Polynomial", "RationalFunction", "as_matrix", "char_poly",
    "char_poly_bareiss", "companion", "cyclotomic_product", "kron", "poly_tensor",
    "rational_matrix", "smallest_positive_root", "spectral_radius",
]
