try:
    from ._bezjet import evaluate, h_values, poly_derivatives, rational_derivatives
except ImportError:  # build-tree layout: extension sits next to the package
    from _bezjet import evaluate, h_values, poly_derivatives, rational_derivatives

__all__ = ["evaluate", "h_values", "poly_derivatives", "rational_derivatives"]
