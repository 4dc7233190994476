"""Weighted fractional generalized cumulative residual inaccuracy toolkit."""
