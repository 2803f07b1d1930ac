"""Graded commutative algebra over F_p."""
