"""Construction, verification and search for solutions of the quadratic matrix
system ``S = S^T, S*1 = 0, SJ = 0, S⊙S + S^2 = θS + D``."""

__version__ = "0.1.0"
