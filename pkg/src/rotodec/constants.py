"""Physical constants (SI, CODATA 2018)."""

# Reduced Planck constant [J s].  h = 6.62607015e-34 J s exactly; hbar = h / (2 pi).
HBAR = 1.054571817e-34

# Boltzmann constant [J / K], exact in the 2019 SI.
K_B = 1.380649e-23

# Vacuum magnetic permeability [N / A^2] (measured, CODATA 2018).
MU_0 = 1.25663706212e-6
