NEGATIVE_EXPONENTS = (-0.9, -0.5, -0.1)
POSITIVE_EXPONENTS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5)
RHO_VALUES = (0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 0.95, -0.95)
SIGMA_VALUES = (0.5, 1.0, 2.0)
