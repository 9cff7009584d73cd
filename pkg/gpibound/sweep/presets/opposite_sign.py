from gpibound.sweep.plan import Sweep
from gpibound.sweep.presets.grids import NEGATIVE_EXPONENTS, RHO_VALUES, SIGMA_VALUES


class OppositeSignSweep(Sweep):
    alpha1_values = NEGATIVE_EXPONENTS
    alpha2_values = (0.5, 1.0, 2.0, 3.0, 4.5)
    rho_values = RHO_VALUES
    sigma1_values = SIGMA_VALUES
    sigma2_values = SIGMA_VALUES
