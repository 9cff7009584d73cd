from gpibound.sweep.plan import Sweep
from gpibound.sweep.presets.grids import NEGATIVE_EXPONENTS, POSITIVE_EXPONENTS, RHO_VALUES, SIGMA_VALUES


class FullSweep(Sweep):
    alpha1_values = NEGATIVE_EXPONENTS + POSITIVE_EXPONENTS
    alpha2_values = NEGATIVE_EXPONENTS + POSITIVE_EXPONENTS
    rho_values = RHO_VALUES
    sigma1_values = SIGMA_VALUES
    sigma2_values = SIGMA_VALUES
