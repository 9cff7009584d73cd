from gpibound.sweep.plan import Sweep
from gpibound.sweep.presets.grids import NEGATIVE_EXPONENTS, POSITIVE_EXPONENTS, RHO_VALUES, SIGMA_VALUES


class SameSignSweep(Sweep):
    alpha1_values = NEGATIVE_EXPONENTS + POSITIVE_EXPONENTS
    alpha2_values = NEGATIVE_EXPONENTS + POSITIVE_EXPONENTS
    rho_values = RHO_VALUES
    sigma1_values = SIGMA_VALUES
    sigma2_values = SIGMA_VALUES

    def accept_pair(self, alpha1, alpha2):
        return (alpha1 < 0 and alpha2 < 0) or (alpha1 > 0 and alpha2 > 0)
