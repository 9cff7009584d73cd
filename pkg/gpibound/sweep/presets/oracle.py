from gpibound.sweep.plan import OracleChoice, Sweep


class OracleSweep(Sweep):
    r"""
    30 points checked against both oracles. Pairs with an exponent at or below
    -1/2 are quadrature-only since Monte Carlo refuses them.
    """
    pair_list = [(-0.9, -0.5), (-0.9, 1.0), (-0.4, 2.0), (1.0, 1.0), (2.0, 3.0), (0.5, 1.5)]
    alpha1_values = sorted({a for a, _ in pair_list})
    alpha2_values = sorted({b for _, b in pair_list})
    rho_values = (-0.75, -0.25, 0.25, 0.5, 0.95)
    oracle = OracleChoice.BOTH

    def accept_pair(self, alpha1, alpha2):
        # overridden exponent grids take the full product
        if self.config.alpha1_values != tuple(self.alpha1_values) \
                or self.config.alpha2_values != tuple(self.alpha2_values):
            return True
        return (alpha1, alpha2) in self.pair_list
