import math

from gpibound.bounds import BoundReport, check_point
from gpibound.errors import GPIError, InfiniteVarianceError, QuadratureError
from gpibound.moments import product_moment, product_moment_rho_one
from gpibound.oracles import McConfig, QuadratureConfig, derive_seed, mc_product_moment, quad_product_moment
from gpibound.sweep.report import row_from_context
from gpibound.utils import retry_fn


class Callback:

    def requires(self):
        return []

    def produces(self):
        return []

    def transform(self, context):
        # default context
        # {index, spec, flags}
        raise NotImplementedError


def validate_callbacks(callbacks, initial_context_keys):
    context_keys = set(initial_context_keys)
    for callback in callbacks:
        for key in callback.requires():
            assert key in context_keys, f"{key} not found in context"
        for key in callback.produces():
            context_keys.add(key)


class CheckBounds(Callback):

    def __init__(self, tolerance):
        r"""
        Examples::
            >>> cb = CheckBounds(1e-9)
            >>> context = {'spec': MomentSpec(1, 1, 1, 1, 0.5), 'flags': []}
            >>> cb.transform(context)
            >>> assert context['report'].satisfied
        """
        self.tolerance = tolerance

    def requires(self):
        return ['spec', 'flags']

    def produces(self):
        return ['report']

    def transform(self, context):
        report: BoundReport = check_point(context['spec'], self.tolerance)
        flags = context['flags']
        if report.error is not None:
            flags.append("error:" + report.error.split(":")[0])
        elif report.vacuous:
            flags.append("vacuous_lower")
        if report.bound is not None and getattr(report.bound, "swapped", False):
            flags.append("swapped")
        if math.isinf(report.gap):
            flags.append("infinite_gap")
        if not report.extends:
            flags.append("unsupported")
        elif report.error is None and not report.satisfied:
            flags.append("violation")
        context['report'] = report


class ClosedForm(Callback):

    def requires(self):
        return ['spec', 'flags']

    def produces(self):
        return ['closed_form']

    def transform(self, context):
        spec = context['spec']
        try:
            if spec.degenerate:
                value = product_moment_rho_one(spec)
            else:
                value = product_moment(spec)
        except GPIError:
            value = None
        context['closed_form'] = value


class QuadratureOracle(Callback):

    def __init__(self, cfg=QuadratureConfig(), max_retry=2):
        self.cfg = cfg
        self.max_retry = max_retry

    def requires(self):
        return ['spec', 'flags']

    def produces(self):
        return ['quadrature']

    def transform(self, context):
        spec = context['spec']
        context['quadrature'] = None
        if spec.degenerate:
            context['flags'].append("quadrature_skipped")
            return
        try:
            estimate, attempt = retry_fn(
                lambda i: quad_product_moment(spec, self.cfg.relaxed(i)),
                self.max_retry, (QuadratureError,))
        except QuadratureError:
            context['flags'].append("quadrature_failed")
            return
        if attempt > 0:
            context['flags'].append("quadrature_relaxed")
        context['quadrature'] = estimate


class MonteCarloOracle(Callback):

    def __init__(self, n_samples, master_seed):
        r"""
        Examples::
            >>> cb = MonteCarloOracle(10 ** 5, master_seed=7)
            >>> context = {'index': 3, 'spec': MomentSpec(1, 1, 1, 1, 0.5), 'flags': []}
            >>> cb.transform(context)
            >>> context['monte_carlo'].method
            <OracleMethod.MONTE_CARLO: 'MonteCarlo'>
        """
        self.n_samples = n_samples
        self.master_seed = master_seed

    def requires(self):
        return ['index', 'spec', 'flags']

    def produces(self):
        return ['monte_carlo']

    def transform(self, context):
        cfg = McConfig(self.n_samples, derive_seed(self.master_seed, context['index']))
        try:
            context['monte_carlo'] = mc_product_moment(context['spec'], cfg)
        except InfiniteVarianceError:
            context['monte_carlo'] = None
            context['flags'].append("mc_refused")


class CompareOracles(Callback):
    r"""
    Quadrature must agree with the closed form within max(rel_tol * value,
    3 * error estimate); Monte Carlo within ``mc_sigmas`` standard errors.
    """

    def __init__(self, rel_tol=1e-6, mc_sigmas=4.0):
        self.rel_tol = rel_tol
        self.mc_sigmas = mc_sigmas

    def requires(self):
        return ['closed_form', 'flags']

    def produces(self):
        return ['deviations']

    def transform(self, context):
        ref = context['closed_form']
        deviations = {}
        quad = context.get('quadrature')
        if quad is not None and ref is not None:
            diff = abs(quad.value - ref)
            deviations['quadrature'] = diff / abs(ref)
            if diff > max(self.rel_tol * abs(ref), 3 * quad.error_estimate):
                context['flags'].append("quadrature_mismatch")
        mc = context.get('monte_carlo')
        if mc is not None and ref is not None:
            z = (mc.value - ref) / mc.error_estimate if mc.error_estimate > 0 else 0.0
            deviations['monte_carlo'] = z
            if abs(z) > self.mc_sigmas:
                context['flags'].append("mc_outlier")
        context['deviations'] = deviations


class BuildRow(Callback):

    def requires(self):
        return ['index', 'spec', 'report', 'flags']

    def produces(self):
        return ['row']

    def transform(self, context):
        context['row'] = row_from_context(context)
