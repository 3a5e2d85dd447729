# pycycles enums


class DetrendMethod(object):
    """DetrendMethod.

    How the trend component of a series is estimated.

    Attributes:
        SPLINE (str): cubic smoothing spline with a stiffness cutoff

        FRIEDMAN (str): variable-span local linear supersmoother

    """

    SPLINE = 'spline'
    FRIEDMAN = 'friedman'


class ModelVariant(object):
    """ModelVariant.

    The deterministic terms of a stationarity test regression.

    Attributes:
        NODRIFT_NOTREND (str): no constant and no trend (the base model)

        DRIFT (str): a constant

        DRIFT_TREND (str): a constant and a linear trend

    """

    NODRIFT_NOTREND = 'nodrift_notrend'
    DRIFT = 'drift'
    DRIFT_TREND = 'drift_trend'


class PKind(object):
    """PKind.

    How a p-value is known.

    Attributes:
        EXACT (str): the value itself

        LESS_THAN (str): the p-value is below the value (table edge)

        GREATER_THAN (str): the p-value is above the value (table edge)

    """

    EXACT = 'exact'
    LESS_THAN = 'less_than'
    GREATER_THAN = 'greater_than'


class DenoiseMethod(object):
    """DenoiseMethod.

    How the pipeline strips noise from a detrended series.

    Attributes:
        EMD (str): remove the first intrinsic mode function

        SSA (str): remove the low-eigenvalue tail of the SSA spectrum

        NONE (str): keep the detrended series as it is

    """

    EMD = 'emd'
    SSA = 'ssa'
    NONE = 'none'


class Component(object):
    """Component.

    A part of an additive decomposition.

    Attributes:
        TREND (str): the slowly varying trend

        CYCLE (str): the cyclical component

        NOISE (str): the noise component

    """

    TREND = 'trend'
    CYCLE = 'cycle'
    NOISE = 'noise'


__all__ = [
    'DetrendMethod',
    'ModelVariant',
    'PKind',
    'DenoiseMethod',
    'Component',
]
