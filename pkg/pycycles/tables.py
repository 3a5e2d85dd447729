# critical values for the stationarity tests -- regenerate with gen_tables.py
#
# Monte Carlo percentiles, 100000 replications per size.

PROBABILITIES = (0.01, 0.025, 0.05, 0.1)

ADF = {
    'nodrift_notrend': {
        'n': (25, 50, 100, 250, 500),
        'critical': (
            (-3.538, -3.135, -2.828, -2.503),
            (-3.461, -3.123, -2.838, -2.521),
            (-3.398, -3.079, -2.820, -2.517),
            (-3.400, -3.084, -2.822, -2.529),
            (-3.407, -3.093, -2.837, -2.547),
        ),
    },
    'drift': {
        'n': (25, 50, 100, 250, 500),
        'critical': (
            (-3.718, -3.284, -2.946, -2.584),
            (-3.561, -3.194, -2.895, -2.571),
            (-3.465, -3.134, -2.850, -2.550),
            (-3.425, -3.117, -2.851, -2.555),
            (-3.427, -3.131, -2.860, -2.565),
        ),
    },
    'drift_trend': {
        'n': (25, 50, 100, 250, 500),
        'critical': (
            (-4.335, -3.892, -3.535, -3.163),
            (-4.128, -3.761, -3.460, -3.146),
            (-4.000, -3.680, -3.408, -3.115),
            (-3.958, -3.652, -3.396, -3.109),
            (-3.972, -3.658, -3.409, -3.124),
        ),
    },
}

KPSS = {
    'level': {
        'n': (25, 50, 100, 250, 500),
        'critical': (
            (0.565, 0.489, 0.422, 0.344),
            (0.612, 0.516, 0.434, 0.346),
            (0.650, 0.534, 0.443, 0.346),
            (0.687, 0.553, 0.449, 0.345),
            (0.726, 0.573, 0.458, 0.345),
        ),
    },
    'trend': {
        'n': (25, 50, 100, 250, 500),
        'critical': (
            (0.171, 0.155, 0.141, 0.124),
            (0.182, 0.159, 0.141, 0.120),
            (0.192, 0.165, 0.142, 0.119),
            (0.206, 0.171, 0.145, 0.119),
            (0.211, 0.173, 0.146, 0.119),
        ),
    },
}
