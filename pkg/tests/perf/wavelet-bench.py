#!/usr/bin/env python3

import pyperf
import pycycles

stream = pycycles.SeededStream(0)
x = pycycles.gen_sum_of_tones(51, [(11, 1.0, 0.0)], 0.3, stream.child(0))
y = pycycles.gen_sum_of_tones(51, [(11, 1.0, 1.0)], 0.3, stream.child(1))


def wavelet_bench(loops):
    range_it = range(loops)

    t0 = pyperf.perf_counter()

    for loops in range_it:
        sx = pycycles.cwt_morlet(x).with_significance()
        sy = pycycles.cwt_morlet(y).with_significance()
        pycycles.cross_wavelet(sx, sy)
        pycycles.coherence(sx, sy)

    return pyperf.perf_counter() - t0


def surrogate_bench(loops):
    range_it = range(loops)
    sx = pycycles.cwt_morlet(x)
    sy = pycycles.cwt_morlet(y)

    t0 = pyperf.perf_counter()

    for loops in range_it:
        pycycles.coherence_significance(sx, sy, n_surrogates=20)

    return pyperf.perf_counter() - t0


runner = pyperf.Runner()
runner.bench_time_func('wavelet chain', wavelet_bench)
runner.bench_time_func('coherence surrogates', surrogate_bench)
