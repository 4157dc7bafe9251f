"""Compare the compiled and pure-Python kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Each row
times one kernel on a representative input and checks that both backends
return the same numbers. The last row times whole optimizer runs, with the
package's backend switched by monkeypatching ``spherevol.kernels``.
"""
import argparse
import timeit

import numpy as np

from spherevol import kernels, optimizer, polytope
from spherevol.constructions import cyclic_trig_points, random_inscribed


def _cases(rng):
    c69 = cyclic_trig_points(6, 9)
    pts = random_inscribed(4, 8, rng).vertices.copy()
    simp, _ = polytope.triangulate_facets(pts, polytope.hull_facets(pts))
    return {
        "enumerate_facets C_6(9)": lambda k: k.enumerate_facets(c69, 1e-9)[1],
        "enumerate_facets random (4,8)": lambda k: k.enumerate_facets(pts, 1e-9)[1],
        "simplex_dets random (4,8)": lambda k: k.simplex_dets(pts, simp),
        "vertex_forces random (4,8)": lambda k: k.vertex_forces(pts, simp),
        "sweep random (4,8)": lambda k: (lambda q: (k.sweep(q, simp, 0.5), q)[1])(pts.copy()),
    }


def _ascend_with(module, d, n, starts):
    saved = {name: getattr(kernels, name) for name in ("enumerate_facets", "simplex_dets", "sweep")}
    try:
        for name in saved:
            setattr(kernels, name, getattr(module, name))
        return optimizer.ascend(optimizer.OptimizerConfig(d, n, starts=starts, seed=0)).best_volume
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--starts", type=int, default=10)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; timing the Python backend only")
    rng = np.random.default_rng(0)
    names = list(backends)
    print(f"{'kernel':34s}" + "".join(f"{n + ' [ms]':>16s}" for n in names) + f"{'speedup':>10s}  agree")
    for label, fn in _cases(rng).items():
        times, outs = [], []
        for name in names:
            mod = backends[name]
            number = 20
            t = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            times.append(t * 1e3)
            outs.append(np.asarray(fn(mod)))
        agree = all(np.allclose(o, outs[0], atol=1e-12) for o in outs[1:])
        speed = times[0] / times[-1] if len(times) > 1 else 1.0
        print(f"{label:34s}" + "".join(f"{t:16.4f}" for t in times) + f"{speed:10.1f}  {agree}")
    for d, n in [(3, 6), (4, 7)]:
        times, vols = [], []
        for name in names:
            t = timeit.default_timer()
            vols.append(_ascend_with(backends[name], d, n, args.starts))
            times.append((timeit.default_timer() - t) * 1e3)
        speed = times[0] / times[-1] if len(times) > 1 else 1.0
        agree = all(abs(v - vols[0]) <= 1e-9 for v in vols)
        print(f"{f'ascend ({d},{n}) x{args.starts} starts':34s}" + "".join(f"{t:16.1f}" for t in times)
              + f"{speed:10.1f}  {agree}")


if __name__ == "__main__":
    main()
