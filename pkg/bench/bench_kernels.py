"""Benchmark: compiled tanh-jet kernels vs the pure-numpy fallback.

Times the elementwise forward/backward kernels in isolation and a full
loss-plus-gradient evaluation with each backend.  Run as:

    python3 bench/bench_kernels.py
"""

import time

import numpy as np

from blasius_pinn import kernels
from blasius_pinn.grad import loss_and_grad
from blasius_pinn.loss import CollocationGrid
from blasius_pinn.network import NetworkConfig, init_params


def time_fn(fn, repeats: int = 7) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_elementwise(n: int) -> dict:
    rng = np.random.default_rng(0)
    z = np.ascontiguousarray(rng.normal(size=(4, n)))
    abar = np.ascontiguousarray(rng.normal(size=(4, n)))
    out = {}
    for name in available_backends():
        kernels.use_backend(name)
        _, t = kernels.tanh_jet_forward(z)
        out[name] = (
            time_fn(lambda: kernels.tanh_jet_forward(z)),
            time_fn(lambda: kernels.tanh_jet_backward(t, z, abar)),
        )
    return out


def bench_loss_grad() -> dict:
    p = init_params(NetworkConfig(depth=2, width=100, seed=0))
    grid = CollocationGrid(0.0, 8.0, 100)
    out = {}
    for name in available_backends():
        kernels.use_backend(name)
        out[name] = time_fn(lambda: loss_and_grad(p, grid), repeats=20)
    return out


def available_backends():
    names = ["numpy"]
    try:
        from blasius_pinn.kernels import _corejet  # noqa: F401
        names.append("cython")
    except ImportError:
        pass
    return names


def main():
    original = kernels.backend_name()
    try:
        print(f"default backend: {original}")
        print()
        print(f"{'n':>9}  {'backend':>7}  {'forward':>10}  {'backward':>10}")
        for n in (1_000, 10_000, 100_000, 1_000_000):
            res = bench_elementwise(n)
            for name, (fwd, bwd) in res.items():
                print(f"{n:>9}  {name:>7}  {fwd * 1e6:>8.1f}us  {bwd * 1e6:>8.1f}us")
            if "cython" in res:
                sf = res["numpy"][0] / res["cython"][0]
                sb = res["numpy"][1] / res["cython"][1]
                print(f"{'':>9}  {'ratio':>7}  {sf:>9.2f}x  {sb:>9.2f}x")
        print()
        print("full loss+gradient (depth 2, width 100, 100 collocation points):")
        res = bench_loss_grad()
        for name, dt in res.items():
            print(f"  {name:>7}: {dt * 1e3:.3f} ms")
        if "cython" in res:
            print(f"  speedup: {res['numpy'] / res['cython']:.2f}x")
    finally:
        kernels.use_backend(original)


if __name__ == "__main__":
    main()
