"""Scalar-in, scalar-out fully connected network evaluated in jet arithmetic.

One forward pass at eta yields f and its first three eta-derivatives.
Hidden layers use tanh; the output layer is purely affine so the network can
represent the linear far-field growth of the Blasius function.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .jets import Jet3, add, constant, scale, seed, tanh_jet

CHECKPOINT_MAGIC = "blasius-pinn-checkpoint v1"


@dataclass(frozen=True)
class NetworkConfig:
    """Architecture and PRNG seed: `depth` hidden layers of `width` neurons."""

    depth: int = 2
    width: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.width < 1:
            raise ValueError("width must be >= 1")

    def layer_shapes(self) -> list[tuple[int, int]]:
        """(fan_in, fan_out) per affine layer, input dim 1 to output dim 1."""
        dims = [1] + [self.width] * self.depth + [1]
        return list(zip(dims[:-1], dims[1:]))

    def param_count(self) -> int:
        return sum(fi * fo + fo for fi, fo in self.layer_shapes())


@dataclass
class ParamVector:
    """Flat parameter storage plus per-layer (fan_in, fan_out) metadata.

    Layout per layer: weight matrix row-major (fan_out x fan_in), then bias.
    """

    values: np.ndarray
    shapes: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        expected = sum(fi * fo + fo for fi, fo in self.shapes)
        if self.values.shape != (expected,):
            raise ValueError(
                f"parameter vector has {self.values.shape} entries, shapes require {expected}"
            )

    def __len__(self) -> int:
        return self.values.size

    def layers(self):
        """Yield (W, b) views into the flat vector; W is (fan_out, fan_in)."""
        off = 0
        for fi, fo in self.shapes:
            w = self.values[off : off + fi * fo].reshape(fo, fi)
            off += fi * fo
            b = self.values[off : off + fo]
            off += fo
            yield w, b

    def copy(self) -> "ParamVector":
        return ParamVector(self.values.copy(), list(self.shapes))


def init_params(cfg: NetworkConfig) -> ParamVector:
    """Glorot-uniform weights, zero biases; bit-reproducible for a fixed seed."""
    rng = np.random.default_rng(cfg.seed)
    chunks = []
    for fi, fo in cfg.layer_shapes():
        lim = np.sqrt(6.0 / (fi + fo))
        chunks.append(rng.uniform(-lim, lim, size=fi * fo))
        chunks.append(np.zeros(fo))
    return ParamVector(np.concatenate(chunks), cfg.layer_shapes())


def forward_jet(p: ParamVector, eta: float) -> Jet3:
    """Network output jet at a single eta, computed in scalar jet arithmetic."""
    acts = [seed(float(eta))]
    n_layers = len(p.shapes)
    for li, (w, b) in enumerate(p.layers()):
        nxt = []
        for j in range(w.shape[0]):
            z = constant(float(b[j]))
            for i, a in enumerate(acts):
                z = add(z, scale(a, float(w[j, i])))
            if li < n_layers - 1:
                z = tanh_jet(z)
            nxt.append(z)
        acts = nxt
    return acts[0]


def forward_value(p: ParamVector, eta: float) -> float:
    """Plain scalar forward pass; equals the value channel of forward_jet.

    Accumulates each neuron as bias + sum of weighted inputs in ascending
    input order, matching the jet path term for term, so the two agree to
    the last bit.
    """
    import math

    a = [float(eta)]
    n_layers = len(p.shapes)
    for li, (w, b) in enumerate(p.layers()):
        nxt = []
        for j in range(w.shape[0]):
            z = float(b[j])
            for i, ai in enumerate(a):
                z += float(w[j, i]) * ai
            nxt.append(math.tanh(z) if li < n_layers - 1 else z)
        a = nxt
    return a[0]


def forward_jet_batch(p: ParamVector, etas: np.ndarray, want_cache: bool = False):
    """Vectorized jet forward pass over many eta values.

    Returns y of shape (4, n): rows are (f, f', f'', f''').  With
    want_cache=True also returns the intermediates needed by the adjoint
    pass in grad.loss_and_grad.
    """
    etas = np.asarray(etas, dtype=np.float64).ravel()
    n = etas.size
    a = np.zeros((4, n, 1))
    a[0, :, 0] = etas
    a[1, :, 0] = 1.0
    layers = list(p.layers())
    cache = [] if want_cache else None
    for li, (w, b) in enumerate(layers):
        fo = w.shape[0]
        # affine: all four channels share the weights; bias enters the value
        # channel only (it is a constant jet)
        z = (a.reshape(4 * n, -1) @ w.T).reshape(4, n, fo)
        z[0] += b
        if li < len(layers) - 1:
            zf = np.ascontiguousarray(z.reshape(4, n * fo))
            outf, t = kernels.tanh_jet_forward(zf)
            if want_cache:
                cache.append((a, zf, t))
            a = outf.reshape(4, n, fo)
        else:
            if want_cache:
                cache.append((a, None, None))
            a = z
    y = a[:, :, 0]
    if want_cache:
        return y, cache
    return y


def backward_jet_batch(p: ParamVector, cache, ybar: np.ndarray) -> np.ndarray:
    """Adjoint of forward_jet_batch: gradient of sum(ybar * y) w.r.t. params."""
    n = ybar.shape[1]
    layers = list(p.layers())
    grads = [None] * len(layers)
    zbar = ybar.reshape(4, n, 1)
    for li in range(len(layers) - 1, -1, -1):
        w, _ = layers[li]
        a_in, zf, t = cache[li]
        fo = w.shape[0]
        if li < len(layers) - 1:
            zbar = kernels.tanh_jet_backward(t, zf, np.ascontiguousarray(zbar.reshape(4, n * fo)))
            zbar = zbar.reshape(4, n, fo)
        zb2 = zbar.reshape(4 * n, fo)
        ai2 = a_in.reshape(4 * n, -1)
        wbar = zb2.T @ ai2
        bbar = zbar[0].sum(axis=0)
        grads[li] = (wbar, bbar)
        if li > 0:
            zbar = (zb2 @ w).reshape(4, n, -1)
    flat = np.empty(len(p))
    off = 0
    for wbar, bbar in grads:
        flat[off : off + wbar.size] = wbar.ravel()
        off += wbar.size
        flat[off : off + bbar.size] = bbar
        off += bbar.size
    return flat


def save_checkpoint(path, cfg: NetworkConfig, p: ParamVector) -> None:
    """Text checkpoint; 17 significant digits round-trips float64 exactly."""
    lines = [CHECKPOINT_MAGIC, f"{cfg.depth} {cfg.width} {cfg.seed}"]
    lines.extend(f"{x:.17g}" for x in p.values)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_checkpoint(path) -> tuple[NetworkConfig, ParamVector]:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != CHECKPOINT_MAGIC:
        raise ValueError(f"{path}: not a {CHECKPOINT_MAGIC} file")
    depth, width, seed_ = (int(tok) for tok in lines[1].split())
    cfg = NetworkConfig(depth=depth, width=width, seed=seed_)
    values = np.array([float(s) for s in lines[2:] if s.strip()])
    if values.size != cfg.param_count():
        raise ValueError(
            f"{path}: expected {cfg.param_count()} parameters, found {values.size}"
        )
    return cfg, ParamVector(values, cfg.layer_shapes())
