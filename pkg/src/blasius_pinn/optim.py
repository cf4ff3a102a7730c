"""Optimizers: Adam with exponential learning-rate decay, then L-BFGS.

Training runs a full-batch Adam phase to get into a good basin and hands
off to L-BFGS (two-loop recursion, strong Wolfe line search) for the final
digits.  The collocation set is tiny, so everything is full batch.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .grad import DivergenceError, loss_and_grad
from .loss import BOUNDARY_DERIVATIVE, CollocationGrid, LossBreakdown
from .network import NetworkConfig, ParamVector, init_params


@dataclass(frozen=True)
class AdamConfig:
    base_lr: float = 1e-3
    decay: float = 0.96          # multiplicative lr decay per epoch
    decay_every: int = 100       # full-batch steps per epoch for the schedule
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    max_steps: int = 5000
    switch_tol: float = 1e-3     # hand off to L-BFGS below this loss

    def __post_init__(self):
        if not 0.0 < self.beta1 < 1.0:
            raise ValueError("beta1 must be in (0,1)")
        if not 0.0 < self.beta2 < 1.0:
            raise ValueError("beta2 must be in (0,1)")
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        if not 0.0 < self.decay <= 1.0:
            raise ValueError("decay must be in (0,1]")
        if self.decay_every < 1:
            raise ValueError("decay_every must be >= 1")

    def lr_at(self, step: int) -> float:
        """Learning rate applied at (1-based) step: base_lr * decay^epoch."""
        epoch = (step - 1) // self.decay_every
        return self.base_lr * self.decay ** epoch


@dataclass
class AdamState:
    x: np.ndarray
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def fresh(cls, x0: np.ndarray) -> "AdamState":
        return cls(x0.copy(), np.zeros_like(x0), np.zeros_like(x0), 0)


def adam_step(state: AdamState, grad: np.ndarray, cfg: AdamConfig) -> AdamState:
    """One Adam update with bias-corrected moment estimates."""
    if not np.all(np.isfinite(grad)):
        raise DivergenceError("non-finite gradient passed to adam_step", step=state.t + 1)
    t = state.t + 1
    m = cfg.beta1 * state.m + (1.0 - cfg.beta1) * grad
    v = cfg.beta2 * state.v + (1.0 - cfg.beta2) * grad * grad
    m_hat = m / (1.0 - cfg.beta1 ** t)
    v_hat = v / (1.0 - cfg.beta2 ** t)
    x = state.x - cfg.lr_at(t) * m_hat / (np.sqrt(v_hat) + cfg.eps)
    return AdamState(x, m, v, t)


@dataclass(frozen=True)
class LbfgsConfig:
    memory: int = 20
    max_iters: int = 2000
    grad_tol: float = 1e-9       # on the max-norm of the gradient
    c1: float = 1e-4             # sufficient decrease
    c2: float = 0.9              # curvature
    max_line_evals: int = 25

    def __post_init__(self):
        if self.memory < 1:
            raise ValueError("memory must be >= 1")
        if not 0.0 < self.c1 < self.c2 < 1.0:
            raise ValueError("need 0 < c1 < c2 < 1")


@dataclass
class LbfgsResult:
    x: np.ndarray
    fval: float
    history: list = field(default_factory=list)  # (iter, loss, grad_norm, step)
    status: str = "converged"
    n_evals: int = 0


def _cubic_min(a, fa, da, b, fb, db):
    """Minimizer of the cubic interpolant on [a, b]; NaN if degenerate."""
    d1 = da + db - 3.0 * (fa - fb) / (a - b)
    disc = d1 * d1 - da * db
    if disc < 0.0:
        return np.nan
    d2 = np.sqrt(disc) * np.sign(b - a)
    denom = db - da + 2.0 * d2
    if denom == 0.0:
        return np.nan
    return b - (b - a) * (db + d2 - d1) / denom


def _strong_wolfe(f_and_g, x, f0, g0, d, cfg: LbfgsConfig, alpha0: float = 1.0):
    """Line search satisfying the strong Wolfe conditions.

    Returns (ok, alpha, f, g, n_evals); on failure ok is False and
    (alpha, f, g) is the best point seen, never worse than the start.
    """
    dphi0 = float(g0 @ d)
    if dphi0 >= 0.0:
        return False, 0.0, f0, g0, 0

    def phi(alpha):
        f_a, g_a = f_and_g(x + alpha * d)
        return f_a, g_a, float(g_a @ d)

    evals = 0
    best = (0.0, f0, g0)

    def note(alpha, f_a, g_a):
        nonlocal best
        if f_a < best[1]:
            best = (alpha, f_a, g_a)

    def zoom(lo, f_lo, d_lo, hi, f_hi, d_hi):
        nonlocal evals
        for _ in range(cfg.max_line_evals):
            alpha = _cubic_min(lo, f_lo, d_lo, hi, f_hi, d_hi)
            width = abs(hi - lo)
            if not np.isfinite(alpha) or alpha <= min(lo, hi) + 0.1 * width or alpha >= max(lo, hi) - 0.1 * width:
                alpha = 0.5 * (lo + hi)
            f_a, g_a, d_a = phi(alpha)
            evals += 1
            note(alpha, f_a, g_a)
            if f_a > f0 + cfg.c1 * alpha * dphi0 or f_a >= f_lo:
                hi, f_hi, d_hi = alpha, f_a, d_a
            else:
                if abs(d_a) <= -cfg.c2 * dphi0:
                    return alpha, f_a, g_a
                if d_a * (hi - lo) >= 0.0:
                    hi, f_hi, d_hi = lo, f_lo, d_lo
                lo, f_lo, d_lo = alpha, f_a, d_a
            if width < 1e-16:
                break
        return None, None, None

    alpha_prev, f_prev, d_prev = 0.0, f0, dphi0
    alpha = alpha0
    for i in range(cfg.max_line_evals):
        f_a, g_a, d_a = phi(alpha)
        evals += 1
        note(alpha, f_a, g_a)
        if f_a > f0 + cfg.c1 * alpha * dphi0 or (i > 0 and f_a >= f_prev):
            a, fa, ga = zoom(alpha_prev, f_prev, d_prev, alpha, f_a, d_a)
            if a is not None:
                return True, a, fa, ga, evals
            break
        if abs(d_a) <= -cfg.c2 * dphi0:
            return True, alpha, f_a, g_a, evals
        if d_a >= 0.0:
            a, fa, ga = zoom(alpha, f_a, d_a, alpha_prev, f_prev, d_prev)
            if a is not None:
                return True, a, fa, ga, evals
            break
        alpha_prev, f_prev, d_prev = alpha, f_a, d_a
        alpha *= 2.0
    return False, best[0], best[1], best[2], evals


def lbfgs_minimize(f_and_grad, x0: np.ndarray, cfg: LbfgsConfig) -> LbfgsResult:
    """L-BFGS with two-loop recursion and strong Wolfe line search.

    The inverse-Hessian seed is the identity before the first curvature pair
    and gamma_k * I afterwards; pairs with s'y <= 0 are discarded.
    """
    x = np.asarray(x0, dtype=np.float64).copy()
    f, g = f_and_grad(x)
    n_evals = 1
    s_list: list[np.ndarray] = []
    y_list: list[np.ndarray] = []
    rho_list: list[float] = []
    history = []
    best_x, best_f = x.copy(), f
    status = "max_iters"
    for it in range(cfg.max_iters):
        gnorm = float(np.max(np.abs(g))) if g.size else 0.0
        if gnorm <= cfg.grad_tol:
            status = "converged"
            break
        # two-loop recursion
        q = g.copy()
        alphas = []
        for s, y, rho in zip(reversed(s_list), reversed(y_list), reversed(rho_list)):
            a = rho * (s @ q)
            alphas.append(a)
            q -= a * y
        if y_list:
            gamma = float((s_list[-1] @ y_list[-1]) / (y_list[-1] @ y_list[-1]))
            q *= gamma
        for s, y, rho, a in zip(s_list, y_list, rho_list, reversed(alphas)):
            b = rho * (y @ q)
            q += (a - b) * s
        d = -q
        ok, alpha, f_new, g_new, evals = _strong_wolfe(f_and_grad, x, f, g, d, cfg)
        n_evals += evals
        if not ok:
            # line search failed: keep the best point seen and stop
            if f_new < best_f:
                best_f, best_x = f_new, x + alpha * d
            status = "line_search_failed"
            break
        x_new = x + alpha * d
        s = x_new - x
        y = g_new - g
        sy = float(s @ y)
        if sy > 1e-10 * float(np.linalg.norm(s) * np.linalg.norm(y)):
            s_list.append(s)
            y_list.append(y)
            rho_list.append(1.0 / sy)
            if len(s_list) > cfg.memory:
                s_list.pop(0)
                y_list.pop(0)
                rho_list.pop(0)
        x, f, g = x_new, f_new, g_new
        if f < best_f:
            best_f, best_x = f, x.copy()
        history.append((it + 1, f, float(np.max(np.abs(g))), alpha))
        if not np.isfinite(f):
            raise DivergenceError("non-finite loss in L-BFGS", phase="lbfgs", step=it + 1)
    else:
        status = "max_iters"
    return LbfgsResult(best_x, best_f, history, status, n_evals)


@dataclass
class TrainingReport:
    seed: int
    adam_steps: int
    adam_curve: list            # total loss per Adam step
    lbfgs_history: list         # (iter, loss, grad_norm, step)
    lbfgs_status: str
    final: LossBreakdown
    best_loss: float
    wall_time_s: float


def train(
    cfg_net: NetworkConfig,
    cfg_adam: AdamConfig,
    cfg_lbfgs: LbfgsConfig,
    grid: CollocationGrid,
    pin: float | None = None,
    variant: str = BOUNDARY_DERIVATIVE,
) -> tuple[ParamVector, TrainingReport]:
    """Initialize, run Adam until max_steps or switch_tol, refine with L-BFGS.

    Returns the best parameters visited across both phases.
    """
    t_start = time.perf_counter()
    p = init_params(cfg_net)
    shapes = p.shapes

    def objective(x: np.ndarray):
        res = loss_and_grad(ParamVector(x, shapes), grid, pin=pin, variant=variant)
        return res.loss.total, res.grad

    state = AdamState.fresh(p.values)
    adam_curve: list[float] = []
    best_x, best_f = state.x.copy(), np.inf
    for step in range(cfg_adam.max_steps):
        try:
            f, g = objective(state.x)
        except DivergenceError as err:
            err.phase, err.step = "adam", step
            raise
        adam_curve.append(f)
        if f < best_f:
            best_f, best_x = f, state.x.copy()
        if f <= cfg_adam.switch_tol:
            break
        state = adam_step(state, g, cfg_adam)

    lbfgs = lbfgs_minimize(objective, best_x, cfg_lbfgs)
    if lbfgs.fval < best_f:
        best_f, best_x = lbfgs.fval, lbfgs.x

    p_best = ParamVector(best_x, shapes)
    from .loss import loss_total  # local import to avoid a cycle at module load

    final = loss_total(p_best, grid, pin=pin, variant=variant)
    report = TrainingReport(
        seed=cfg_net.seed,
        adam_steps=len(adam_curve),
        adam_curve=adam_curve,
        lbfgs_history=lbfgs.history,
        lbfgs_status=lbfgs.status,
        final=final,
        best_loss=best_f,
        wall_time_s=time.perf_counter() - t_start,
    )
    return p_best, report
