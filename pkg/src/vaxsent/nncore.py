"""Dense numeric kernel: activations, loss, RMSProp, gradient checking.

Arrays are plain numpy arrays. ``checked`` helpers reject non-finite
values; hot training loops skip the check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

CE_EPS = 1e-12


class NonFiniteError(FloatingPointError):
    pass


def checked(a, dtype=np.float64) -> np.ndarray:
    """Convert to a float array, refusing NaN or infinite entries."""
    arr = np.asarray(a, dtype=dtype)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("array contains NaN or Inf")
    return arr


def rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator; ``stream`` selects an independent substream."""
    return np.random.Generator(np.random.PCG64([seed, *stream]))


def sigmoid(x):
    x = np.asarray(x)
    # split by sign so exp never overflows
    out = np.empty_like(x, dtype=np.result_type(x, np.float32))
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out if out.ndim else out[()]


def tanh_act(x):
    return np.tanh(x)


def softmax(v, axis: int = -1):
    v = np.asarray(v)
    z = v - np.max(v, axis=axis, keepdims=True)
    e = np.exp(z)
    return e / np.sum(e, axis=axis, keepdims=True)


def categorical_cross_entropy(pred, target) -> float:
    """Mean of ``-sum(target * ln(max(pred, eps)))`` over rows."""
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch: {pred.shape} vs {target.shape}")
    per_row = -np.sum(target * np.log(np.maximum(pred, CE_EPS)), axis=-1)
    return float(np.mean(per_row))


def glorot_uniform(gen: np.random.Generator, shape, dtype=np.float64) -> np.ndarray:
    fan_out, fan_in = shape
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return gen.uniform(-limit, limit, size=shape).astype(dtype)


@dataclass
class RmsPropState:
    lr: float = 1e-3
    rho: float = 0.9
    eps: float = 1e-7
    cache: dict[str, np.ndarray] = field(default_factory=dict)


def rmsprop_step(param: np.ndarray, grad: np.ndarray, cache: np.ndarray,
                 lr: float = 1e-3, rho: float = 0.9, eps: float = 1e-7):
    """One functional RMSProp update. Returns ``(new_param, new_cache)``."""
    if param.shape != grad.shape or cache.shape != grad.shape:
        raise ValueError(f"shape mismatch: {param.shape}, {grad.shape}, {cache.shape}")
    cache = rho * cache + (1 - rho) * grad * grad
    return param - lr * grad / (np.sqrt(cache) + eps), cache


class RMSProp:
    """In-place RMSProp over a named parameter dict."""

    def __init__(self, lr: float = 1e-3, rho: float = 0.9, eps: float = 1e-7):
        self.state = RmsPropState(lr=lr, rho=rho, eps=eps)

    @property
    def cache(self) -> dict[str, np.ndarray]:
        return self.state.cache

    def step(self, params: dict[str, np.ndarray], grads: dict[str, np.ndarray]) -> None:
        s = self.state
        for name, p in params.items():
            g = grads[name]
            if g.shape != p.shape:
                raise ValueError(f"{name}: grad shape {g.shape} != param shape {p.shape}")
            c = s.cache.get(name)
            if c is None:
                c = s.cache[name] = np.zeros_like(p)
            c *= s.rho
            c += (1 - s.rho) * g * g
            p -= (s.lr * g / (np.sqrt(c) + s.eps)).astype(p.dtype, copy=False)


def grad_check(f: Callable[[np.ndarray], float], analytic: np.ndarray, params: np.ndarray,
               h: float = 1e-5) -> float:
    """Max relative error between ``analytic`` and central differences of ``f``.

    ``f`` is evaluated at perturbed copies of the flat ``params`` vector.
    """
    params = np.array(params, dtype=np.float64).ravel()
    analytic = np.asarray(analytic, dtype=np.float64).ravel()
    if analytic.shape != params.shape:
        raise ValueError("analytic gradient and params differ in size")
    worst = 0.0
    for k in range(params.size):
        orig = params[k]
        params[k] = orig + h
        fp = f(params.copy())
        params[k] = orig - h
        fm = f(params.copy())
        params[k] = orig
        if not (np.isfinite(fp) and np.isfinite(fm)):
            raise NonFiniteError(f"f is not finite around coordinate {k}")
        num = (fp - fm) / (2 * h)
        a = analytic[k]
        err = abs(a - num) / max(abs(a), abs(num), 1e-8)
        worst = max(worst, err)
    return worst
