from dataclasses import dataclass
from typing import Optional

import numpy as np

from SkillComposer.Exceptions.Exceptions import NonFiniteError
from .Net import Net
from .ParamVector import ParamVector


@dataclass
class OptimizerState:
    """Per-net optimizer memory; `kind` is "sgd", "momentum" or "adam"."""
    kind: str = "adam"
    momentum: float = 0.9
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: Optional[np.ndarray] = None
    v: Optional[np.ndarray] = None

    def direction(self, g: np.ndarray) -> np.ndarray:
        if self.kind == "sgd":
            return g
        if self.m is None:
            self.m = np.zeros_like(g)
            self.v = np.zeros_like(g)
        self.step += 1
        if self.kind == "momentum":
            self.m = self.momentum * self.m + g
            return self.m
        self.m = self.beta1 * self.m + (1.0 - self.beta1) * g
        self.v = self.beta2 * self.v + (1.0 - self.beta2) * g * g
        m_hat = self.m / (1.0 - self.beta1 ** self.step)
        v_hat = self.v / (1.0 - self.beta2 ** self.step)
        return m_hat / (np.sqrt(v_hat) + self.eps)


def sgd_step(net: Net, gradient: ParamVector, lr: float, state: Optional[OptimizerState] = None) -> Net:
    """Returns a new Net moved against `gradient`; `state` carries momentum/Adam memory."""
    if not gradient.is_finite():
        raise NonFiniteError("Non-finite gradient passed to sgd_step")
    if not np.any(gradient.data):
        return net.copy()
    direction = gradient.data if state is None else state.direction(gradient.data)
    updated = net.params.data - lr * direction
    if not np.all(np.isfinite(updated)):
        raise NonFiniteError("Optimizer step produced non-finite parameters")
    return net.with_params(net.params.with_data(updated))
