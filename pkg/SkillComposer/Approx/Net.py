from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from SkillComposer.Exceptions.Exceptions import DimensionMismatchError, NonFiniteError
from .ParamVector import ParamVector

ACTIVATIONS = ("tanh", "identity", "relu")


class LayerSpec(NamedTuple):
    input_dim: int
    output_dim: int
    activation: str = "tanh"


def _activate(kind: str, x: np.ndarray) -> np.ndarray:
    if kind == "tanh":
        return np.tanh(x)
    if kind == "relu":
        return np.maximum(x, 0.0)
    return x


def _activate_grad(kind: str, pre: np.ndarray, post: np.ndarray) -> np.ndarray:
    if kind == "tanh":
        return 1.0 - post * post
    if kind == "relu":
        return (pre > 0.0).astype(pre.dtype)
    return np.ones_like(pre)


class Net:
    """Feed-forward network: affine layers, each followed by its activation.

    Inputs are single vectors ``(d,)`` or batches ``(n, d)``.
    """
    layers: Tuple[LayerSpec, ...]
    params: ParamVector

    def __init__(self, layers: Sequence[LayerSpec], params: Optional[ParamVector] = None):
        self.layers = tuple(LayerSpec(*layer) for layer in layers)
        for previous, layer in zip(self.layers, self.layers[1:]):
            if previous.output_dim != layer.input_dim:
                raise DimensionMismatchError(f"Layer output {previous.output_dim} feeds input {layer.input_dim}")
        for layer in self.layers:
            if layer.activation not in ACTIVATIONS:
                raise ValueError(f"Unknown activation {layer.activation!r}")
        if params is None:
            params = ParamVector.from_shapes(self._shapes())
        self.params = params

    @classmethod
    def build(cls, input_dim: int, hidden: Sequence[int], output_dim: int, hidden_activation: str = "tanh",
              output_activation: str = "identity", rng: Optional[np.random.Generator] = None,
              output_scale: float = 1.0) -> 'Net':
        dims = [input_dim, *hidden, output_dim]
        layers = [LayerSpec(dims[i], dims[i + 1], hidden_activation) for i in range(len(hidden))]
        layers.append(LayerSpec(dims[-2], dims[-1], output_activation))
        net = cls(layers)
        if rng is not None:
            net.initialize(rng, output_scale)
        return net

    @classmethod
    def identity(cls, dim: int) -> 'Net':
        net = cls([LayerSpec(dim, dim, "identity")])
        net.params.view("W0")[...] = np.eye(dim)
        return net

    def _shapes(self):
        for i, layer in enumerate(self.layers):
            yield f"W{i}", (layer.input_dim, layer.output_dim)
            yield f"b{i}", (layer.output_dim,)

    def initialize(self, rng: np.random.Generator, output_scale: float = 1.0):
        last = len(self.layers) - 1
        for i, layer in enumerate(self.layers):
            scale = 1.0 / np.sqrt(layer.input_dim)
            if i == last:
                scale *= output_scale
            self.params.view(f"W{i}")[...] = rng.normal(0.0, scale, (layer.input_dim, layer.output_dim))
            self.params.view(f"b{i}")[...] = 0.0

    @property
    def input_dim(self) -> int:
        return self.layers[0].input_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].output_dim

    def manifest(self) -> List[list]:
        return [[layer.input_dim, layer.output_dim, layer.activation] for layer in self.layers]

    def copy(self) -> 'Net':
        return Net(self.layers, self.params.copy())

    def with_params(self, params: ParamVector) -> 'Net':
        return Net(self.layers, params)

    def _check_input(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape[-1] != self.input_dim or x.ndim not in (1, 2):
            raise DimensionMismatchError(f"Net expects input dimension {self.input_dim}, got shape {x.shape}")
        return x

    def forward(self, x: np.ndarray) -> np.ndarray:
        h = self._check_input(x)
        for i, layer in enumerate(self.layers):
            h = _activate(layer.activation, h @ self.params.view(f"W{i}") + self.params.view(f"b{i}"))
        return h

    def forward_cache(self, x: np.ndarray):
        x = self._check_input(x)
        batch = x if x.ndim == 2 else x[None]
        cache = [batch]
        h = batch
        for i, layer in enumerate(self.layers):
            pre = h @ self.params.view(f"W{i}") + self.params.view(f"b{i}")
            h = _activate(layer.activation, pre)
            cache.append((pre, h))
        return h, cache

    def backward(self, cache, grad_out: np.ndarray) -> Tuple[ParamVector, np.ndarray]:
        """Gradient of a scalar loss given dL/d(output) for the cached batch.

        Returns the parameter gradient and dL/d(input).
        """
        grad = self.params.zeros_like()
        delta = np.asarray(grad_out, dtype=np.float64).reshape(cache[-1][1].shape)
        for i in range(len(self.layers) - 1, -1, -1):
            pre, post = cache[i + 1]
            delta = delta * _activate_grad(self.layers[i].activation, pre, post)
            inputs = cache[i] if i == 0 else cache[i][1]
            grad.view(f"W{i}")[...] = inputs.T @ delta
            grad.view(f"b{i}")[...] = delta.sum(axis=0)
            delta = delta @ self.params.view(f"W{i}").T
        if not grad.is_finite():
            raise NonFiniteError("Non-finite gradient")
        return grad, delta

    def __eq__(self, other):
        if not isinstance(other, Net):
            return NotImplemented
        return self.layers == other.layers and self.params == other.params


LossFn = Callable[[np.ndarray], Tuple[float, np.ndarray]]


def forward(net: Net, x: np.ndarray) -> np.ndarray:
    return net.forward(x)


def grad(net: Net, loss: LossFn, batch: np.ndarray) -> Tuple[float, ParamVector]:
    """Analytic gradient of `loss(outputs) -> (value, dvalue/doutputs)` over a batch."""
    outputs, cache = net.forward_cache(batch)
    value, grad_out = loss(outputs)
    if not np.isfinite(value):
        raise NonFiniteError(f"Non-finite loss {value}")
    gradient, _ = net.backward(cache, grad_out)
    return float(value), gradient
