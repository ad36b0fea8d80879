"""Fully connected tanh network mapping stretch to nominal stress.

This is the classical, physics-agnostic comparison model: scalar stretch in,
scalar stress out, tanh on every hidden layer and an affine output layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import DivergenceError, DomainError, StructureError
from .optimizer import Adam, AdamConfig


def _check_sizes(layer_sizes) -> tuple[int, ...]:
    sizes = tuple(int(n) for n in layer_sizes)
    if len(sizes) < 2 or any(n < 1 for n in sizes):
        raise StructureError(f"layer sizes must be >= 2 positive integers, got {tuple(layer_sizes)}")
    if sizes[0] != 1 or sizes[-1] != 1:
        raise StructureError(f"input and output layers must have one node, got {sizes}")
    return sizes


@dataclass
class MlpParams:
    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]  # weights[k] has shape (layer_sizes[k + 1], layer_sizes[k])
    biases: list[np.ndarray]  # biases[k] has shape (layer_sizes[k + 1],)

    def __post_init__(self):
        sizes = self.layer_sizes = _check_sizes(self.layer_sizes)
        self.weights = [np.asarray(w, dtype=float) for w in self.weights]
        self.biases = [np.asarray(b, dtype=float) for b in self.biases]
        if len(self.weights) != len(sizes) - 1 or len(self.biases) != len(sizes) - 1:
            raise StructureError("need one weight matrix and one bias vector per layer transition")
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (sizes[k + 1], sizes[k]):
                raise StructureError(f"weights[{k}] has shape {w.shape}, expected {(sizes[k + 1], sizes[k])}")
            if b.shape != (sizes[k + 1],):
                raise StructureError(f"biases[{k}] has shape {b.shape}, expected {(sizes[k + 1],)}")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise StructureError(f"layer {k} has non-finite entries")

    @property
    def n_weights(self) -> int:
        return sum(w.size for w in self.weights)

    @property
    def n_biases(self) -> int:
        return sum(b.size for b in self.biases)

    @property
    def n_params(self) -> int:
        return self.n_weights + self.n_biases

    def flatten(self) -> np.ndarray:
        parts = []
        for w, b in zip(self.weights, self.biases):
            parts += [w.ravel(), b]
        return np.concatenate(parts)

    @classmethod
    def unflatten(cls, layer_sizes, flat) -> MlpParams:
        flat = np.asarray(flat, dtype=float).ravel()
        layer_sizes = _check_sizes(layer_sizes)
        expected = sum((n_in + 1) * n_out for n_in, n_out in zip(layer_sizes[:-1], layer_sizes[1:]))
        if flat.size != expected:
            raise StructureError(f"expected {expected} parameters for layers {layer_sizes}, got {flat.size}")
        weights, biases = [], []
        pos = 0
        for n_in, n_out in zip(layer_sizes[:-1], layer_sizes[1:]):
            weights.append(flat[pos : pos + n_in * n_out].reshape(n_out, n_in))
            pos += n_in * n_out
            biases.append(flat[pos : pos + n_out])
            pos += n_out
        return cls(layer_sizes, weights, biases)

    def saturation_bound(self) -> float:
        """Upper bound on |output| once hidden activations saturate.

        Only meaningful for a single hidden layer, where every hidden unit
        lies in [-1, 1].
        """
        return float(np.abs(self.weights[-1]).sum() + np.abs(self.biases[-1]).sum())


def init_mlp(layer_sizes, seed: int = 0) -> MlpParams:
    """Zero biases; weights uniform on +-1/sqrt(fan_in)."""
    sizes = _check_sizes(layer_sizes)
    rng = np.random.default_rng(seed)
    weights = []
    for n_in, n_out in zip(sizes[:-1], sizes[1:]):
        bound = 1.0 / np.sqrt(n_in)
        weights.append(rng.uniform(-bound, bound, size=(n_out, n_in)))
    biases = [np.zeros(n) for n in sizes[1:]]
    return MlpParams(sizes, weights, biases)


def _forward(params: MlpParams, lam: np.ndarray):
    """Activations of every layer for a batch of inputs, each shape (nodes, batch)."""
    z = lam.reshape(1, -1)
    acts = [z]
    last = len(params.weights) - 1
    for k, (w, b) in enumerate(zip(params.weights, params.biases)):
        a = w @ z + b[:, None]
        z = a if k == last else np.tanh(a)
        acts.append(z)
    return acts


def mlp_forward(params: MlpParams, lam):
    lam = np.asarray(lam, dtype=float)
    out = _forward(params, lam.ravel())[-1].reshape(lam.shape)
    return float(out) if out.ndim == 0 else out


def _backward(params: MlpParams, acts, delta: np.ndarray):
    """Weight and bias gradients given d(objective)/d(output) per sample."""
    grads_w = [None] * len(params.weights)
    grads_b = [None] * len(params.biases)
    d = delta.reshape(1, -1)
    for k in range(len(params.weights) - 1, -1, -1):
        grads_w[k] = d @ acts[k].T
        grads_b[k] = d.sum(axis=1)
        if k:
            d = (params.weights[k].T @ d) * (1.0 - acts[k] ** 2)
    return grads_w, grads_b


def mlp_gradient(params: MlpParams, lam: float) -> MlpParams:
    """Derivative of the network output with respect to every weight and bias."""
    acts = _forward(params, np.array([float(lam)]))
    gw, gb = _backward(params, acts, np.ones(1))
    return MlpParams(params.layer_sizes, gw, gb)


@dataclass
class MlpTrainResult:
    params: MlpParams
    loss_history: np.ndarray = field(repr=False)
    config: AdamConfig = field(default_factory=AdamConfig)


def mlp_loss(params: MlpParams, dataset: Dataset) -> float:
    lam, target = dataset.arrays()
    r = mlp_forward(params, lam) - target
    return float(np.mean(r * r))


def mlp_train(
    dataset: Dataset,
    config: AdamConfig | None = None,
    layer_sizes=(1, 8, 1),
) -> MlpTrainResult:
    """Full-batch ADAM on the MSE between network output and measured stress."""
    if dataset is None or len(dataset) == 0:
        raise DomainError("dataset is empty")
    if len(dataset.modes) != 1:
        raise DomainError(
            "the baseline network maps stretch to stress for a single loading mode; "
            f"dataset has modes {[m.value for m in dataset.modes]}"
        )
    config = config or AdamConfig()
    params = init_mlp(layer_sizes, config.seed)
    sizes = params.layer_sizes
    lam, target = dataset.arrays()
    n = lam.size

    flat = params.flatten()
    adam = Adam(config, flat.size)
    history = np.empty(config.epochs)
    for epoch in range(config.epochs):
        acts = _forward(params, lam)
        r = acts[-1].ravel() - target
        loss = float(np.mean(r * r))
        if not np.isfinite(loss):
            raise DivergenceError(epoch + 1, loss)
        gw, gb = _backward(params, acts, (2.0 / n) * r)
        grad = MlpParams(sizes, gw, gb).flatten()
        flat = adam.step(flat, grad)
        params = MlpParams.unflatten(sizes, flat)
        history[epoch] = mlp_loss(params, dataset) if epoch == config.epochs - 1 else loss
    return MlpTrainResult(params, history, config)
