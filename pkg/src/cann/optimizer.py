"""MSE loss, ADAM, and the projected training loop for the energy network."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from . import energy as _energy
from .data import Dataset
from .energy import N_PARAMS, CannWeights
from .errors import DivergenceError, DomainError
from .kinematics import mode_invariants
from .stress import stress_coefficients

log = logging.getLogger(__name__)

# inner exponential coefficients, and the invariant power each one multiplies
_INNER = {1: ("i1", 1), 4: ("i1", 2), 7: ("i2", 1), 10: ("i2", 2)}


@dataclass(frozen=True)
class AdamConfig:
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    epochs: int = 10_000
    seed: int = 7
    init_scale: float = 0.5

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise DomainError(f"learning_rate must be > 0, got {self.learning_rate}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise DomainError("beta1 and beta2 must lie in [0, 1)")
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be > 0, got {self.epsilon}")
        if int(self.epochs) != self.epochs or self.epochs < 1:
            raise DomainError(f"epochs must be a positive integer, got {self.epochs}")
        if not self.init_scale >= 0:
            raise DomainError(f"init_scale must be >= 0, got {self.init_scale}")

    def as_dict(self) -> dict:
        return asdict(self)


class Adam:
    """ADAM with bias-corrected moment estimates over a flat parameter vector."""

    def __init__(self, config: AdamConfig, size: int):
        self.config = config
        self.m = np.zeros(size)
        self.v = np.zeros(size)
        self.t = 0

    def step(self, params: np.ndarray, grad: np.ndarray) -> np.ndarray:
        c = self.config
        self.t += 1
        self.m = c.beta1 * self.m + (1.0 - c.beta1) * grad
        self.v = c.beta2 * self.v + (1.0 - c.beta2) * grad * grad
        m_hat = self.m / (1.0 - c.beta1**self.t)
        v_hat = self.v / (1.0 - c.beta2**self.t)
        return params - c.learning_rate * m_hat / (np.sqrt(v_hat) + c.epsilon)


def project_non_negative(params: np.ndarray) -> np.ndarray:
    return np.maximum(params, 0.0)


@dataclass(frozen=True)
class TrainingRecord:
    final_weights: CannWeights
    loss_history: np.ndarray = field(repr=False)
    config: AdamConfig = field(default_factory=AdamConfig)

    @property
    def epochs_run(self) -> int:
        return len(self.loss_history)


class _Problem:
    """Dataset pre-evaluated into invariants and stress coefficients."""

    def __init__(self, dataset: Dataset):
        if dataset is None or len(dataset) == 0:
            raise DomainError("dataset is empty")
        n = len(dataset)
        self.n = n
        self.i1 = np.empty(n)
        self.i2 = np.empty(n)
        self.g1 = np.empty(n)
        self.g2 = np.empty(n)
        lam, self.target = dataset.arrays()
        for mode in dataset.modes:
            idx = np.array([s.mode is mode for s in dataset.samples])
            self.i1[idx], self.i2[idx], _, _ = mode_invariants(mode, lam[idx])
            self.g1[idx], self.g2[idx] = stress_coefficients(mode, lam[idx])

    def predict(self, theta):
        d1, d2 = _energy.derivative_terms(theta, self.i1, self.i2)
        return self.g1 * d1.sum(axis=0) + self.g2 * d2.sum(axis=0)

    def loss(self, theta) -> float:
        r = self.predict(theta) - self.target
        return float(np.mean(r * r))

    def loss_and_gradient(self, theta):
        _, d1, _, h1 = _energy._block(theta[:6], self.i1 - 3.0)
        _, d2, _, h2 = _energy._block(theta[6:], self.i2 - 3.0)
        r = self.g1 * d1.sum(axis=0) + self.g2 * d2.sum(axis=0) - self.target
        scale = 2.0 / self.n
        grad = np.concatenate([h1 @ (self.g1 * r), h2 @ (self.g2 * r)]) * scale
        return float(np.mean(r * r)), grad


def mse_loss(weights, dataset: Dataset) -> float:
    """Mean squared P1 residual over all samples, pooled with equal weight."""
    return _Problem(dataset).loss(_energy._as_theta(weights))


def loss_gradient(weights, dataset: Dataset) -> np.ndarray:
    return _Problem(dataset).loss_and_gradient(_energy._as_theta(weights))[1]


def initial_weights(dataset: Dataset, config: AdamConfig) -> np.ndarray:
    """Seeded non-negative starting point.

    Amplitudes are uniform on ``[0, init_scale]``. Inner exponential
    coefficients are drawn from the same range and divided by the largest
    value their argument takes on the data, so every initial exponent is at
    most ``init_scale`` and the first loss is finite.
    """
    rng = np.random.default_rng(config.seed)
    theta = rng.uniform(0.0, config.init_scale, size=N_PARAMS)
    prob = _Problem(dataset)
    for k, (inv, power) in _INNER.items():
        arg = (getattr(prob, inv) - 3.0) ** power
        top = float(np.max(arg))
        if top > 1.0:
            theta[k] /= top
    return theta


def train_cann(dataset: Dataset, config: AdamConfig | None = None, initial=None) -> TrainingRecord:
    """Full-batch ADAM on the MSE loss with projection onto ``w >= 0`` after every step.

    Raises:
        DivergenceError: if the loss becomes non-finite.
    """
    config = config or AdamConfig()
    prob = _Problem(dataset)
    theta = initial_weights(dataset, config) if initial is None else project_non_negative(_energy._as_theta(initial))
    adam = Adam(config, N_PARAMS)
    history = np.empty(config.epochs)

    # history[k] is the loss after k + 1 updates
    with np.errstate(over="ignore", invalid="ignore"):
        loss, grad = prob.loss_and_gradient(theta)
        if not np.isfinite(loss):
            raise DivergenceError(0, loss, CannWeights.from_array(theta))
        for epoch in range(config.epochs):
            theta = project_non_negative(adam.step(theta, grad))
            loss, grad = prob.loss_and_gradient(theta)
            if not (np.isfinite(loss) and np.all(np.isfinite(grad))):
                raise DivergenceError(epoch + 1, loss, CannWeights.from_array(np.nan_to_num(theta)))
            history[epoch] = loss

    log.debug("trained %d epochs: loss %.3e -> %.3e", config.epochs, history[0], history[-1])
    return TrainingRecord(CannWeights.from_array(theta), history, config)
