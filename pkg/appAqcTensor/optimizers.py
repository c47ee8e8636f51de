import logging
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import scipy.optimize

logger = logging.getLogger(__name__)


@dataclass
class OptimizationTrace:
    """Best point over all objective calls, and the cost after each optimizer iteration."""

    epsilon: float
    best_cost: float = np.inf
    best_params: np.ndarray | None = None
    costs: list = field(default_factory=list)
    evaluations: int = 0

    def record(self, params, c: float) -> None:
        self.evaluations += 1
        if c < self.best_cost:
            self.best_cost = c
            self.best_params = np.array(params, copy=True)

    def end_iteration(self, c: float) -> None:
        self.costs.append((len(self.costs), c))

    @property
    def reached(self) -> bool:
        return self.best_cost <= self.epsilon


def minimize_lbfgs(fun, x0, trace: OptimizationTrace, *, gtol: float, max_iterations: int):
    """L-BFGS-B with an early stop once the cost is below ``trace.epsilon``."""

    def objective(x):
        c, g = fun(x)
        trace.record(x, c)
        return c, g

    def stop_when_reached(intermediate_result):
        trace.end_iteration(float(intermediate_result.fun))
        if trace.reached:
            raise StopIteration

    result = scipy.optimize.minimize(
        objective,
        x0,
        jac=True,
        method="L-BFGS-B",
        callback=stop_when_reached,
        options={"maxiter": max_iterations, "gtol": gtol},
    )
    logger.debug("L-BFGS-B: %s after %d iterations", result.message, result.nit)
    return result


def minimize_adam(  # noqa: PLR0913
    fun,
    x0,
    trace: OptimizationTrace,
    *,
    gtol: float,
    max_iterations: int,
    learning_rate: float = 1e-2,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
):
    x = np.array(x0, dtype=float)
    m = np.zeros_like(x)
    v = np.zeros_like(x)
    for step in range(1, max_iterations + 1):
        c, g = fun(x)
        trace.record(x, c)
        if step > 1:
            trace.end_iteration(c)
        if trace.reached or np.linalg.norm(g) < gtol:
            break
        m = beta1 * m + (1 - beta1) * g
        v = beta2 * v + (1 - beta2) * g**2
        m_hat = m / (1 - beta1**step)
        v_hat = v / (1 - beta2**step)
        x = x - learning_rate * m_hat / (np.sqrt(v_hat) + eps)
        if step % 100 == 0:
            logger.debug("Adam step %d: cost %.6e", step, c)
    return x
