from dataclasses import dataclass
from dataclasses import field

from appCircuit.circuit import Circuit
from appCircuit.metrics import cnot_metrics
from appCircuit.serialization import circuit_to_dict


@dataclass
class CompilationResult:
    """
    Output of a variational compiler.

    ``cost_trace`` holds (iteration, cost) pairs, iteration 0 being the
    starting circuit. ``fidelity`` is 1 - final cost.
    """

    circuit: Circuit
    fidelity: float
    cnot_depth: int
    cnot_count: int
    cost_trace: list = field(default_factory=list)
    blocks_added: int = 0
    converged: bool = False
    method: str = ""
    extra: dict = field(default_factory=dict)

    @classmethod
    def build(cls, circuit: Circuit, fidelity: float, **kwargs) -> "CompilationResult":
        metrics = cnot_metrics(circuit)
        return cls(
            circuit=circuit,
            fidelity=float(fidelity),
            cnot_depth=metrics.depth,
            cnot_count=metrics.count,
            **kwargs,
        )

    @property
    def cost(self) -> float:
        return 1.0 - self.fidelity

    def summary(self) -> dict:
        return {
            "method": self.method,
            "fidelity": self.fidelity,
            "cnot_depth": self.cnot_depth,
            "cnot_count": self.cnot_count,
            "blocks_added": self.blocks_added,
            "converged": self.converged,
            "iterations": len(self.cost_trace),
        }

    def to_dict(self, *, include_circuit: bool = True) -> dict:
        data = {
            **self.summary(),
            "cost_trace": [[int(i), float(c)] for i, c in self.cost_trace],
            **self.extra,
        }
        if include_circuit:
            data["circuit"] = circuit_to_dict(self.circuit)
        return data
