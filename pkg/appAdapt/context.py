import logging
from dataclasses import dataclass
from dataclasses import field

from appAdapt.ansatz import AnsatzBlock
from appSimulator.simulator import SimulationContext
from appSimulator.simulator import evaluate_with_cache
from appTensor.mps import MPSState
from appTensor.mps import fidelity
from appTensor.mps import normalize

logger = logging.getLogger(__name__)


@dataclass
class AdaptContext:
    """
    State of one adaptive compile.

    ``sim.cached_state`` is the target with the frozen blocks applied;
    ``blocks`` are the blocks still being optimized, in application order.
    ``reference`` is the state the circuit starts from (|0...0> or the
    chi=1 approximation).
    """

    sim: SimulationContext
    reference: MPSState
    blocks: list = field(default_factory=list)
    frozen: list = field(default_factory=list)

    @property
    def all_blocks(self) -> list[AnsatzBlock]:
        return self.frozen + self.blocks

    def block_gates(self, blocks=None) -> list:
        blocks = self.blocks if blocks is None else blocks
        return [g for b in blocks for g in b.gates()]

    def current_state(self) -> MPSState:
        return normalize(evaluate_with_cache(self.sim, self.block_gates()))

    def cost(self, state: MPSState | None = None) -> float:
        state = self.current_state() if state is None else state
        return 1.0 - fidelity(self.reference, state)

    def freeze_oldest(self) -> None:
        """Absorb the oldest active block into the cached target."""
        block = self.blocks.pop(0)
        self.sim.push(*block.gates())
        self.sim.absorb()
        self.sim.cached_state = normalize(self.sim.cached_state)
        self.frozen.append(block)
        logger.debug("Froze block on %s; %d blocks remain active", block.pair, len(self.blocks))
