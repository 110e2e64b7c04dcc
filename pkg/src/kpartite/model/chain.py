from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse
from scipy.special import logsumexp

from ..schema import FullState, StarState


@dataclass(frozen=True, eq=False)
class Chain:
    """Обратимая цепь на конечном пространстве: метки состояний и разреженные скорости.

    groups[i] — номер ветви/компоненты состояния (0 — пустое состояние),
    levels[i] — число активных пользователей.
    """

    states: tuple[StarState | FullState, ...]
    rates: sparse.csr_matrix
    groups: np.ndarray
    levels: np.ndarray
    log_weights: np.ndarray
    K: int

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def index(self) -> dict:
        return {state: i for i, state in enumerate(self.states)}

    @cached_property
    def exit_rates(self) -> np.ndarray:
        return np.asarray(self.rates.sum(axis=1)).ravel()

    def generator(self) -> sparse.csr_matrix:
        return (self.rates - sparse.diags(self.exit_rates)).tocsr()

    def dense_generator(self) -> np.ndarray:
        return self.generator().toarray()

    def stationary(self) -> np.ndarray:
        return np.exp(self.log_weights - logsumexp(self.log_weights))

    def rate(self, x, y) -> float:
        return float(self.rates[self.index[x], self.index[y]])

    def matching(self, state: StarState | FullState) -> np.ndarray:
        """Индексы состояний, отвечающих метке.

        StarState на полном пространстве — все независимые множества с тем же
        числом активных в той же компоненте.
        """
        if isinstance(state, StarState):
            found = np.flatnonzero((self.groups == state.branch) & (self.levels == state.level))
        else:
            found = np.array([self.index[state]]) if state in self.index else np.array([], dtype=np.int64)
        if found.size == 0:
            raise KeyError(f"состояние {state} отсутствует в пространстве")
        return found

    def representative(self, state: StarState | FullState) -> int:
        return int(self.matching(state)[0])

    def group_mask(self, k: int) -> np.ndarray:
        return self.groups == k


def build_chain(states, transitions, groups, levels, log_weights, K: int) -> Chain:
    """transitions — итерируемое (i, j, q) с i ≠ j."""
    rows, cols, values = [], [], []
    for i, j, q in transitions:
        if q > 0:
            rows.append(i)
            cols.append(j)
            values.append(q)
    n = len(states)
    rates = sparse.csr_matrix((values, (rows, cols)), shape=(n, n))
    return Chain(
        states=tuple(states),
        rates=rates,
        groups=np.asarray(groups, dtype=np.int64),
        levels=np.asarray(levels, dtype=np.int64),
        log_weights=np.asarray(log_weights, dtype=np.float64),
        K=K,
    )
