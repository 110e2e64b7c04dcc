
import networkx as nx
import numpy as np
from scipy.special import logsumexp

from src.config import settings
from src.logger import logger

from ..errors import TooLarge
from ..schema import FullState, NetworkSpec
from .chain import Chain, build_chain
from .spec import conflict_graph


def _users(spec: NetworkSpec) -> list[tuple[int, int]]:
    """Глобальный номер пользователя → (компонента k, локальный номер)."""
    return [(k, u) for k in range(1, spec.K + 1) for u in range(spec.size(k))]


def _offsets(spec: NetworkSpec) -> list[int]:
    offsets, total = [], 0
    for L in spec.sizes:
        offsets.append(total)
        total += L
    return offsets


def enumerate_full_space(spec: NetworkSpec) -> list[FullState]:
    """Все независимые множества: пустое и непустые внутри одной компоненты."""
    n = spec.total_users
    if n > settings.ENUMERATION_LIMIT:
        raise TooLarge("пользователей в полном пространстве", n, settings.ENUMERATION_LIMIT)

    states = [FullState(mask=0)]
    for k, offset in enumerate(_offsets(spec), start=1):
        component = spec.component(k)
        # независимые множества графа совпадают с кликами дополнения
        complement = nx.complement(conflict_graph(component.size, component.intra_edges))
        masks = sorted(
            sum(1 << (offset + u) for u in clique)
            for clique in nx.enumerate_all_cliques(complement)
        )
        states.extend(FullState(mask=m) for m in masks)

    logger.debug("Полное пространство: {} пользователей, {} состояний", n, len(states))
    return states


def full_chain(spec: NetworkSpec, nu: float) -> Chain:
    states = enumerate_full_space(spec)
    index = {s.mask: i for i, s in enumerate(states)}
    users = _users(spec)
    offsets = _offsets(spec)

    log_f = np.array([spec.component(k).user_rate(u).log_value(nu) for k, u in users])
    f = np.exp(log_f)
    neighbours = [0] * len(users)
    for k, offset in enumerate(offsets, start=1):
        for u, v in spec.component(k).intra_edges:
            neighbours[offset + u] |= 1 << (offset + v)
            neighbours[offset + v] |= 1 << (offset + u)

    groups, levels, log_weights, transitions = [], [], [], []
    for i, state in enumerate(states):
        active = state.users
        group = users[active[0]][0] if active else 0
        groups.append(group)
        levels.append(len(active))
        log_weights.append(float(log_f[list(active)].sum()) if active else 0.0)

        for u in active:
            transitions.append((i, index[state.mask & ~(1 << u)], 1.0))
        candidates = range(len(users)) if not active else range(offsets[group - 1], offsets[group - 1] + spec.size(group))
        for u in candidates:
            if state.mask >> u & 1 or neighbours[u] & state.mask:
                continue
            transitions.append((i, index[state.mask | 1 << u], float(f[u])))

    return build_chain(states, transitions, groups, levels, log_weights, K=spec.K)


def stationary_full(spec: NetworkSpec, nu: float) -> np.ndarray:
    chain = full_chain(spec, nu)
    return np.exp(chain.log_weights - logsumexp(chain.log_weights))


def full_rates(spec: NetworkSpec, nu: float):
    """q(x, y) на Ω* для пары FullState."""
    chain = full_chain(spec, nu)

    def q(x: FullState, y: FullState) -> float:
        return chain.rate(x, y)

    return q
