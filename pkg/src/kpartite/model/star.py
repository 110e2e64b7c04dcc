import math
from collections.abc import Callable

import numpy as np
from scipy.special import gammaln, logsumexp

from src.logger import logger

from ..errors import AggregationInvalid, LevelOutOfRange
from ..schema import NetworkSpec, StarState
from .chain import Chain, build_chain


def _require_aggregable(spec: NetworkSpec) -> None:
    if not spec.aggregable:
        raise AggregationInvalid("агрегированная цепь определена только без внутренних конфликтов и индивидуальных скоростей")


def check_state(spec: NetworkSpec, state: StarState) -> StarState:
    if state.is_root:
        if state.level != 0:
            raise LevelOutOfRange(f"у корня уровень 0, получено {state.level}")
        return state
    if not 1 <= state.branch <= spec.K:
        raise LevelOutOfRange(f"ветвь {state.branch} вне 1..{spec.K}")
    if not 1 <= state.level <= spec.size(state.branch):
        raise LevelOutOfRange(f"уровень {state.level} вне 1..{spec.size(state.branch)} для ветви {state.branch}")
    return state


def star_states(spec: NetworkSpec) -> list[StarState]:
    states = [StarState.root()]
    for k in range(1, spec.K + 1):
        states.extend(StarState.at(k, l) for l in range(1, spec.size(k) + 1))
    return states


def star_rates(spec: NetworkSpec, nu: float) -> Callable[[StarState, StarState], float]:
    _require_aggregable(spec)
    f = [spec.rate(k)(nu) for k in range(1, spec.K + 1)]

    def q(x: StarState, y: StarState) -> float:
        if x.is_root:
            if y.is_root or y.level != 1:
                return 0.0
            return spec.size(y.branch) * f[y.branch - 1]
        if y.is_root:
            return 1.0 if x.level == 1 else 0.0
        if x.branch != y.branch:
            return 0.0
        L = spec.size(x.branch)
        if y.level == x.level + 1 and y.level <= L:
            return (L - x.level) * f[x.branch - 1]
        if y.level == x.level - 1:
            return float(x.level)
        return 0.0

    return q


def star_log_weights(spec: NetworkSpec, nu: float) -> np.ndarray:
    """log(C(L_k, l) f_k(ν)^l) в порядке star_states, корень — 0."""
    logs = [0.0]
    for k in range(1, spec.K + 1):
        L = spec.size(k)
        log_f = spec.rate(k).log_value(nu)
        for l in range(1, L + 1):
            logs.append(gammaln(L + 1) - gammaln(l + 1) - gammaln(L - l + 1) + l * log_f)
    return np.array(logs)


def stationary_star(spec: NetworkSpec, nu: float) -> np.ndarray:
    _require_aggregable(spec)
    logs = star_log_weights(spec, nu)
    return np.exp(logs - logsumexp(logs))


def star_chain(spec: NetworkSpec, nu: float) -> Chain:
    _require_aggregable(spec)
    states = star_states(spec)
    index = {s: i for i, s in enumerate(states)}
    q = star_rates(spec, nu)

    transitions = []
    for k in range(1, spec.K + 1):
        L = spec.size(k)
        first = index[StarState.at(k, 1)]
        transitions.append((0, first, q(StarState.root(), StarState.at(k, 1))))
        transitions.append((first, 0, 1.0))
        for l in range(1, L):
            lo, hi = StarState.at(k, l), StarState.at(k, l + 1)
            transitions.append((index[lo], index[hi], q(lo, hi)))
            transitions.append((index[hi], index[lo], q(hi, lo)))

    chain = build_chain(
        states,
        transitions,
        groups=[s.branch for s in states],
        levels=[s.level for s in states],
        log_weights=star_log_weights(spec, nu),
        K=spec.K,
    )
    logger.debug("Звёздная цепь: {} состояний при ν={:g}", chain.size, nu)
    return chain


# ── Точные средние по пути в дереве ─────────────────────────────────────────

def _path(x: StarState, y: StarState) -> list[StarState]:
    """Единственный путь между состояниями звезды."""
    if not x.is_root and not y.is_root and x.branch == y.branch:
        step = 1 if y.level > x.level else -1
        return [StarState.at(x.branch, l) for l in range(x.level, y.level + step, step)]
    down = [StarState.at(x.branch, l) for l in range(x.level, 0, -1)] if not x.is_root else []
    up = [StarState.at(y.branch, l) for l in range(1, y.level + 1)] if not y.is_root else []
    return down + [StarState.root()] + up


def tree_mean_hitting(spec: NetworkSpec, nu: float, source: StarState, target: StarState) -> float:
    """E T_{source,target} по рёбрам пути: E_x T_y = π(C_x)/(π_x q(x,y)) для соседних x, y.

    C_x — часть дерева со стороны x после удаления ребра.
    """
    _require_aggregable(spec)
    check_state(spec, source)
    check_state(spec, target)
    if source == target:
        return 0.0

    states = star_states(spec)
    logs = star_log_weights(spec, nu)
    index = {s: i for i, s in enumerate(states)}
    branch = np.array([s.branch for s in states])
    level = np.array([s.level for s in states])
    q = star_rates(spec, nu)

    terms = []
    path = _path(source, target)
    for x, y in zip(path, path[1:]):
        if x.is_root:
            side = branch != y.branch
        elif y.is_root or y.level < x.level:
            side = (branch == x.branch) & (level >= x.level)
        else:
            side = ~((branch == x.branch) & (level >= y.level))
        terms.append(math.exp(logsumexp(logs[side]) - logs[index[x]] - math.log(q(x, y))))

    return math.fsum(terms)
