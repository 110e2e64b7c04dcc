
import mpmath
import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import breadth_first_order
from scipy.sparse.linalg import spsolve

from src.config import settings
from src.logger import logger

from ..errors import Singular, TooLarge, Unreachable
from ..model.chain import Chain, build_chain
from ..schema import BDBranch, StarState


def _reachable(adjacency: sparse.csr_matrix, start) -> np.ndarray:
    seen = np.zeros(adjacency.shape[0], dtype=bool)
    for s in np.atleast_1d(start):
        if not seen[s]:
            seen[breadth_first_order(adjacency, int(s), directed=True, return_predecessors=False)] = True
    return seen


def exact_mean_hitting_oracle(chain: Chain, source, targets) -> float:
    """Среднее время достижения множества targets из source: (−Q_UU) m = 1 на нецелевых U.

    До ORACLE_EXACT_LIMIT неизвестных система решается в mpmath с повышенной
    точностью, дальше — scipy.sparse.
    """
    if chain.size > settings.ORACLE_STATE_LIMIT:
        raise TooLarge("состояний для оракула", chain.size, settings.ORACLE_STATE_LIMIT)

    target_idx = np.unique(np.concatenate([chain.matching(t) for t in targets]))
    source_idx = chain.representative(source) if not isinstance(source, (int, np.integer)) else int(source)
    is_target = np.zeros(chain.size, dtype=bool)
    is_target[target_idx] = True
    if is_target[source_idx]:
        return 0.0

    # достижимые из source, не проходя через цель
    rates = chain.rates.tolil()
    for i in target_idx:
        rates.rows[i] = []
        rates.data[i] = []
    forward = _reachable(rates.tocsr(), source_idx)
    backward = _reachable(chain.rates.transpose().tocsr(), target_idx)
    if not forward[is_target].any():
        raise Unreachable(f"цель недостижима из {chain.states[source_idx]}")
    if not backward[forward].all():
        raise Unreachable(f"из {chain.states[source_idx]} достижимы состояния, откуда цель недостижима")

    unknown = np.flatnonzero(forward & ~is_target)
    position = {int(i): n for n, i in enumerate(unknown)}
    q_uu = chain.rates[unknown][:, unknown]
    exit_rates = chain.exit_rates[unknown]

    if unknown.size <= settings.ORACLE_EXACT_LIMIT:
        with mpmath.workdps(settings.MP_DPS + 20):
            a = mpmath.matrix(unknown.size, unknown.size)
            dense = q_uu.toarray()
            for r in range(unknown.size):
                for c in range(unknown.size):
                    a[r, c] = -mpmath.mpf(dense[r, c])
                a[r, r] += mpmath.mpf(exit_rates[r])
            try:
                m = mpmath.lu_solve(a, mpmath.matrix([1] * unknown.size))
            except ZeroDivisionError as exc:
                raise Singular(f"вырожденная система размера {unknown.size}") from exc
            value = float(m[position[source_idx]])
    else:
        a = (sparse.diags(exit_rates) - q_uu).tocsc()
        m = spsolve(a, np.ones(unknown.size))
        value = float(m[position[source_idx]])

    if not np.isfinite(value) or value <= 0:
        raise Singular(f"оракул вернул {value}")
    logger.debug("Оракул: {} неизвестных, E T = {:.10g}", unknown.size, value)
    return value


def branch_chain(branch: BDBranch, nu: float) -> Chain:
    """Ветвь с поглощающим уровнем 0 в виде Chain; уровни помечены как StarState(1, l)."""
    f = branch.rate(nu)
    states = [StarState.root()] + [StarState.at(1, l) for l in range(1, branch.size + 1)]
    transitions = []
    for l in range(1, branch.size + 1):
        transitions.append((l, l - 1, branch.d(l)))
        if l < branch.size:
            transitions.append((l, l + 1, branch.a(l) * f))
    return build_chain(
        states,
        transitions,
        groups=[s.branch for s in states],
        levels=[s.level for s in states],
        log_weights=np.zeros(len(states)),
        K=1,
    )


def branch_mean_oracle(branch: BDBranch, l1: int, l2: int, nu: float) -> float:
    chain = branch_chain(branch, nu)
    target = StarState.root() if l2 == 0 else StarState.at(1, l2)
    return exact_mean_hitting_oracle(chain, StarState.at(1, l1), [target])
