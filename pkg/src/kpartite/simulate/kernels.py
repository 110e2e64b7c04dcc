"""Ядра Gillespie на numba.

Цепь передаётся в CSR-виде: для строки i соседи indices[indptr[i]:indptr[i+1]]
и накопленные вероятности скачка cumprob в тех же позициях. Каждая репликация
сидирует генератор своего потока своим словом seeds[i], поэтому результат не
зависит от числа потоков и порядка их работы.
"""

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _jump(state, indptr, indices, cumprob):
    lo = indptr[state]
    hi = indptr[state + 1]
    u = np.random.random()
    j = lo + np.searchsorted(cumprob[lo:hi], u, side="right")
    if j >= hi:
        j = hi - 1
    return indices[j]


@njit(parallel=True, cache=True)
def first_passage(indptr, indices, cumprob, exit_rates, groups, n_groups, is_target, source, seeds, horizon):
    """Время первого попадания в цель и время в каждой группе состояний.

    Репликация, дошедшая до horizon, останавливается и помечается как обрезанная.
    """
    n = seeds.size
    times = np.zeros(n)
    occupancy = np.zeros((n, n_groups))
    censored = np.zeros(n, dtype=np.bool_)

    for i in prange(n):
        np.random.seed(seeds[i])
        state = source
        t = 0.0
        while not is_target[state]:
            dt = np.random.exponential(1.0 / exit_rates[state])
            g = groups[state]
            if t + dt >= horizon:
                occupancy[i, g] += horizon - t
                t = horizon
                censored[i] = True
                break
            occupancy[i, g] += dt
            t += dt
            state = _jump(state, indptr, indices, cumprob)
        times[i] = t

    return times, occupancy, censored


@njit(parallel=True, cache=True)
def windowed_occupancy(indptr, indices, cumprob, exit_rates, is_full, is_exit, source, seeds, window, horizon):
    """Функционалы занятости на окне [0, window] и до первого выхода.

    Возвращает по репликациям:
      tau         — время в полностью активных состояниях на [0, window];
      R           — min(window, T_exit);
      tau_res     — полная активность на [0, min(window, T_exit)];
      T_exit      — момент первого попадания в is_exit;
      tau_res_inf — полная активность до T_exit.
    Траектория продолжается, пока не пройдены и window, и T_exit.
    """
    n = seeds.size
    tau = np.zeros(n)
    R = np.zeros(n)
    tau_res = np.zeros(n)
    T_exit = np.zeros(n)
    tau_res_inf = np.zeros(n)
    censored = np.zeros(n, dtype=np.bool_)

    for i in prange(n):
        np.random.seed(seeds[i])
        state = source
        t = 0.0
        exited = is_exit[state]
        while not exited or t < window:
            dt = np.random.exponential(1.0 / exit_rates[state])
            end = t + dt
            if end >= horizon:
                end = horizon
                censored[i] = True
            if is_full[state]:
                if t < window:
                    tau[i] += min(end, window) - t
                if not exited:
                    tau_res_inf[i] += end - t
                    if t < window:
                        tau_res[i] += min(end, window) - t
            t = end
            if censored[i]:
                break
            state = _jump(state, indptr, indices, cumprob)
            if not exited and is_exit[state]:
                exited = True
                T_exit[i] = t

        if not exited:
            T_exit[i] = t
        R[i] = min(window, T_exit[i])

    return tau, R, tau_res, T_exit, tau_res_inf, censored


# ── Звезда ──────────────────────────────────────────────────────────────────

@njit(cache=True)
def _descent(birth, death, size, f, start, floor):
    """Точное время спуска start → floor в ветви, уровни floor+1..size.

    birth[l], death[l] индексируются уровнем, birth[size] = 0. Подъёмы с уровня j
    при m_j нужных спусках ~ NegBin(m_j, d_j/(d_j + b_j)), время на j ~ Gamma.
    """
    total = 0.0
    carried = 0
    for level in range(floor + 1, size + 1):
        need = carried + (1 if level <= start else 0)
        if need == 0:
            break
        up = birth[level] * f
        down = death[level]
        ups = 0
        if level < size:
            ups = np.random.negative_binomial(need, down / (down + up))
        total += np.random.gamma(need + ups, 1.0 / (up + down))
        carried = ups
    return total


@njit(parallel=True, cache=True)
def star_first_passage(
    birth, death, sizes, f, entry_cum, entry_total, source_branch, source_level, target_branch, target_level,
    seeds, horizon,
):
    """Переход по звезде: корень 0, ветви 1..K. Цель (0, 0) означает корень.

    Визит в ветвь без цели проходится одной выборкой спуска до корня, спуск
    внутри целевой ветви до уровня цели тоже. Ниже цели моделируются скачки.
    occupancy[:, 0] хранит время в корне.
    """
    n = seeds.size
    K = sizes.size
    times = np.zeros(n)
    occupancy = np.zeros((n, K + 1))
    censored = np.zeros(n, dtype=np.bool_)

    for i in prange(n):
        np.random.seed(seeds[i])
        k = source_branch
        l = source_level
        t = 0.0
        while not (k == target_branch and l == target_level):
            if k == 0:
                dt = np.random.exponential(1.0 / entry_total)
                nxt_k = np.searchsorted(entry_cum, np.random.random(), side="right") + 1
                if nxt_k > K:
                    nxt_k = K
                nxt_l = 1
            elif k != target_branch:
                dt = _descent(birth[k], death[k], sizes[k - 1], f[k - 1], l, 0)
                nxt_k = 0
                nxt_l = 0
            elif l > target_level:
                dt = _descent(birth[k], death[k], sizes[k - 1], f[k - 1], l, target_level)
                nxt_k = k
                nxt_l = target_level
            else:
                up = birth[k, l] * f[k - 1]
                down = death[k, l]
                dt = np.random.exponential(1.0 / (up + down))
                nxt_l = l + 1 if np.random.random() < up / (up + down) else l - 1
                nxt_k = k if nxt_l > 0 else 0

            if t + dt >= horizon:
                occupancy[i, k] += horizon - t
                t = horizon
                censored[i] = True
                break
            occupancy[i, k] += dt
            t += dt
            k = nxt_k
            l = nxt_l
        times[i] = t

    return times, occupancy, censored
