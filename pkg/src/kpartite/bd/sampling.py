import numpy as np

from ..errors import LevelOutOfRange
from ..schema import BDBranch


def sample_escape(
    branch: BDBranch,
    nu: float,
    start: int,
    size: int,
    rng: np.random.Generator,
    copies: int | np.ndarray = 1,
) -> np.ndarray:
    """Точные выборки суммы `copies` независимых спусков start → 0.

    Уровни обходятся снизу вверх. Спусков j → j−1 нужно m_j = copies·1{j ≤ start}
    плюс число подъёмов с уровня j−1; каждый визит на j заканчивается спуском с
    вероятностью d_j/(d_j + b_j), поэтому подъёмы с j ~ NegBin(m_j, ·), а время
    на уровне j ~ Gamma(визиты, 1/(b_j + d_j)). Стоимость O(L) на выборку при любом ν.
    """
    if not 0 <= start <= branch.size:
        raise LevelOutOfRange(f"уровень {start} вне 0..{branch.size}")

    f = branch.rate(nu)
    copies = np.broadcast_to(np.asarray(copies, dtype=np.int64), (size,))
    total = np.zeros(size)
    carried = np.zeros(size, dtype=np.int64)

    for level in range(1, branch.size + 1):
        need = carried + (copies if level <= start else 0)
        up = branch.a(level) * f
        down = branch.d(level)

        ups = np.zeros(size, dtype=np.int64)
        if level < branch.size:
            active = need > 0
            if active.any():
                ups[active] = rng.negative_binomial(need[active], down / (down + up))

        visits = need + ups
        active = visits > 0
        if active.any():
            total[active] += rng.gamma(visits[active], 1.0 / (up + down))
        carried = ups

    return total
