from fractions import Fraction

import networkx as nx

from src.config import settings
from src.logger import logger

from ..errors import TooLarge
from ..model.spec import conflict_graph
from ..schema import AsymptoticMean, Component, ExtensionConstants


def extension_constants(component: Component) -> ExtensionConstants:
    """g, ψ, η компоненты с внутренними конфликтами и главный член времени выхода ψ g/F."""
    if component.size > settings.ENUMERATION_LIMIT:
        raise TooLarge("пользователей в компоненте", component.size, settings.ENUMERATION_LIMIT)

    rates = [component.user_rate(u) for u in range(component.size)]
    complement = nx.complement(conflict_graph(component.size, component.intra_edges))

    # (показатель, коэффициент) для каждого независимого множества, включая пустое
    candidates: list[tuple[Fraction, Fraction, tuple[int, ...]]] = [(Fraction(0), Fraction(1), ())]
    for clique in nx.enumerate_all_cliques(complement):
        exponent = sum((rates[u].exponent for u in clique), Fraction(0))
        coefficient = Fraction(1)
        for u in clique:
            coefficient *= rates[u].coefficient
        candidates.append((exponent, coefficient, tuple(sorted(clique))))

    top = max(exponent for exponent, _, _ in candidates)
    leaders = [(c, users) for exponent, c, users in candidates if exponent == top]
    g_coefficient = max(c for c, _ in leaders)
    psi = sum((c for c, _ in leaders), Fraction(0)) / g_coefficient

    fastest = max(r.exponent for r in rates)
    total_rate = AsymptoticMean(
        coefficient=sum((r.coefficient for r in rates if r.exponent == fastest), Fraction(0)),
        exponent=fastest,
    )

    constants = ExtensionConstants(
        g=AsymptoticMean(coefficient=g_coefficient, exponent=top),
        psi=psi,
        eta=min(r.exponent for r in rates),
        total_rate=total_rate,
        maximizers=tuple(sorted(users for _, users in leaders)),
    )
    logger.debug("Константы компоненты: g={}·ν^{}, ψ={}, η={}", g_coefficient, top, psi, constants.eta)
    return constants
