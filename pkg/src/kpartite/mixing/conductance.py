import math
from collections.abc import Iterable
from fractions import Fraction

import numpy as np
from scipy.special import logsumexp

from src.logger import logger

from ..errors import EmptySubset, FullSubset, NoEligibleBranch
from ..model import check_state, star_chain
from ..model.star import star_log_weights
from ..schema import ConductanceReport, NetworkSpec, StarState


def branch_subset(spec: NetworkSpec, k: int) -> tuple[StarState, ...]:
    return tuple(StarState.at(k, l) for l in range(1, spec.size(k) + 1))


def branch_conductance_asymptotic(spec: NetworkSpec, k: int) -> tuple[Fraction, Fraction]:
    """Φ(B_k) ~ L_k c_k^{1−L_k} ν^{−a_k(L_k−1)}."""
    rate, L = spec.rate(k), spec.size(k)
    return L * rate.coefficient ** (1 - L), -rate.exponent * (L - 1)


def _describe(spec: NetworkSpec, subset: tuple[StarState, ...]) -> tuple[str, int | None]:
    for k in range(1, spec.K + 1):
        if set(subset) == set(branch_subset(spec, k)):
            return f"B_{k}", k
    return "{" + ", ".join(sorted(str(s) for s in subset)) + "}", None


def conductance(spec: NetworkSpec, nu: float, subset: Iterable[StarState]) -> ConductanceReport:
    """Φ(S) = Q(S, S^c)/π_S точными суммами по граничным парам звезды."""
    subset = tuple(dict.fromkeys(subset))
    if not subset:
        raise EmptySubset("пустое подмножество S")
    chain = star_chain(spec, nu)

    inside = np.zeros(chain.size, dtype=bool)
    for state in subset:
        inside[chain.index[check_state(spec, state)]] = True
    if inside.all():
        raise FullSubset("S совпадает со всем пространством")

    logs = star_log_weights(spec, nu)
    log_in = logsumexp(logs[inside])
    log_total = np.logaddexp(log_in, logsumexp(logs[~inside]))
    # log π_S = −log(1 + π_{S^c}/π_S): не округляется до 0 при π_S → 1
    log_mass = float(log_in - log_total)
    mass = math.exp(log_mass)

    # Q(S, S^c) = Σ_{x∈S, y∉S} π_x q(x, y)
    rates = chain.rates.tocoo()
    boundary = inside[rates.row] & ~inside[rates.col]
    flow_terms = logs[rates.row[boundary]] + np.log(rates.data[boundary]) - log_total
    flow = float(np.exp(logsumexp(flow_terms))) if boundary.any() else 0.0
    # log Φ = log Q − log π_S
    phi = float(np.exp(logsumexp(flow_terms) - log_mass)) if boundary.any() else 0.0

    label, k = _describe(spec, subset)
    coefficient, exponent = branch_conductance_asymptotic(spec, k) if k is not None else (None, None)
    logger.debug("Проводимость {} при ν={:g}: Q={:.6g}, π_S={:.6g}, Φ={:.6g}", label, nu, flow, mass, phi)
    return ConductanceReport(
        subset=label,
        flow=flow,
        mass=mass,
        log_mass=log_mass,
        conductance=phi,
        asymptotic_coefficient=coefficient,
        asymptotic_exponent=exponent,
    )


def limiting_branch_masses(spec: NetworkSpec) -> dict[int, Fraction]:
    """lim π_{B_k}: масса делится между ветвями с максимальным a_k L_k пропорционально c_k^{L_k}."""
    exponents = {k: spec.rate(k).exponent * spec.size(k) for k in range(1, spec.K + 1)}
    top = max(exponents.values())
    weights = {k: spec.rate(k).coefficient ** spec.size(k) for k in exponents if exponents[k] == top}
    total = sum(weights.values(), Fraction(0))
    return {k: weights.get(k, Fraction(0)) / total for k in exponents}


def kappa_branch(spec: NetworkSpec, r: float) -> int:
    """Ветвь с наибольшим асимптотическим средним временем выхода среди ветвей с lim π_{B_k} ≤ r."""
    masses = limiting_branch_masses(spec)
    eligible = [k for k, m in masses.items() if m <= Fraction(r)]
    if not eligible:
        raise NoEligibleBranch(f"нет ветвей с предельной массой ≤ r={r}: {dict((k, str(m)) for k, m in masses.items())}")

    def key(k: int) -> tuple[Fraction, Fraction, int]:
        rate, L = spec.rate(k), spec.size(k)
        return rate.exponent * (L - 1), rate.coefficient ** (L - 1) / L, -k

    kappa = max(eligible, key=key)
    logger.debug("κ(r={:g}) = {} среди {}", r, kappa, eligible)
    return kappa
