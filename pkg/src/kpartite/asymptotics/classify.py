from fractions import Fraction

from src.logger import logger

from ..errors import NotPowerLaw, SameBranch
from ..model.spec import validate_spec
from ..model.star import check_state
from ..schema import AsymptoticMean, BranchClassification, NetworkSpec, StarState


def _require_power_law(spec: NetworkSpec) -> None:
    if not spec.aggregable:
        raise NotPowerLaw("классификация требует общей степенной скорости f_k = c_k ν^{a_k} на каждую компоненту")


def _scenario(alpha: Fraction, gamma: dict, beta: dict, A: tuple, S: tuple) -> tuple[str, tuple[str, ...]]:
    """Метка сценария; при совпадении с уточнённой строкой возвращается звёздная, общая — в aliases."""
    if alpha == 1:
        return "3", ()

    ratios = {beta[k] / gamma[k] for k in A}
    gamma_S = sum((gamma[k] for k in S), Fraction(0))
    beta_A = sum((beta[k] for k in A), Fraction(0))

    if alpha == 0:
        if not A and not S:
            return "1a", ()
        if A and not S:
            return ("1b*", ("1b",)) if len(ratios) == 1 else ("1b", ())
        if S and not A:
            return "1c", ()
        return "1d", ()

    if not A and not S:
        return "2a", ()
    if A and not S:
        if len(ratios) != 1:
            return "2b", ()
        ratio = ratios.pop()
        if ratio == (1 - alpha) / alpha:
            if ratio == beta_A:
                return "2b***", ("2b**", "2b*", "2b")
            return "2b**", ("2b*", "2b")
        return "2b*", ("2b",)
    if S and not A:
        if alpha == gamma_S / (1 + gamma_S):
            return "2c*", ("2c",)
        return "2c", ()
    return "2d", ()


def classify(spec: NetworkSpec, k1: int, l1: int, k2: int, l2: int) -> BranchClassification:
    validate_spec(spec)
    _require_power_law(spec)
    if k1 == k2:
        raise SameBranch(f"k1 = k2 = {k1}: переход внутри одной ветви не классифицируется")
    check_state(spec, StarState.at(k1, l1))
    check_state(spec, StarState.at(k2, l2))

    L = {k: spec.size(k) for k in range(1, spec.K + 1)}
    a = {k: spec.rate(k).exponent for k in L}
    c = {k: spec.rate(k).coefficient for k in L}

    # γ_k: ветви с максимальным показателем a_k L_k делят массу пропорционально c_k^{L_k}
    others = [k for k in L if k != k2]
    e = {k: a[k] * L[k] for k in others}
    e_star = max(e.values())
    K_star = tuple(k for k in others if e[k] == e_star)
    weight = {k: c[k] ** L[k] for k in K_star}
    total = sum(weight.values(), Fraction(0))
    gamma = {k: (weight[k] / total if k in K_star else Fraction(0)) for k in others}

    # β_k: сравнение a_k с a_{k2}
    beta: dict[int, Fraction | None] = {}
    for k in K_star:
        if a[k] < a[k2]:
            beta[k] = Fraction(0)
        elif a[k] == a[k2]:
            beta[k] = Fraction(L[k]) * c[k] / (L[k2] * c[k2])
        else:
            beta[k] = None

    N = tuple(k for k in K_star if beta[k] == 0)
    S = tuple(k for k in K_star if beta[k] is None)
    A = tuple(k for k in K_star if k not in N and k not in S)

    # E A ~ c^{L−1} ν^{a(L−1)} / L,  E B ~ Σ_{K*} c^L ν^{e*−a_{k2}} / (L_{k2} c_{k2})
    term_A = AsymptoticMean(coefficient=c[k1] ** (L[k1] - 1) / L[k1], exponent=a[k1] * (L[k1] - 1))
    term_B = AsymptoticMean(coefficient=total / (L[k2] * c[k2]), exponent=e_star - a[k2])
    if term_A.exponent > term_B.exponent:
        alpha = Fraction(1)
    elif term_A.exponent < term_B.exponent:
        alpha = Fraction(0)
    else:
        alpha = term_A.coefficient / (term_A.coefficient + term_B.coefficient)

    scenario, aliases = _scenario(alpha, gamma, beta, A, S)
    logger.info(
        "Классификация ({},{})→({},{}): K*={}, N={}, A={}, S={}, α={}, сценарий {}",
        k1, l1, k2, l2, K_star, N, A, S, alpha, scenario,
    )
    return BranchClassification(
        k1=k1, l1=l1, k2=k2, l2=l2,
        gamma=gamma,
        beta=beta,
        alpha=alpha,
        K_star=K_star,
        partition_N=N,
        partition_A=A,
        partition_S=S,
        scenario=scenario,
        aliases=aliases,
        term_A=term_A,
        term_B=term_B,
    )


def asym_mean_transition(classification: BranchClassification, spec: NetworkSpec) -> AsymptoticMean:
    """Главный член E T_{(k1,l1),(k2,l2)}: E A + E B, доминируемое слагаемое отбрасывается."""
    result = classification.term_A + classification.term_B
    if result.exponent < 0:
        raise ValueError(f"отрицательный показатель среднего времени: {result.exponent}")
    return result


def homogeneous_alpha(spec: NetworkSpec, k1: int, k2: int) -> Fraction:
    """α для сетей с одинаковыми скоростями: 0, если k1 ∉ K_*, иначе L_{k2}/(L_{k2} + |K_*| L_*)."""
    others = [k for k in range(1, spec.K + 1) if k != k2]
    L_star = max(spec.size(k) for k in others)
    K_star = [k for k in others if spec.size(k) == L_star]
    if k1 not in K_star:
        return Fraction(0)
    return Fraction(spec.size(k2), spec.size(k2) + len(K_star) * L_star)
