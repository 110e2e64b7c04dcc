
import networkx as nx

from src.logger import logger

from ..errors import ConfigError, EmptyComponent, NonMinimalComponent
from ..schema import NetworkSpec


def conflict_graph(size: int, edges) -> nx.Graph:
    """Граф конфликтов внутри одной компоненты."""
    graph = nx.Graph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from(edges)
    return graph


def split_of(size: int, edges) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Разбиение компоненты на две полностью конфликтующие части, если оно есть.

    Такое разбиение существует ровно тогда, когда дополнение графа конфликтов несвязно.
    """
    if size < 2:
        return None
    complement = nx.complement(conflict_graph(size, edges))
    if nx.is_connected(complement):
        return None
    parts = sorted(sorted(p) for p in nx.connected_components(complement))
    left = tuple(parts[0])
    right = tuple(sorted(u for p in parts[1:] for u in p))
    return left, right


def validate_spec(spec: NetworkSpec) -> NetworkSpec:
    if spec.K < 1:
        raise EmptyComponent("сеть без компонент")

    for k, component in enumerate(spec.components, start=1):
        if component.size < 1:
            raise EmptyComponent(f"компонента {k} пуста (L_{k} = {component.size})")

        for u, v in component.intra_edges:
            if not (0 <= u < component.size and 0 <= v < component.size) or u == v:
                raise ConfigError(f"компонента {k}: недопустимое ребро ({u}, {v}) при L_{k} = {component.size}")

        if component.user_rates is not None and not component.intra_edges:
            raise ConfigError(f"компонента {k}: индивидуальные скорости задаются только вместе с intra_edges")

        if component.user_rates is not None and len(component.user_rates) != component.size:
            raise ConfigError(
                f"компонента {k}: {len(component.user_rates)} индивидуальных скоростей при L_{k} = {component.size}"
            )

        split = split_of(component.size, component.intra_edges)
        if split is not None:
            raise NonMinimalComponent(k, *split)

    logger.debug("Спецификация валидна: K={}, L={}", spec.K, spec.sizes)
    return spec
