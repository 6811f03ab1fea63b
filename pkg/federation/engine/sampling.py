"""
Amostragem de clientes por rodada
"""

from typing import List, Sequence

from federation.errors import ConfigurationError
from federation.rng import RngStream, floor_fraction


def sample_clients(pool: Sequence[int], sample_rate: float, rng: RngStream) -> List[int]:
    """
    Sorteia ⌊|S|·C⌋ clientes sem reposição

    Args:
        pool: Clientes elegíveis S (ativos e com amostras)
        sample_rate: C em (0, 1]
        rng: Stream da rodada

    Returns:
        Clientes sorteados em ordem crescente de id

    Raises:
        ConfigurationError: Se C estiver fora de (0, 1] ou ⌊|S|·C⌋ = 0

    Examples:
        >>> len(sample_clients(range(100), 0.1, rng))
        10
        >>> sample_clients([4, 1, 9], 1.0, rng)
        [1, 4, 9]
    """
    if not 0.0 < sample_rate <= 1.0:
        raise ConfigurationError(f"C deve estar em (0, 1], recebeu {sample_rate}", key="federation.sample_rate")
    pool = sorted(int(cid) for cid in pool)
    count = floor_fraction(sample_rate, len(pool))
    if count == 0:
        raise ConfigurationError(
            f"⌊{len(pool)}·{sample_rate}⌋ = 0 clientes por rodada", key="federation.sample_rate"
        )
    if count == len(pool):
        return pool
    return sorted(rng.sample_without_replacement(pool, count))
