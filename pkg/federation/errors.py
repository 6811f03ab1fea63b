"""
Hierarquia de exceções do núcleo de simulação

Cada domínio de falha tem sua própria classe; todas herdam de
FederationError para que a CLI consiga tratá-las de forma uniforme.
"""

from typing import Optional


class FederationError(Exception):
    """Exceção base de todo o simulador"""
    pass


class ConfigurationError(FederationError):
    """Parâmetro inválido ou combinação de parâmetros inconsistente"""

    def __init__(self, message: str, key: Optional[str] = None):
        """
        Args:
            message: Mensagem de erro
            key: Caminho da chave de configuração (ex: "clipfl.p"), se conhecido
        """
        self.key = key
        self.message = f"{key}: {message}" if key else message
        super().__init__(self.message)


class IngestionError(FederationError):
    """Falha ao ler um dataset externo (CSV)"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.message = f"linha {line}: {message}" if line is not None else message
        super().__init__(self.message)


class DataError(FederationError):
    """Dados fora do domínio esperado (ex: rótulo >= K)"""
    pass


class ShapeError(FederationError):
    """Dimensões incompatíveis entre parâmetros e dados"""
    pass


class EvaluationError(FederationError):
    """Avaliação impossível (ex: conjunto vazio)"""
    pass


class EmptyShardError(FederationError):
    """Cliente sem amostras: sinaliza que o ClientUpdate deve ser pulado"""

    def __init__(self, client_id: int):
        self.client_id = client_id
        super().__init__(f"cliente {client_id} não possui amostras locais")


class FusionError(FederationError):
    """Entrada inválida para a agregação no servidor"""
    pass


class StateError(FederationError):
    """Estado da federação inconsistente com a operação pedida"""
    pass


class ProtocolError(FederationError):
    """Violação da ordem das fases do protocolo (ex: poda executada duas vezes)"""
    pass


class IdentificationError(FederationError):
    """Métrica de identificação indefinida (conjunto vazio)"""
    pass


class RoundError(FederationError):
    """Falha dentro de uma rodada, com o índice da rodada como contexto"""

    def __init__(self, message: str, round_index: int):
        self.round_index = round_index
        self.message = f"rodada {round_index}: {message}"
        super().__init__(self.message)
