"""
Núcleo do simulador de aprendizado federado com poda de clientes ruidosos (ClipFL)

Subpacotes:
- data: datasets, geração sintética, divisão e CSV
- model: MLP, loss, treino local e avaliação
- aggregation: fusão no servidor (FedAvg, FedProx, FedNova, FedAdam)
- clipfl: ranking, NCS, poda e métricas de identificação
- engine: laço de rodadas e relatório
"""
