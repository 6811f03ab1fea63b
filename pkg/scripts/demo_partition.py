#!/usr/bin/env python3
"""
Demonstração do particionamento IID vs Dirichlet(α)
"""

import numpy as np

from federation.partition import class_histogram, partition_dirichlet, partition_iid
from federation.rng import RngStream

K = 10
PER_CLASS = 100
NUM_CLIENTS = 8

labels = np.repeat(np.arange(K), PER_CLASS)
train = np.arange(labels.size)


def show(title: str, shards) -> None:
    hist = class_histogram(shards, K)
    print(f"\n{title}")
    print("-" * 80)
    print("  cliente | " + " ".join(f"{c:>4}" for c in range(K)) + " | total")
    for shard, row in zip(shards, hist):
        print(f"  {shard.client_id:>7} | " + " ".join(f"{int(v):>4}" for v in row) + f" | {shard.size:>5}")
    # Quanto maior, mais concentrado em poucas classes
    dominance = hist.max(axis=1) / np.maximum(hist.sum(axis=1), 1)
    print(f"  📊 Fração média da classe dominante: {dominance.mean():.2f}")


print("=" * 80)
print("🧩 DEMONSTRAÇÃO: PARTICIONAMENTO DE CLIENTES")
print("=" * 80)

show("⚖️  IID", partition_iid(train, labels, NUM_CLIENTS, RngStream(42, "partition")))

for alpha in (100.0, 0.5, 0.1):
    shards = partition_dirichlet(train, labels, NUM_CLIENTS, alpha, RngStream(42, "partition"))
    show(f"🎯 Dirichlet α = {alpha}", shards)

print("\n" + "=" * 80)
print("✅ Demonstração concluída!")
print("=" * 80)
