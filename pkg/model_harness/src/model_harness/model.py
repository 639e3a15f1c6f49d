"""The classifier: averaged token embeddings per node, one gated graph
recurrence step, three parallel 1D convolutions with max pooling, a 128-unit
hidden layer and a single logit.

Embeddings start from the standard normal distribution. Each edge kind and
direction owns its own message transform in the recurrence. Node sequences
shorter than the widest kernel are zero padded to length three.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import torch
from torch import nn

from .data import EDGE_KINDS, GraphSample


class ShapeError(ValueError):
    """Tensor shapes do not line up with the graph."""


@dataclass
class ModelConfig:
    embed_dim: int = 100
    ggru_steps: int = 1
    conv_filters: int = 128
    kernel_sizes: tuple[int, ...] = (1, 2, 3)
    hidden: int = 128
    dropout: float = 0.25
    batch: int = 32
    lr: float = 0.001
    epochs: int = 8
    seeds: tuple[int, ...] = field(default_factory=lambda: tuple(range(10)))


class GatedGraphStep(nn.Module):
    """One gated message-passing update over typed, directed adjacency."""

    def __init__(self, dim: int, n_kinds: int = len(EDGE_KINDS)):
        super().__init__()
        self.forward_maps = nn.ModuleList(
            nn.Linear(dim, dim, bias=False) for _ in range(n_kinds))
        self.reverse_maps = nn.ModuleList(
            nn.Linear(dim, dim, bias=False) for _ in range(n_kinds))
        self.cell = nn.GRUCell(dim, dim)

    def forward(self, h: torch.Tensor, adjacency: torch.Tensor) -> torch.Tensor:
        if adjacency.dim() != 3 or adjacency.shape[1:] != (h.shape[0],) * 2:
            raise ShapeError(
                f"adjacency {tuple(adjacency.shape)} does not fit "
                f"{h.shape[0]} nodes")
        message = torch.zeros_like(h)
        for k in range(adjacency.shape[0]):
            a = adjacency[k]
            message = message + a.T @ self.forward_maps[k](h)
            message = message + a @ self.reverse_maps[k](h)
        return self.cell(message, h)


class GraphClassifier(nn.Module):
    def __init__(self, vocab_size: int, cfg: ModelConfig | None = None):
        super().__init__()
        self.cfg = cfg = cfg or ModelConfig()
        self.embedding = nn.Embedding(vocab_size, cfg.embed_dim, padding_idx=0)
        nn.init.normal_(self.embedding.weight, mean=0.0, std=1.0)
        with torch.no_grad():
            self.embedding.weight[0].zero_()
        self.recurrence = GatedGraphStep(cfg.embed_dim)
        self.convs = nn.ModuleList(
            nn.Conv1d(cfg.embed_dim, cfg.conv_filters, k)
            for k in cfg.kernel_sizes)
        self.concat_width = cfg.conv_filters * len(cfg.kernel_sizes)
        self.hidden = nn.Linear(self.concat_width, cfg.hidden)
        self.out = nn.Linear(cfg.hidden, 1)
        self.dropout = nn.Dropout(cfg.dropout)

    def node_features(self, sample: GraphSample) -> torch.Tensor:
        """Masked mean of each node's token embeddings; (N, embed_dim)."""
        emb = self.embedding(sample.token_ids)
        mask = sample.token_mask.unsqueeze(-1)
        counts = sample.token_mask.sum(dim=1, keepdim=True).clamp(min=1.0)
        return (emb * mask).sum(dim=1) / counts

    def ggru(self, features: torch.Tensor,
             adjacency: torch.Tensor) -> torch.Tensor:
        h = features
        for _ in range(self.cfg.ggru_steps):
            h = self.recurrence(h, adjacency)
        return h

    def conv_pool_logit(self, features: torch.Tensor) -> torch.Tensor:
        """Node features in linear (DFS) order to one logit."""
        min_len = max(self.cfg.kernel_sizes)
        if features.shape[0] < min_len:
            pad = torch.zeros(min_len - features.shape[0], features.shape[1],
                              dtype=features.dtype, device=features.device)
            features = torch.cat([features, pad], dim=0)
        x = features.T.unsqueeze(0)                       # (1, dim, N)
        pooled = [torch.relu(conv(x)).max(dim=2).values for conv in self.convs]
        cat = self.dropout(torch.cat(pooled, dim=1))      # (1, 384)
        hid = self.dropout(torch.relu(self.hidden(cat)))  # (1, 128)
        return self.out(hid).reshape(())

    def forward(self, sample: GraphSample) -> torch.Tensor:
        h = self.node_features(sample)
        h = self.ggru(h, sample.adjacency)
        return self.conv_pool_logit(h)
