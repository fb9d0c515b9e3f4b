"""Process-wide tunables. The CLI overrides these from its global flags."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Settings:
    # rings up to this order get dense Cayley tables
    dense_cap: int = 4096
    # structured (computed) rings above this order are refused
    structured_cap: int = 1 << 20
    # random triples for axiom validation of large rings
    sample_budget: int = 100_000
    # rings up to this order get exhaustive axiom validation
    exhaustive_limit: int = 256
    # largest order**n scanned by is_n_vnl
    nvnl_max_tuples: int = 64**3
    # theorem checks skip corpus rings above this order (they are still built and validated)
    analysis_cap: int = 4096
    # numpy work-chunk size (elements per vectorized block)
    chunk: int = 1 << 22


settings = Settings()
