"""Run parameters, grouped so scripts and the CLI share defaults."""

from dataclasses import asdict, dataclass, field

from .sampling import DEFAULT_SEED


@dataclass(frozen=True)
class CheckConfig:
    rng: int = 5
    basis_budget: int = 10
    k_range: int = 4
    random_vectors: int = 0


@dataclass(frozen=True)
class ProbeConfig:
    N: int = 3
    L: int = 4
    window: int = 7
    workers: int = 1
    saturate: bool = True


@dataclass(frozen=True)
class SearchConfig:
    h_bounds: tuple = (0, 1)
    pole_candidates: tuple = ()
    coeff_box: tuple = ()
    budget: int = 10_000
    workers: int = 1


@dataclass(frozen=True)
class AcceptanceConfig:
    seed: int = DEFAULT_SEED
    samples: int = 20
    ore_range: int = 8
    module_range: int = 5
    basis_budget: int = 10
    time_limit: float = 10.0
    probe: ProbeConfig = field(default_factory=ProbeConfig)

    def to_dict(self):
        return asdict(self)
