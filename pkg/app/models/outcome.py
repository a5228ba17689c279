"""
Trial outcomes and outage estimates
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class TrialOutcome:
    """SINRs of the four secondary links and the outage decision of one trial"""
    gamma_rs1: float
    gamma_rs2: float
    gamma_a: float
    gamma_b: float
    outage: bool
    pre_doomed: bool
    ia_iterations: int = 0

    @property
    def min_sinr(self) -> float:
        return min(self.gamma_rs1, self.gamma_rs2, self.gamma_a, self.gamma_b)


@dataclass(frozen=True)
class OutageEstimate:
    """Monte-Carlo outage probability of one scheme at one sweep point"""
    scheme: str
    sweep_variable: str
    sweep_value: float
    trials: int
    outage_count: int
    probability: float
    ci_low: float
    ci_high: float
    master_seed: int
    pre_doomed_count: int = 0
    mean_ia_iterations: float = 0.0

    def __repr__(self):
        return (f'<OutageEstimate {self.scheme} {self.sweep_variable}={self.sweep_value} '
                f'p={self.probability:.3e} [{self.ci_low:.3e}, {self.ci_high:.3e}]>')


@dataclass(frozen=True)
class OracleResult:
    """Best grid point of the brute-force (ρ_A, ρ_B, θ) search"""
    feasible: bool
    rho_a: float = 0.0
    rho_b: float = 0.0
    theta: float = 0.5
    min_sinr: float = 0.0


@dataclass(frozen=True)
class OracleReport:
    """Closed-form vs grid comparison over many realizations"""
    realizations: int
    grid_size: int
    infeasible: int
    mismatches: int
    max_deviation: float

    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and self.max_deviation <= 2.0 / self.grid_size
