"""Monte Carlo experiments tying simulation, estimation, and exact theory.

Each trial is a pure function of (master seed, trial index): a fresh lazy
tree, a suspect set, a source drawn from it, one spreading run, one MAP
estimate.  Reports therefore do not depend on trial execution order, and
rerunning a config reproduces the report byte for byte.  Empirical rates
carry Wilson score intervals and sit next to the matching exact value and
its large-n limit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .estimator import (make_suspects_all, make_suspects_connected,
                        make_suspects_two, map_estimate)
from .exactprob import (pc_all_suspects, pc_connected, pc_two_suspects,
                        phi1, phi2, phi3)
from .spread import BACKENDS, SpreadConfig, simulate_si
from .topology import LazyRegularTree

SCENARIOS = ("all-suspects", "connected-k", "two-at-d")

# 97.5% normal quantile: 95% Wilson score intervals
_Z95 = 1.959963984540054

CSV_COLUMNS = (
    "scenario", "delta", "n", "k", "d", "trials", "seed",
    "empirical_pc", "ci_low", "ci_high",
    "exact_pc", "exact_method", "asymptotic_pc",
)


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple:
    """Score interval for a binomial proportion; safe at 0 and 1."""
    if trials < 1:
        raise ValidationError("need at least one trial")
    if not 0 <= successes <= trials:
        raise ValidationError(f"successes {successes} outside [0, {trials}]")
    p = successes / trials
    z2 = z * z
    center = p + z2 / (2 * trials)
    spread = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials))
    denom = 1 + z2 / trials
    lo = max(0.0, (center - spread) / denom)
    hi = min(1.0, (center + spread) / denom)
    if successes == 0:
        lo = 0.0
    if successes == trials:
        hi = 1.0
    return (lo, hi)


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    delta: int
    n: int
    trials: int
    seed: int
    k: int | None = None
    d: int | None = None
    backend: str = "uniform-boundary"

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValidationError(
                f"unknown scenario {self.scenario!r}; choose from {SCENARIOS}"
            )
        if self.delta < 2:
            raise ValidationError(f"degree must be >= 2, got {self.delta}")
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if self.backend not in BACKENDS:
            raise ValidationError(f"unknown backend {self.backend!r}")
        if self.scenario == "connected-k":
            if self.k is None or self.k < 1:
                raise ValidationError("connected-k needs k >= 1")
        elif self.k is not None:
            raise ValidationError("k applies only to connected-k")
        if self.scenario == "two-at-d":
            if self.d is None or self.d < 1:
                raise ValidationError("two-at-d needs d >= 1")
        elif self.d is not None:
            raise ValidationError("d applies only to two-at-d")


@dataclass(frozen=True)
class ExperimentReport:
    config: ExperimentConfig
    successes: int
    empirical_pc: float
    ci_low: float
    ci_high: float
    exact_pc: float
    exact_method: str
    asymptotic_pc: float | None

    # passthroughs so sweep consumers don't have to reach into config
    @property
    def scenario(self):
        return self.config.scenario

    @property
    def delta(self):
        return self.config.delta

    @property
    def n(self):
        return self.config.n

    @property
    def k(self):
        return self.config.k

    @property
    def d(self):
        return self.config.d

    @property
    def trials(self):
        return self.config.trials

    @property
    def seed(self):
        return self.config.seed

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "scenario": cfg.scenario,
            "delta": cfg.delta,
            "n": cfg.n,
            "k": cfg.k,
            "d": cfg.d,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "backend": cfg.backend,
            "successes": self.successes,
            "empirical_pc": self.empirical_pc,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "exact_pc": self.exact_pc,
            "exact_method": self.exact_method,
            "asymptotic_pc": self.asymptotic_pc,
        }

    def csv_row(self) -> list[str]:
        d = self.to_dict()
        out = []
        for col in CSV_COLUMNS:
            v = d[col]
            out.append("" if v is None else repr(v) if isinstance(v, float) else str(v))
        return out


def _trial_streams(seed: int, trial: int) -> tuple:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    draw, sim, tie = (int(x) for x in ss.generate_state(3, np.uint64))
    return draw, sim, tie


def run_trial(cfg: ExperimentConfig, trial: int) -> bool:
    """One independent trial; True when the estimator names the source."""
    draw_seed, sim_seed, tie_seed = _trial_streams(cfg.seed, trial)
    g = LazyRegularTree(cfg.delta)
    suspects = None
    if cfg.scenario == "all-suspects":
        source = 0
    elif cfg.scenario == "connected-k":
        suspects = make_suspects_connected(g, 0, cfg.k)
        members = sorted(suspects.members)
        source = members[random.Random(draw_seed).randrange(len(members))]
    else:
        far = g.path_from_origin(cfg.d)[-1]
        suspects = make_suspects_two(g, 0, far)
        pair = sorted(suspects.members)
        source = pair[random.Random(draw_seed).randrange(2)]
    snap = simulate_si(g, SpreadConfig(source=source, n=cfg.n, seed=sim_seed,
                                       backend=cfg.backend))
    if suspects is None:
        suspects = make_suspects_all(snap)
    est = map_estimate(snap, suspects, tie_seed=tie_seed)
    return est.chosen == source


def _references(cfg: ExperimentConfig) -> tuple:
    if cfg.scenario == "all-suspects":
        res = pc_all_suspects(cfg.delta, cfg.n)
        asym = phi1(cfg.delta) if cfg.delta >= 3 else None
    elif cfg.scenario == "connected-k":
        res = pc_connected(cfg.delta, cfg.k, cfg.n)
        asym = phi2(cfg.delta, cfg.k) if cfg.delta >= 3 else None
    else:
        res = pc_two_suspects(cfg.delta, cfg.d, cfg.n)
        asym = phi3(cfg.delta) if cfg.delta >= 3 and cfg.d == 1 else None
    return float(res.value), res.method, asym


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run all trials and attach exact and limiting reference values."""
    successes = sum(run_trial(cfg, t) for t in range(cfg.trials))
    lo, hi = wilson_interval(successes, cfg.trials)
    exact_pc, method, asym = _references(cfg)
    return ExperimentReport(
        config=cfg,
        successes=successes,
        empirical_pc=successes / cfg.trials,
        ci_low=lo,
        ci_high=hi,
        exact_pc=exact_pc,
        exact_method=method,
        asymptotic_pc=asym,
    )


# ---------------------------------------------------------------------------
# figure-style sweeps

_FIG_DEFAULTS = {
    "fig7": {"deltas": (2, 3, 4, 6, 8, 12, 16, 24, 36, 50)},
    "fig8": {"deltas": (2, 3, 4, 6, 8, 12, 16, 24), "ks": (2, 5, 10)},
    "fig9": {"deltas": (2, 3, 4, 6, 8, 12, 16, 24), "ds": (1, 2)},
    "fig10": {"deltas": (4,), "ks": (2, 4, 10, 20, 50, 100, 400, 1000, 4000)},
}


def figure_sweep(figure: str, seed: int, n: int = 500, trials: int = 2000,
                 deltas=None, ks=None, ds=None) -> list[ExperimentReport]:
    """Desk-scale parameter sweeps behind the four standard plots.

    fig7: all suspects vs degree.  fig8: connected suspects vs degree, one
    curve per k.  fig9: two suspects vs degree, one curve per distance.
    fig10: connected suspects vs k at fixed degree.  Override any axis with
    the keyword arguments.
    """
    if figure not in _FIG_DEFAULTS:
        raise ValidationError(
            f"unknown figure {figure!r}; choose from {sorted(_FIG_DEFAULTS)}"
        )
    defaults = _FIG_DEFAULTS[figure]
    deltas = tuple(deltas) if deltas is not None else defaults.get("deltas")
    ks = tuple(ks) if ks is not None else defaults.get("ks")
    ds = tuple(ds) if ds is not None else defaults.get("ds")
    reports = []
    if figure == "fig7":
        for delta in deltas:
            cfg = ExperimentConfig("all-suspects", delta, n, trials, seed)
            reports.append(run_experiment(cfg))
    elif figure in ("fig8", "fig10"):
        for k in ks:
            for delta in deltas:
                cfg = ExperimentConfig("connected-k", delta, n, trials, seed, k=k)
                reports.append(run_experiment(cfg))
    else:
        for d in ds:
            for delta in deltas:
                cfg = ExperimentConfig("two-at-d", delta, n, trials, seed, d=d)
                reports.append(run_experiment(cfg))
    return reports


def reports_to_csv(reports) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in reports:
        lines.append(",".join(r.csv_row()))
    return "\n".join(lines) + "\n"
