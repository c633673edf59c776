"""Monte Carlo harness: seeded trials, budget sweeps, CSV output.

Per-trial randomness is position-derived: trial (g, j) of a sweep draws its
stream from SeedSequence(master_seed, spawn_key=(g, j)), so results do not
depend on execution order and any subset of trials can be reproduced.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .codec import build_signature, decode, derive_params, encode, field_degree_for
from .graphs import sample_graph

CSV_COLUMNS = ["m_over_K", "t", "ell", "N", "K", "trials",
               "success_rate", "mean_unidentified", "stderr", "seed"]


@dataclass(frozen=True)
class TrialConfig:
    """One simulated operating point (fixed design, random support)."""

    n_items: int
    k: int
    t: int
    ell: int
    m_groups: int
    root_method: str = "chien"

    def __post_init__(self):
        if not 0 <= self.k <= self.n_items:
            raise ValueError(f"need 0 <= K <= N, got K={self.k}, N={self.n_items}")


@dataclass
class SweepPoint:
    m_over_k: float
    m_used: int
    m_groups: int
    trials: int
    success_rate: float
    mean_unidentified: float
    stderr: float


def run_trial(cfg: TrialConfig, trial_seed, graph=None) -> tuple[bool, float]:
    """One trial: sample support (and graph unless given), encode, decode.

    Returns (exact recovery?, fraction of defectives left unidentified).
    """
    rng = np.random.default_rng(trial_seed)
    if graph is None:
        graph = sample_graph(cfg.n_items, cfg.m_groups, cfg.ell,
                             seed=int(rng.integers(1 << 62)))
    support = set(rng.choice(cfg.n_items, size=cfg.k, replace=False).tolist())
    sig = build_signature(cfg.t, graph.max_right_degree)
    y = encode(graph, sig, support)
    outcome = decode(graph, sig, y, method=cfg.root_method)
    missed = len(support - outcome.recovered)
    fraction = missed / cfg.k if cfg.k else 0.0
    return outcome.recovered == support, fraction


def groups_within_budget(n_items: int, t: int, ell: int, m_budget: int) -> int:
    """Largest M with M * s(M) + 1 <= m_budget, where s depends on M through
    the max right degree.  M * s(M) is not monotone in M (the field degree
    steps down as M grows), so scan downward from the count-only bound.
    """
    upper = (m_budget - 1) // (t * 3 + 1)  # s >= t*3 + 1 always
    for m in range(min(upper, n_items * ell), ell - 1, -1):
        r_max = math.ceil(n_items * ell / m)
        if r_max > n_items:
            continue
        try:
            s = t * field_degree_for(r_max, t) + 1
        except ValueError:
            continue  # r_max too large for the field table at this small M
        if m * s + 1 <= m_budget:
            return m
    raise ValueError(f"no feasible design fits m_budget={m_budget} "
                     f"(N={n_items}, t={t}, ell={ell})")


def run_sweep(n_items: int, k: int, t: int, m_over_k_grid, trials: int,
              master_seed: int, ell: int | str = "auto",
              fixed_graph: bool = False,
              root_method: str = "chien") -> list[SweepPoint]:
    """Success statistics across a grid of test budgets m = (m/K) * K.

    Each grid point inverts its budget to the largest feasible M, then runs
    `trials` independent trials.  fixed_graph reuses one graph per grid point
    instead of resampling per trial.
    """
    if ell == "auto":
        ell = derive_params(n_items, max(k, 1), t).ell
    points = []
    for g_idx, m_over_k in enumerate(m_over_k_grid):
        m_budget = int(round(m_over_k * k))
        m_groups = groups_within_budget(n_items, t, ell, m_budget)
        r_max = math.ceil(n_items * ell / m_groups)
        s = t * field_degree_for(r_max, t) + 1
        cfg = TrialConfig(n_items=n_items, k=k, t=t, ell=ell,
                          m_groups=m_groups, root_method=root_method)
        graph = None
        if fixed_graph:
            base = np.random.SeedSequence(master_seed, spawn_key=(g_idx,))
            graph = sample_graph(n_items, m_groups, ell,
                                 seed=int(base.generate_state(1)[0]))
        successes = 0
        fractions = np.zeros(trials)
        for j in range(trials):
            seq = np.random.SeedSequence(master_seed, spawn_key=(g_idx, j))
            ok, frac = run_trial(cfg, seq, graph=graph)
            successes += ok
            fractions[j] = frac
        stderr = float(fractions.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
        points.append(SweepPoint(
            m_over_k=float(m_over_k), m_used=m_groups * s + 1, m_groups=m_groups,
            trials=trials, success_rate=successes / trials,
            mean_unidentified=float(fractions.mean()), stderr=stderr,
        ))
    return points


def sweep_csv(points: list[SweepPoint], n_items: int, k: int, t: int, ell: int,
              master_seed: int) -> str:
    """Render sweep results in the fixed CSV schema."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for p in points:
        writer.writerow([
            f"{p.m_over_k:g}", t, ell, n_items, k, p.trials,
            f"{p.success_rate:.6f}", f"{p.mean_unidentified:.6f}",
            f"{p.stderr:.6f}", master_seed,
        ])
    return buf.getvalue()
