"""Absorbing Markov chains: exact expected absorption times and a
Monte-Carlo cross-check.

The expected absorption time vector mu solves, for transient states,

    mu[s] = 1 + sum_s' P[s, s'] * mu[s']

with mu = 0 on absorbing states.  This vector is the potential with
one-step drift exactly 1 from every transient state, which
``verify_unit_drift`` measures directly.
"""

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve

_ROW_SUM_TOL = 1e-12
DEFAULT_STATE_CAP = 10_000


@dataclass
class AbsorbingChain:
    transition: np.ndarray
    absorbing: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        P = np.asarray(self.transition, dtype=np.float64)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise ValueError("transition must be a square matrix")
        k = P.shape[0]
        self.transition = P
        self.absorbing = frozenset(int(s) for s in self.absorbing)
        if not self.absorbing:
            raise ValueError("chain needs at least one absorbing state")
        if any(s < 0 or s >= k for s in self.absorbing):
            raise ValueError("absorbing state index out of range")
        if np.any(P < 0):
            raise ValueError("negative transition probability")
        if np.any(np.abs(P.sum(axis=1) - 1.0) > _ROW_SUM_TOL):
            raise ValueError("transition rows must sum to 1")
        for s in self.absorbing:
            if P[s, s] != 1.0:
                raise ValueError(f"absorbing state {s} lacks self-loop probability 1")
        unreachable = self._states_not_reaching_absorbing()
        if unreachable:
            raise ValueError(
                f"states {sorted(unreachable)} cannot reach an absorbing state"
            )

    @property
    def state_count(self) -> int:
        return self.transition.shape[0]

    @property
    def transient(self) -> np.ndarray:
        return np.array(
            [s for s in range(self.state_count) if s not in self.absorbing],
            dtype=np.int64,
        )

    def _states_not_reaching_absorbing(self):
        # BFS over reversed edges starting from the absorbing set.
        k = self.state_count
        P = self.transition
        seen = set(self.absorbing)
        queue = deque(self.absorbing)
        while queue:
            t = queue.popleft()
            for s in range(k):
                if s not in seen and P[s, t] > 0.0:
                    seen.add(s)
                    queue.append(s)
        return set(range(k)) - seen


def parse_chain(text: str) -> AbsorbingChain:
    """Parse the chain text format.

    Line 1: state count k.  Line 2: space-separated absorbing indices.
    Then k lines of k transition probabilities.
    """
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty chain description")
    try:
        k = int(lines[0])
    except ValueError:
        raise ValueError(f"bad state count line: {lines[0]!r}") from None
    if len(lines) != 2 + k:
        raise ValueError(f"expected {2 + k} non-empty lines, got {len(lines)}")
    absorbing = frozenset(int(tok) for tok in lines[1].split())
    rows = []
    for ln in lines[2:]:
        row = [float(tok) for tok in ln.split()]
        if len(row) != k:
            raise ValueError(f"row has {len(row)} entries, expected {k}")
        rows.append(row)
    return AbsorbingChain(np.array(rows), absorbing)


def load_chain(path) -> AbsorbingChain:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_chain(fh.read())


def ideal_potential(
    chain: AbsorbingChain, state_cap: int = DEFAULT_STATE_CAP, residual_tol: float = 1e-9
) -> np.ndarray:
    """Expected absorption time from each state (zero on absorbing states)."""
    k = chain.state_count
    if k > state_cap:
        raise ValueError(f"chain has {k} states, cap is {state_cap}")
    trans = chain.transient
    mu = np.zeros(k)
    if len(trans) == 0:
        return mu
    Q = chain.transition[np.ix_(trans, trans)]
    try:
        mu_t = solve(np.eye(len(trans)) - Q, np.ones(len(trans)))
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"singular absorption system: {exc}") from exc
    mu[trans] = mu_t
    residual = verify_unit_drift(chain, mu)
    if not np.isfinite(residual) or residual > residual_tol:
        raise ValueError(f"ill-conditioned absorption system, residual {residual:.3e}")
    return mu


def verify_unit_drift(chain: AbsorbingChain, potential: np.ndarray) -> float:
    """Max over transient states of |potential[s] - (1 + P[s] . potential)|.

    Zero (up to solver residual) exactly when the potential decreases by
    1 in expectation from every transient state.
    """
    potential = np.asarray(potential, dtype=np.float64)
    if potential.shape != (chain.state_count,):
        raise ValueError("potential length does not match state count")
    trans = chain.transient
    if len(trans) == 0:
        return 0.0
    expected_next = chain.transition[trans] @ potential
    return float(np.max(np.abs(potential[trans] - (1.0 + expected_next))))


@dataclass(frozen=True)
class HittingTimeEstimate:
    mean: float
    sd: float
    n_runs: int

    @property
    def se(self) -> float:
        return self.sd / np.sqrt(self.n_runs)


def mc_hitting_time(
    chain: AbsorbingChain,
    start: int,
    n_runs: int,
    rng: np.random.Generator,
    max_steps: int = 10_000_000,
) -> HittingTimeEstimate:
    """Monte-Carlo estimate of the absorption time from ``start``.

    Walkers are exchangeable, so the ensemble is advanced as per-state
    counts with one multinomial draw per occupied transient state per
    step; this is distributionally identical to independent runs.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be at least 1")
    k = chain.state_count
    if not 0 <= start < k:
        raise ValueError("start state out of range")
    P = chain.transition
    is_absorbing = np.zeros(k, dtype=bool)
    is_absorbing[list(chain.absorbing)] = True

    if is_absorbing[start]:
        return HittingTimeEstimate(0.0, 0.0, n_runs)

    counts = np.zeros(k, dtype=np.int64)
    counts[start] = n_runs
    sum_t = 0.0
    sum_t2 = 0.0
    active = n_runs
    t = 0
    while active > 0:
        t += 1
        if t > max_steps:
            raise RuntimeError(f"no absorption within {max_steps} steps")
        new_counts = np.zeros(k, dtype=np.int64)
        for s in np.nonzero(counts)[0]:
            if is_absorbing[s]:
                continue
            new_counts += rng.multinomial(counts[s], P[s])
        absorbed_now = int(new_counts[is_absorbing].sum())
        if absorbed_now:
            sum_t += t * absorbed_now
            sum_t2 += float(t) * t * absorbed_now
            active -= absorbed_now
        new_counts[is_absorbing] = 0
        counts = new_counts
    mean = sum_t / n_runs
    var = (sum_t2 - n_runs * mean * mean) / (n_runs - 1) if n_runs > 1 else 0.0
    return HittingTimeEstimate(mean, float(np.sqrt(max(var, 0.0))), n_runs)


def random_absorbing_chain(
    n_states: int, rng: np.random.Generator, n_absorbing: int = 1
) -> AbsorbingChain:
    """Random dense chain with all-positive transient rows (so absorption
    is reachable from everywhere by construction)."""
    if n_absorbing < 1 or n_absorbing >= n_states:
        raise ValueError("need 1 <= n_absorbing < n_states")
    P = rng.random((n_states, n_states)) + 0.05
    P /= P.sum(axis=1, keepdims=True)
    absorbing = frozenset(range(n_absorbing))
    for s in absorbing:
        P[s] = 0.0
        P[s, s] = 1.0
    return AbsorbingChain(P, absorbing)


def simulate_chain_trace(
    chain: AbsorbingChain,
    start: int,
    rng: np.random.Generator,
    max_steps: int = 1_000_000,
) -> np.ndarray:
    """One state trajectory from ``start`` until absorption (inclusive)."""
    P = chain.transition
    k = chain.state_count
    states = [start]
    s = start
    for _ in range(max_steps):
        if s in chain.absorbing:
            break
        s = int(rng.choice(k, p=P[s]))
        states.append(s)
    else:
        raise RuntimeError(f"no absorption within {max_steps} steps")
    return np.array(states, dtype=np.int64)
