"""Power-law weight sequences and seeded random-graph generators.

Three generators share one recipe: assign each vertex a weight from a
power-law tail, wire vertices so that degrees track weights, collapse to
a simple graph, and keep the giant component. They differ in the wiring:

* configuration model -- each vertex gets round(weight) half-edges and a
  uniformly random perfect matching pairs them;
* "cap" rank-1 model -- pair (u, v) connected independently with
  probability min(1, w_u * w_v / M);
* "exp" rank-1 model -- the number of edges between u and v is Poisson
  with mean w_u * w_v / M, so the collapsed pair probability is
  1 - exp(-w_u * w_v / M).

All randomness flows through PCG64 generators keyed by (seed, stream),
consumed in a fixed sequential order, so a ModelSpec pins the output
bit-for-bit regardless of thread count.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .graph import Graph, _graph_from_pairs, giant_component

MODEL_KINDS = ("cm", "cl", "nr")
WEIGHT_MODES = ("deterministic-quantile", "iid-sample")

# RNG stream ids (second entropy word fed to PCG64).
_STREAM_WEIGHTS = 1
_STREAM_EDGES = 2

# Above this many half-edges an explicit uniform matching is not
# materializable; the configuration model falls back to its collapsed
# Poisson equivalent (pair probability 1 - exp(-d_u*d_v/H)).
STUB_PAIRING_LIMIT = 20_000_000


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(stream)])


@dataclass(frozen=True)
class ModelSpec:
    """Generative recipe; fully determines the output graph."""

    kind: str
    n: int
    beta: float
    weight_mode: str = "deterministic-quantile"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError(f"unknown weight mode {self.weight_mode!r}")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        _check_beta(self.beta)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ModelSpec":
        return cls(**json.loads(text))


@dataclass(frozen=True)
class WeightSequence:
    """Nonincreasing positive weights and their exact sum."""

    weights: np.ndarray
    total: float

    def __post_init__(self):
        self.weights.flags.writeable = False

    @property
    def n(self) -> int:
        return self.weights.size


def _check_beta(beta: float) -> None:
    if beta <= 1:
        raise ValueError("degree distribution undefined")


def power_law_weights(n: int, beta: float,
                      weight_mode: str = "deterministic-quantile",
                      seed: int = 0) -> WeightSequence:
    """Weights with tail #{v : w_v > d} ~ n / d^(beta-1).

    deterministic-quantile places w_i = (n/i)^(1/(beta-1)) for i = 1..n;
    iid-sample draws n Pareto-tail variates with P(w > d) = d^-(beta-1),
    d >= 1, then sorts them nonincreasing.
    """
    _check_beta(beta)
    if n < 2:
        raise ValueError("n must be at least 2")
    inv = 1.0 / (beta - 1.0)
    if weight_mode == "deterministic-quantile":
        ranks = np.arange(1, n + 1, dtype=np.float64)
        w = (n / ranks) ** inv
    elif weight_mode == "iid-sample":
        u = 1.0 - _rng(seed, _STREAM_WEIGHTS).random(n)  # in (0, 1]
        w = u ** (-inv)
        w[::-1].sort()
    else:
        raise ValueError(f"unknown weight mode {weight_mode!r}")
    return WeightSequence(weights=w, total=float(w.sum()))


def edge_probability(kind: str, w_u: float, w_v: float, total: float) -> float:
    """Marginal probability that the simple graph contains edge (u, v)."""
    lam = w_u * w_v / total
    if kind == "cl":
        return min(1.0, lam)
    if kind in ("nr", "cm"):
        return -math.expm1(-lam)
    raise ValueError(f"unknown model kind {kind!r}")


class _UniformBuffer:
    """Blocks of uniforms from one stream, consumed strictly in order."""

    def __init__(self, rng: np.random.Generator, block: int = 1 << 16):
        self._rng = rng
        self._block = block
        self._buf = rng.random(block)
        self._pos = 0

    def next(self) -> float:
        if self._pos == self._block:
            self._buf = self._rng.random(self._block)
            self._pos = 0
        x = self._buf[self._pos]
        self._pos += 1
        return x


def _rank1_edges(w: np.ndarray, total: float, kind: str,
                 rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Sample pairwise-independent edges with P(u~v)=edge_probability.

    Requires w nonincreasing. Expected O(n + m): for each u the sure
    prefix (probability 1.0 at float resolution) is emitted wholesale and
    the tail is walked with geometric skips under a shrinking envelope,
    re-accepting each candidate at its true probability.
    """
    n = w.size
    wl = w.tolist()
    negw = -np.asarray(w, dtype=np.float64)
    cap = kind == "cl"
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    uni = _UniformBuffer(rng)
    # weight threshold above which the pair probability rounds to 1.0
    sure_lam = 1.0 if cap else -math.log(2.0 ** -53)
    log = math.log
    log1p = math.log1p
    expm1 = math.expm1
    for u in range(n - 1):
        wu = wl[u]
        thresh = sure_lam * total / wu
        # first index with w_v < thresh (w is nonincreasing)
        v0 = int(np.searchsorted(negw, -thresh, side="right"))
        v0 = max(v0, u + 1)
        if v0 > u + 1:
            vv = np.arange(u + 1, v0, dtype=np.int64)
            us.append(np.full(vv.size, u, dtype=np.int64))
            vs.append(vv)
        v = v0
        if v >= n:
            continue
        lam = wu * wl[v] / total
        p = min(1.0, lam) if cap else -expm1(-lam)
        acc_u: list[int] = []
        while v < n and p > 0.0:
            if p < 1.0:
                r = uni.next()
                if r <= 0.0:
                    break
                v += int(log(r) / log1p(-p))
                if v >= n:
                    break
            lam = wu * wl[v] / total
            q = min(1.0, lam) if cap else -expm1(-lam)
            # landing probability under the envelope is p >= q; thin to q
            if q >= p or uni.next() < q / p:
                acc_u.append(v)
            p = q
            v += 1
        if acc_u:
            vv = np.asarray(acc_u, dtype=np.int64)
            us.append(np.full(vv.size, u, dtype=np.int64))
            vs.append(vv)
    if not us:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(us), np.concatenate(vs)


def _finish(n: int, u: np.ndarray, v: np.ndarray, giant: bool) -> Graph:
    g = _graph_from_pairs(n, u, v)
    if not giant:
        return g
    sub, _ = giant_component(g)
    return sub


def configuration_model_degrees(ws: WeightSequence) -> np.ndarray:
    """Half-edge counts: round-to-nearest with floor 1, parity fixed at
    the max-weight vertex."""
    d = np.maximum(1, np.floor(ws.weights + 0.5)).astype(np.int64)
    if d.sum() % 2 == 1:
        d[0] += 1
    return d


def configuration_model_multigraph(ws: WeightSequence, seed: int = 0):
    """Explicit uniform half-edge matching; returns raw (u, v) stub pairs
    including self-loops and parallel edges. Diagnostic view used by the
    degree-exactness checks; only feasible while the half-edge total fits
    STUB_PAIRING_LIMIT."""
    d = configuration_model_degrees(ws)
    h = int(d.sum())
    if h > STUB_PAIRING_LIMIT:
        raise ValueError(
            f"half-edge total {h} exceeds explicit pairing limit")
    stubs = np.repeat(np.arange(ws.n, dtype=np.int64), d)
    perm = _rng(seed, _STREAM_EDGES).permutation(h)
    paired = stubs[perm]
    return paired[0::2], paired[1::2]


def gen_configuration_model(ws: WeightSequence, seed: int = 0,
                            giant: bool = True) -> Graph:
    """Uniform half-edge matching, collapsed to a simple graph.

    When the half-edge total is too large to materialize (weights with
    beta < 2 give Theta(n^(1/(beta-1))) stubs), the collapsed graph is
    sampled from the matching's Poisson limit instead: pairs appear
    independently with probability 1 - exp(-d_u*d_v/H). Adjacency
    probabilities agree with the exact matching to O((d_u*d_v/H)^2).
    """
    d = configuration_model_degrees(ws)
    h = int(d.sum())
    if h <= STUB_PAIRING_LIMIT:
        u, v = configuration_model_multigraph(ws, seed)
    else:
        u, v = _rank1_edges(d.astype(np.float64), float(h), "cm",
                            _rng(seed, _STREAM_EDGES))
    return _finish(ws.n, u, v, giant)


def gen_chung_lu(ws: WeightSequence, seed: int = 0, giant: bool = True) -> Graph:
    """Each pair (u, v) connected independently with min(1, w_u*w_v/M)."""
    u, v = _rank1_edges(ws.weights, ws.total, "cl", _rng(seed, _STREAM_EDGES))
    return _finish(ws.n, u, v, giant)


def norros_reittu_multigraph(ws: WeightSequence, seed: int = 0):
    """Raw Poisson multigraph: Poisson(M/2) stub pairs with endpoints
    drawn independently proportional to the weights. Diagnostic view;
    feasible only while M is moderate."""
    total = ws.total
    if total > 2 * STUB_PAIRING_LIMIT:
        raise ValueError(f"total weight {total:.3g} too large for explicit stubs")
    rng = _rng(seed, _STREAM_EDGES)
    count = int(rng.poisson(total / 2.0))
    cdf = np.cumsum(ws.weights) / total
    u = np.searchsorted(cdf, rng.random(count)).astype(np.int64)
    v = np.searchsorted(cdf, rng.random(count)).astype(np.int64)
    return u, v


def gen_norros_reittu(ws: WeightSequence, seed: int = 0,
                      giant: bool = True) -> Graph:
    """Poisson(w_u*w_v/M) multi-edges collapsed to a simple graph.

    Sampled directly at the collapsed level: the pair (u, v) is present
    independently with probability 1 - exp(-w_u*w_v/M), which is exactly
    the collapsed distribution of the Poisson multigraph.
    """
    u, v = _rank1_edges(ws.weights, ws.total, "nr", _rng(seed, _STREAM_EDGES))
    return _finish(ws.n, u, v, giant)


_GENERATORS = {
    "cm": gen_configuration_model,
    "cl": gen_chung_lu,
    "nr": gen_norros_reittu,
}


def generate_graph(spec: ModelSpec, giant: bool = True) -> Graph:
    """Weights then wiring, both derived from spec.seed."""
    ws = power_law_weights(spec.n, spec.beta, spec.weight_mode, spec.seed)
    return _GENERATORS[spec.kind](ws, spec.seed, giant=giant)
