"""Seeded planted-clique-cover random graphs and their property checks.

The model: k disjoint vertex sets of size ell, each made a clique, with every
cross pair joined independently with probability p. Sampling is reproducible
and parallel-safe: each unordered block of cross pairs (parts i < j) draws
from its own numpy PCG64 substream keyed by SeedSequence(seed, spawn_key=(i, j)),
so identical parameters give bit-identical graphs regardless of evaluation
order; Monte Carlo trials derive per-trial seeds the same way with
spawn_key=(trial,).

All logarithms are natural. The degree threshold k*ell/(k-1) - 1 is compared
in exact rational arithmetic; the analytic probability bounds are evaluated
with mpmath at 50 significant digits (deterministic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from mpmath import mp, mpf

from .errors import CapacityError, ParameterError, SoundnessError
from .graphs import MAX_VERTICES, Graph, bits, complement
from .invariants import CHI_MAX_VERTICES, CliquePartition, chromatic_number

mp.dps = 50

BOUND_PRECISION = "mpmath, 50 significant digits"


@dataclass(frozen=True)
class PlantedCoverParams:
    """Construction parameters: k parts of size ell, cross probability p."""

    k: int
    ell: int
    p: float
    seed: int

    def __post_init__(self):
        if self.k < 1 or self.ell < 1:
            raise ParameterError("need k >= 1 parts of size ell >= 1")
        if not 0 < self.p < 1:
            raise ParameterError(f"cross probability must lie in (0,1), got {self.p}")
        if self.n > MAX_VERTICES:
            raise CapacityError(
                f"{self.n} vertices exceeds the {MAX_VERTICES} cap "
                f"(largest feasible ell for k={self.k} is {MAX_VERTICES // self.k})"
            )

    @property
    def n(self) -> int:
        return self.k * self.ell


def default_params(k: int, seed: int = 0) -> PlantedCoverParams:
    """Parameter choice making all three feasibility inequalities hold:
    ell = ceil(11 ln(k)^2 k^3) and p = 2k ln(ell)/ell. Requires k >= 3.

    Note the vertex count k*ceil(11 ln(k)^2 k^3) overshoots the nominal
    11 ln(k)^2 k^4 by less than k due to the ceiling; reports carry both.
    """
    if k < 3:
        raise ParameterError("default parameters are defined for k >= 3")
    ell = math.ceil(11 * math.log(k) ** 2 * k**3)
    p = 2 * k * math.log(ell) / ell
    return PlantedCoverParams(k, ell, p, seed)


def _block_rng(seed: int, i: int, j: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(i, j))))


def trial_seed(seed: int, trial: int) -> int:
    """64-bit per-trial seed derived from the base seed (documented stream
    discipline: SeedSequence(seed, spawn_key=(trial,)))."""
    st = np.random.SeedSequence(entropy=seed, spawn_key=(trial,)).generate_state(2, dtype=np.uint32)
    return int(st[0]) << 32 | int(st[1])


def _matrix_to_masks(mat: np.ndarray) -> list[int]:
    packed = np.packbits(mat.astype(np.uint8), axis=1, bitorder="little")
    return [int.from_bytes(packed[v].tobytes(), "little") for v in range(mat.shape[0])]


def _masks_to_matrix(g: Graph) -> np.ndarray:
    nbytes = (g.n + 7) // 8
    buf = b"".join(row.to_bytes(nbytes, "little") for row in g.adj)
    mat = np.unpackbits(
        np.frombuffer(buf, np.uint8).reshape(g.n, nbytes), axis=1, bitorder="little"
    )
    return mat[:, : g.n].astype(bool)


def sample_planted_cover(params: PlantedCoverParams) -> tuple[Graph, CliquePartition]:
    """Sample the construction; parts are contiguous vertex ranges
    [i*ell, (i+1)*ell)."""
    k, ell, n = params.k, params.ell, params.n
    mat = np.zeros((n, n), dtype=bool)
    part_masks = []
    for i in range(k):
        lo = i * ell
        part_masks.append(((1 << ell) - 1) << lo)
        mat[lo : lo + ell, lo : lo + ell] = True
    for i in range(k):
        for j in range(i + 1, k):
            rng = _block_rng(params.seed, i, j)
            block = rng.random((ell, ell)) < params.p
            mat[i * ell : (i + 1) * ell, j * ell : (j + 1) * ell] = block
            mat[j * ell : (j + 1) * ell, i * ell : (i + 1) * ell] = block.T
    np.fill_diagonal(mat, False)
    g = Graph(n, _matrix_to_masks(mat), validate=False)
    return g, CliquePartition(tuple(part_masks))


# -- deterministic checks -----------------------------------------------------


def degree_threshold(params: PlantedCoverParams) -> Fraction:
    if params.k < 2:
        raise ParameterError("degree threshold needs k >= 2")
    return Fraction(params.k * params.ell, params.k - 1) - 1


def check_max_degree(g: Graph, params: PlantedCoverParams) -> tuple[bool, int]:
    """Exact rational comparison of the observed maximum degree against
    k*ell/(k-1) - 1."""
    delta = g.max_degree()
    return Fraction(delta) < degree_threshold(params), delta


def theta_of_sample(g: Graph, params: PlantedCoverParams, degree_ok: bool) -> tuple[Optional[int], str]:
    """Clique cover number of a sampled graph with provenance.

    With the degree check passed the cover number is exactly k (a cover
    smaller than k would force a clique, hence a vertex degree, above the
    threshold); when the graph is small enough the exact chromatic number of
    the complement cross-checks it, and a mismatch is a soundness failure.
    """
    exact = None
    if g.n <= CHI_MAX_VERTICES:
        exact = chromatic_number(complement(g))[0]
    if degree_ok:
        if exact is not None:
            if exact != params.k:
                raise SoundnessError(
                    f"shortcut says theta={params.k} but exact complement coloring gives {exact}"
                )
            return params.k, "shortcut+exact"
        return params.k, "shortcut"
    if exact is not None:
        return exact, "exact"
    return None, "unavailable"


def blockable_vertices(g: Graph, parts: CliquePartition, brute_force: bool = False) -> list[int]:
    """Vertices v whose escape window into some foreign part can be sealed.

    For v in part i and each j != i, decides exactly whether k-1 vertices
    u_1..u_{k-1} outside part j and distinct from v have neighborhoods
    covering N(v) restricted to part j (an empty window counts as sealed).
    The fast path sizes every candidate trace with one matrix-vector product
    and only runs the exact cover search (maximal distinct traces, branching
    on the least uncovered element) when the k-1 largest traces could cover;
    ``brute_force`` switches to plain (k-1)-subset enumeration (test oracle).
    """
    k = len(parts.parts)
    n = g.n
    if brute_force:
        full = g.vertex_mask()
        out = []
        for i, pi in enumerate(parts.parts):
            for v in bits(pi):
                for j, pj in enumerate(parts.parts):
                    if j == i:
                        continue
                    window = g.adj[v] & pj
                    if window == 0 or _cover_brute(g, window, full & ~pj & ~(1 << v), k - 1):
                        out.append(v)
                        break
        return out

    mat = _masks_to_matrix(g)
    part_cols = [np.flatnonzero(_part_row(pm, n)) for pm in parts.parts]
    # per part j: adjacency restricted to S_j, with S_j's own rows removed
    restr = []
    for j, cols in enumerate(part_cols):
        rj = mat[:, cols]
        cand = rj.copy()
        cand[cols, :] = False
        restr.append((rj, cand, cand.astype(np.float32)))
    out = []
    for i, pi in enumerate(parts.parts):
        for v in bits(pi):
            hit = False
            for j in range(k):
                if j == i:
                    continue
                rj, cand, candf = restr[j]
                window = rj[v]
                wsize = int(window.sum())
                if wsize == 0:
                    hit = True
                    break
                sizes = candf @ window.astype(np.float32)
                sizes[v] = 0.0
                top = np.partition(sizes, len(sizes) - min(k - 1, len(sizes)))[-(k - 1):]
                if top.sum() < wsize:
                    continue
                rows = np.flatnonzero(sizes > 0)
                traces = []
                for u in rows:
                    if u == v:
                        continue
                    t = int.from_bytes(
                        np.packbits((cand[u] & window).astype(np.uint8), bitorder="little").tobytes(),
                        "little",
                    )
                    traces.append(t)
                wmask = int.from_bytes(
                    np.packbits(window.astype(np.uint8), bitorder="little").tobytes(), "little"
                )
                if _cover_decide_traces(wmask, traces, k - 1):
                    hit = True
                    break
            if hit:
                out.append(v)
    return out


def _part_row(pm: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    return np.unpackbits(
        np.frombuffer(pm.to_bytes(nbytes, "little"), np.uint8), bitorder="little"
    )[:n].astype(bool)


def _cover_brute(g: Graph, window: int, candidates: int, picks: int) -> bool:
    from itertools import combinations

    cand = list(bits(candidates))
    for sub in combinations(cand, min(picks, len(cand))):
        u = 0
        for x in sub:
            u |= g.adj[x]
        if window & ~u == 0:
            return True
    return False


def _cover_decide_traces(window: int, traces: list[int], picks: int) -> bool:
    """Exact set-cover decision with at most ``picks`` of the given traces.

    Dropping non-maximal traces is sound (a superset covers at least as
    much), and every cover must use a trace through the least uncovered
    element.
    """
    ordered = sorted({t & window for t in traces if t & window}, key=lambda t: -t.bit_count())
    maximal = []
    for t in ordered:
        if not any(t & ~m == 0 for m in maximal):
            maximal.append(t)
    # cheap impossibility filter: even the picks largest traces fall short
    if sum(t.bit_count() for t in maximal[:picks]) < window.bit_count():
        return False

    def rec(remaining: int, picks_left: int) -> bool:
        if remaining == 0:
            return True
        if picks_left == 0:
            return False
        x = remaining & -remaining
        for t in maximal:
            if t & x and rec(remaining & ~t, picks_left - 1):
                return True
        return False

    return rec(window, picks)


def count_blockable_agreement(g: Graph, parts: CliquePartition) -> bool:
    return blockable_vertices(g, parts) == blockable_vertices(g, parts, brute_force=True)


# -- analytic bounds ------------------------------------------------------------


def chernoff_bound(mean: float, eps: float) -> float:
    """exp(-mean * eps^2 / 3) for 0 < eps <= 3/2."""
    if mean < 0:
        raise ParameterError("mean must be nonnegative")
    if not 0 < eps <= 1.5:
        raise ParameterError("eps must lie in (0, 1.5]")
    return float(mp.exp(-mpf(mean) * mpf(eps) ** 2 / 3))


def degree_violation_bound(k: int, ell: int) -> float:
    """Analytic bound on P(max degree reaches the threshold):
    k * ell^(1 - 3(k-1)k/2)."""
    kk, ll = mpf(k), mpf(ell)
    return float(kk * ll ** (1 - Fraction(3 * (k - 1) * k, 2)))


def escape_block_bound(k: int, ell: int) -> float:
    """Analytic bound on P(some vertex is blockable):
    (k^(k+1)/(k-1)!) * exp(4 k^3 ln(ell)^2 ell^(1/ell - 1)) * ell^(-k)."""
    kk, ll = mpf(k), mpf(ell)
    return float(
        kk ** (k + 1) / mp.factorial(k - 1)
        * mp.exp(4 * kk**3 * mp.log(ll) ** 2 * ll ** (1 / ll - 1))
        * ll ** (-k)
    )


@dataclass
class InequalityReport:
    """One feasibility inequality with its evaluated sides."""

    holds: bool
    lhs: float
    rhs: float
    relation: str

    def as_dict(self) -> dict:
        return {"holds": self.holds, "lhs": self.lhs, "rhs": self.rhs, "relation": self.relation}


def feasibility_inequalities(k: int, ell: int) -> tuple[InequalityReport, InequalityReport, InequalityReport]:
    """The three conditions under which a sampled graph has, with positive
    probability, max degree below threshold, cover number exactly k, and no
    blockable vertex:

      (1) 5 k (k-1) ln(ell) <= ell/(k-1)
      (2) 1 - k ell^(1 - 3(k-1)k/2) > 1/2
      (3) 1 - escape_block_bound(k, ell) > 1/2
    """
    if k < 3 or ell < 2:
        raise ParameterError("feasibility inequalities need k >= 3 and ell >= 2")
    kk, ll = mpf(k), mpf(ell)
    lhs1 = 5 * kk * (k - 1) * mp.log(ll)
    rhs1 = ll / (k - 1)
    one = InequalityReport(bool(lhs1 <= rhs1), float(lhs1), float(rhs1), "<=")
    lhs2 = 1 - mpf(degree_violation_bound(k, ell))
    two = InequalityReport(bool(lhs2 > mpf(1) / 2), float(lhs2), 0.5, ">")
    lhs3 = 1 - mpf(escape_block_bound(k, ell))
    three = InequalityReport(bool(lhs3 > mpf(1) / 2), float(lhs3), 0.5, ">")
    return one, two, three


# -- property report and Monte Carlo --------------------------------------------


@dataclass
class PropertyReport:
    """Deterministic checks of one sampled graph, plus the analytic bounds."""

    params: PlantedCoverParams
    max_degree: int
    degree_threshold: Fraction
    degree_ok: bool
    blockable: list[int]
    escapes_ok: bool
    theta: Optional[int]
    theta_provenance: str
    inequalities: Optional[tuple[InequalityReport, InequalityReport, InequalityReport]]
    degree_bound: float
    escape_bound: float

    def as_dict(self) -> dict:
        return {
            "params": {
                "k": self.params.k,
                "ell": self.params.ell,
                "p": self.params.p,
                "seed": self.params.seed,
            },
            "max_degree": self.max_degree,
            "degree_threshold": str(self.degree_threshold),
            "degree_ok": self.degree_ok,
            "blockable": self.blockable,
            "escapes_ok": self.escapes_ok,
            "theta": self.theta,
            "theta_provenance": self.theta_provenance,
            "inequalities": [r.as_dict() for r in self.inequalities] if self.inequalities else None,
            "degree_bound": self.degree_bound,
            "escape_bound": self.escape_bound,
            "bound_precision": BOUND_PRECISION,
        }


def check_properties(g: Graph, parts: CliquePartition, params: PlantedCoverParams) -> PropertyReport:
    degree_ok, delta = check_max_degree(g, params)
    blockable = blockable_vertices(g, parts)
    theta, prov = theta_of_sample(g, params, degree_ok)
    ineqs = None
    if params.k >= 3 and params.ell >= 2:
        ineqs = feasibility_inequalities(params.k, params.ell)
    return PropertyReport(
        params=params,
        max_degree=delta,
        degree_threshold=degree_threshold(params),
        degree_ok=degree_ok,
        blockable=blockable,
        escapes_ok=not blockable,
        theta=theta,
        theta_provenance=prov,
        inequalities=ineqs,
        degree_bound=degree_violation_bound(params.k, params.ell),
        escape_bound=escape_block_bound(params.k, params.ell),
    )


@dataclass
class TrialRow:
    trial: int
    seed: int
    max_degree: int
    degree_ok: bool
    num_blockable: int


@dataclass
class MonteCarloReport:
    k: int
    ell: int
    p: float
    trials: int
    seed: int
    freq_degree_violation: float
    freq_any_blockable: float
    degree_bound: float
    escape_bound: float
    degree_bound_clamped: bool
    escape_bound_clamped: bool
    rows: list[TrialRow] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "freq_degree_violation": self.freq_degree_violation,
            "freq_any_blockable": self.freq_any_blockable,
            "degree_bound": min(self.degree_bound, 1.0),
            "escape_bound": min(self.escape_bound, 1.0),
            "degree_bound_raw": self.degree_bound,
            "escape_bound_raw": self.escape_bound,
            "degree_bound_clamped": self.degree_bound_clamped,
            "escape_bound_clamped": self.escape_bound_clamped,
            "bound_precision": BOUND_PRECISION,
            "rows": [vars(r) for r in self.rows],
        }

    def csv_rows(self) -> list[str]:
        out = ["trial,seed,max_degree,degree_ok,num_blockable"]
        for r in self.rows:
            out.append(f"{r.trial},{r.seed},{r.max_degree},{int(r.degree_ok)},{r.num_blockable}")
        return out


def _run_trial(args: tuple[int, int, int, float, int]) -> TrialRow:
    trial, k, ell, p, base_seed = args
    seed = trial_seed(base_seed, trial)
    params = PlantedCoverParams(k, ell, p, seed)
    g, parts = sample_planted_cover(params)
    degree_ok, delta = check_max_degree(g, params)
    blockable = blockable_vertices(g, parts)
    return TrialRow(trial, seed, delta, degree_ok, len(blockable))


def monte_carlo(k: int, ell: int, trials: int, seed: int, jobs: int = 1) -> MonteCarloReport:
    """Run seeded trials at p = 2k ln(ell)/ell, reporting empirical violation
    frequencies next to the analytic bounds (clamped into [0,1] for display,
    with the clamping flagged). Trials use independent substreams, so results
    are identical for any ``jobs``."""
    if trials < 1:
        raise ParameterError("need at least one trial")
    p = 2 * k * math.log(ell) / ell
    if not 0 < p < 1:
        raise ParameterError(f"derived cross probability {p:.4f} outside (0,1); increase ell")
    tasks = [(t, k, ell, p, seed) for t in range(trials)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_trial, tasks))
    else:
        rows = [_run_trial(t) for t in tasks]
    rows.sort(key=lambda r: r.trial)
    db = degree_violation_bound(k, ell)
    eb = escape_block_bound(k, ell)
    return MonteCarloReport(
        k=k,
        ell=ell,
        p=p,
        trials=trials,
        seed=seed,
        freq_degree_violation=sum(not r.degree_ok for r in rows) / trials,
        freq_any_blockable=sum(r.num_blockable > 0 for r in rows) / trials,
        degree_bound=db,
        escape_bound=eb,
        degree_bound_clamped=db > 1.0,
        escape_bound_clamped=eb > 1.0,
        rows=rows,
    )
