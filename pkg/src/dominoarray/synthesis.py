"""Divide-and-conquer domino clustering of a reference array.

The aperture is split into raster-ordered partitions.  Each partition is
tiled in turn: every candidate placement may reach one pixel past the
partition boundary into the untiled remainder (soft boundary), must leave
the remainder tileable (checked exactly via bipartite matching), and is
scored by the mask-matching cost of the whole hybrid array in which placed
dominoes carry averaged reference weights and untiled elements keep their
reference excitations.  Small partitions are searched exhaustively; large
ones (size ratio above a threshold) by a seeded integer-coded genetic
algorithm over placements.

Cost evaluation is incremental: a candidate differs from the current
hybrid array only on the pixels it covers, so its far field is the running
base field plus a low-rank update, evaluated for whole candidate batches
as one matrix product.  Evaluation counts reported per iteration include
only distinct placements actually scored (the GA memoizes repeats).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .aperture import ApertureGrid, PartitionScheme, Pixel, PixelRegion
from .errors import ConfigurationError, DomainError, InfeasibleError, StructuralError
from .radiation import ExcitationField, Mask, UvGrid, array_field, element_gain
from .tiling import (
    Domino,
    Tiling,
    enumerate_partition_tilings,
    enumerate_tilings,
    is_tileable,
    soft_margin_pixels,
)

Placement = tuple[Domino, ...]


@dataclass(frozen=True)
class GaConfig:
    """Integer-coded GA controls for large-partition search."""

    population: int
    pc: float = 0.9
    pm: float = 0.01
    generations: int = 1000

    def __post_init__(self):
        if self.population < 2:
            raise ConfigurationError("GA population must be at least 2")
        if not (0.0 <= self.pc <= 1.0 and 0.0 <= self.pm <= 1.0):
            raise ConfigurationError("GA probabilities must lie in [0, 1]")
        if self.generations < 1:
            raise ConfigurationError("GA needs at least one generation")


@dataclass(frozen=True, eq=False)
class SynthesisConfig:
    scheme: PartitionScheme
    mask: Mask
    reference: ExcitationField
    steering: tuple[float, float]
    element_model: str
    uv: UvGrid
    eta_th: float = 0.25
    ga: GaConfig | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.eta_th <= 1.0):
            raise ConfigurationError(f"eta threshold must be in (0, 1], got {self.eta_th}")
        grid = self.scheme.grid
        if self.reference.shape != (grid.M, grid.N):
            raise ConfigurationError(
                f"reference shape {self.reference.shape} does not match grid {grid.M}x{grid.N}"
            )
        if self.scheme.eta > self.eta_th and self.ga is None:
            raise ConfigurationError(
                f"partition ratio {self.scheme.eta:.4g} exceeds threshold {self.eta_th}; "
                "GA parameters are required"
            )


@dataclass(frozen=True)
class IterationRecord:
    index: int
    best_phi: float
    evaluations: int


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    tiling: Tiling
    cluster_amplitude: np.ndarray
    cluster_phase: np.ndarray
    phi_opt: float
    evaluations: int
    trace: tuple[IterationRecord, ...]

    @property
    def excitations(self) -> ExcitationField:
        """Element-level field realized by the clustered weights."""
        grid = self.tiling.grid
        amp = np.zeros((grid.M, grid.N))
        ph = np.zeros((grid.M, grid.N))
        for q, (a, b) in enumerate(self.tiling.dominoes()):
            for m, n in (a, b):
                amp[m - 1, n - 1] = self.cluster_amplitude[q]
                ph[m - 1, n - 1] = self.cluster_phase[q]
        return ExcitationField(amp, ph)


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------


def _wrap_angle(x):
    return (x + np.pi) % (2.0 * np.pi) - np.pi


def subarray_average(dominoes: Sequence[Domino], reference: ExcitationField):
    """Per-domino (amplitude, phase): arithmetic mean of the two members.

    Phases are unwrapped per pair (nearest branch of the difference) before
    averaging so a smooth steered reference never averages across a 2 pi
    seam.  Returns arrays aligned with the domino order.
    """
    alpha = np.empty(len(dominoes))
    beta = np.empty(len(dominoes))
    for q, (a, b) in enumerate(dominoes):
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            raise StructuralError(f"cluster pixels {a} and {b} are not edge-adjacent")
        a_amp = reference.amplitude[a[0] - 1, a[1] - 1]
        b_amp = reference.amplitude[b[0] - 1, b[1] - 1]
        a_ph = reference.phase[a[0] - 1, a[1] - 1]
        b_ph = reference.phase[b[0] - 1, b[1] - 1]
        alpha[q] = 0.5 * (a_amp + b_amp)
        beta[q] = a_ph + 0.5 * _wrap_angle(b_ph - a_ph)
    return alpha, beta


def hybrid_excitations(
    clusters: Sequence[tuple[Domino, float, float]],
    reference: ExcitationField,
    untiled: PixelRegion,
) -> ExcitationField:
    """Element field with cluster weights on tiled pixels, reference elsewhere.

    The clustered pixels and the untiled region must partition the grid
    exactly; a gap or an overlap raises StructuralError.
    """
    grid = untiled.grid
    if reference.shape != (grid.M, grid.N):
        raise DomainError("reference shape does not match the untiled region's grid")
    amp = np.array(reference.amplitude)
    ph = np.array(reference.phase)
    covered = np.zeros((grid.M, grid.N), dtype=bool)
    for (a, b), al, be in clusters:
        for m, n in (a, b):
            if covered[m - 1, n - 1]:
                raise StructuralError(f"pixel ({m}, {n}) covered by two clusters")
            covered[m - 1, n - 1] = True
            amp[m - 1, n - 1] = al
            ph[m - 1, n - 1] = be
    if np.any(covered & untiled.mask):
        raise StructuralError("clustered pixels overlap the untiled region")
    if not np.all(covered | untiled.mask):
        raise StructuralError("clustered pixels and untiled region leave a gap")
    return ExcitationField(amp, ph)


# ---------------------------------------------------------------------------
# Incremental cost evaluation
# ---------------------------------------------------------------------------


class _CostEvaluator:
    """Mask-matching cost of hybrid arrays with low-rank field updates."""

    def __init__(self, grid, model, uv: UvGrid, mask: Mask, reference: ExcitationField):
        self.grid = grid
        self.model = model
        self.uv = uv
        uu, vv = uv.meshes()
        inside = uv.inside_disk()
        self.u_flat = uu[inside]
        self.v_flat = vv[inside]
        self.g_flat = element_gain(model, self.u_flat, self.v_flat)
        self.psi_flat = mask.psi[inside]
        self.cell = uv.du * uv.dv
        self.denom = float(self.psi_flat.sum() * self.cell)
        self._inside = inside
        self.base_weights = np.array(reference.weights)
        self.base_field = array_field(reference, grid, model, uv)[inside]

    def rows(self, pixels: Sequence[Pixel]) -> np.ndarray:
        out = np.empty((len(pixels), len(self.u_flat)), dtype=complex)
        for k, (m, n) in enumerate(pixels):
            phase = 2j * np.pi * (self.grid.x(m) * self.u_flat + self.grid.y(n) * self.v_flat)
            out[k] = self.g_flat * np.exp(phase)
        return out

    def phi_of_field(self, field_flat: np.ndarray) -> float:
        p = field_flat.real**2 + field_flat.imag**2
        return float(np.maximum(p - self.psi_flat, 0.0).sum() * self.cell / self.denom)

    def eval_deltas(self, delta_w: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """Costs for a batch of candidates given their weight deltas."""
        n_cand = delta_w.shape[0]
        n_samp = rows.shape[1]
        phis = np.empty(n_cand)
        chunk = max(1, int(4_000_000 // max(n_samp, 1)))
        for lo in range(0, n_cand, chunk):
            hi = min(lo + chunk, n_cand)
            f = delta_w[lo:hi] @ rows
            f += self.base_field[None, :]
            p = f.real**2
            p += f.imag**2
            p -= self.psi_flat[None, :]
            np.clip(p, 0.0, None, out=p)
            phis[lo:hi] = p.sum(axis=1) * (self.cell / self.denom)
        return phis

    def candidate_deltas(self, placements, reference: ExcitationField, pixel_index):
        """Weight-delta matrix over the soft-region pixel columns."""
        dw = np.zeros((len(placements), len(pixel_index)), dtype=complex)
        for c, dominoes in enumerate(placements):
            alpha, beta = subarray_average(dominoes, reference)
            w_new = alpha * np.exp(1j * beta)
            for (a, b), w in zip(dominoes, w_new):
                for m, n in (a, b):
                    dw[c, pixel_index[(m, n)]] = w - self.base_weights[m - 1, n - 1]
        return dw

    def apply(self, dominoes: Placement, alpha: np.ndarray, beta: np.ndarray):
        """Commit a placement: fold its weight deltas into the base field."""
        pixels = [p for d in dominoes for p in d]
        rows = self.rows(pixels)
        delta = np.empty(len(pixels), dtype=complex)
        k = 0
        for (a, b), al, be in zip(dominoes, alpha, beta):
            w = al * np.exp(1j * be)
            for m, n in (a, b):
                delta[k] = w - self.base_weights[m - 1, n - 1]
                self.base_weights[m - 1, n - 1] = w
                k += 1
        self.base_field = self.base_field + delta @ rows

    def phi_full(self, exc: ExcitationField) -> float:
        """From-scratch cost of an explicit excitation field (reference path)."""
        f = array_field(exc, self.grid, self.model, self.uv)[self._inside]
        return self.phi_of_field(f)


class _AdmissibilityMemo:
    """Tileability of (remainder - used margin pixels), memoized by margin mask."""

    def __init__(self, remainder: PixelRegion, margin: Sequence[Pixel]):
        self.remainder = remainder
        self.margin = list(margin)
        self._memo: dict[int, bool] = {}

    def admissible(self, used_bits: int) -> bool:
        hit = self._memo.get(used_bits)
        if hit is None:
            used = [p for k, p in enumerate(self.margin) if used_bits >> k & 1]
            hit = is_tileable(self.remainder.minus_pixels(used))
            self._memo[used_bits] = hit
        return hit

    def bits_of(self, dominoes: Placement, partition: PixelRegion) -> int:
        bits = 0
        index = {p: k for k, p in enumerate(self.margin)}
        for a, b in dominoes:
            for p in (a, b):
                if p not in partition:
                    bits |= 1 << index[p]
        return bits


# ---------------------------------------------------------------------------
# Per-partition search
# ---------------------------------------------------------------------------


def _canonical(dominoes) -> Placement:
    return tuple(sorted(tuple(sorted(d)) for d in dominoes))


def exhaustive_step(
    S: PixelRegion,
    R: PixelRegion,
    reference: ExcitationField,
    evaluator: _CostEvaluator,
) -> tuple[Placement, float, int]:
    """Score every admissible soft-boundary placement of S; first minimum wins.

    Placements whose residual is not tileable are skipped before scoring,
    so the returned count is exactly the number of cost evaluations.
    """
    margin = soft_margin_pixels(S, R)
    memo = _AdmissibilityMemo(R.minus(S), margin)
    candidates: list[Placement] = []

    def visit(dominoes, used_bits):
        if memo.admissible(used_bits):
            candidates.append(dominoes)

    enumerate_partition_tilings(S, R, visit)
    if not candidates:
        raise InfeasibleError("no admissible placement leaves the remainder tileable")
    pixel_index = {p: k for k, p in enumerate(S.pixels() + margin)}
    rows = evaluator.rows(list(pixel_index))
    dw = evaluator.candidate_deltas(candidates, reference, pixel_index)
    phis = evaluator.eval_deltas(dw, rows)
    k = int(np.argmin(phis))
    return candidates[k], float(phis[k]), len(candidates)


class _PartitionProblem:
    """Geometry and repair helpers for GA search over one partition."""

    def __init__(self, S: PixelRegion, R: PixelRegion):
        self.S = S
        self.R = R
        self.mand = S.pixels()
        self.margin = soft_margin_pixels(S, R)
        self.mand_index = {p: k for k, p in enumerate(self.mand)}
        self.margin_index = {p: k for k, p in enumerate(self.margin)}
        self.partners: list[list[Pixel]] = []
        for m, n in self.mand:
            opts = []
            for q in ((m + 1, n), (m - 1, n), (m, n + 1), (m, n - 1)):
                if q in self.mand_index or q in self.margin_index:
                    opts.append(q)
            self.partners.append(opts)

    def complete(self, kept: Sequence[Domino], rng, budget: int = 20000) -> Placement | None:
        """Extend kept dominoes to a full placement by randomized backtracking."""
        covered_mand = 0
        used_margin = 0
        for a, b in kept:
            for p in (a, b):
                k = self.mand_index.get(p)
                if k is not None:
                    covered_mand |= 1 << k
                else:
                    used_margin |= 1 << self.margin_index[p]
        full = (1 << len(self.mand)) - 1
        acc = list(kept)
        nodes = 0

        def rec(occ: int, used: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                return False
            if occ == full:
                return True
            start = 0
            while occ >> start & 1:
                start += 1
            opts = list(self.partners[start])
            rng.shuffle(opts)
            p0 = self.mand[start]
            for q in opts:
                km = self.mand_index.get(q)
                if km is not None:
                    if occ >> km & 1:
                        continue
                    o2, u2 = occ | 1 << start | 1 << km, used
                else:
                    kg = self.margin_index[q]
                    if used >> kg & 1:
                        continue
                    o2, u2 = occ | 1 << start, used | 1 << kg
                acc.append((p0, q))
                if rec(o2, u2):
                    return True
                acc.pop()
            return False

        if rec(covered_mand, used_margin):
            return _canonical(acc)
        return None

    def structured_seed(self, preference: str, rng) -> Placement | None:
        """Tile the whole remainder R with an orientation preference and keep
        the dominoes touching S; such a placement is admissible by construction."""
        pixels = self.R.pixels()
        index = {p: k for k, p in enumerate(pixels)}
        full = (1 << len(pixels)) - 1
        if len(pixels) % 2:
            return None
        acc: list[Domino] = []
        nodes = 0
        budget = 200000

        def order(p: Pixel) -> list[Pixel]:
            m, n = p
            horiz = [(m + 1, n), (m - 1, n)]
            vert = [(m, n + 1), (m, n - 1)]
            if preference == "horizontal":
                cand = horiz + vert
            elif preference == "vertical":
                cand = vert + horiz
            elif preference == "herringbone":
                cand = horiz + vert if ((m - 1) // 2 + (n - 1) // 2) % 2 == 0 else vert + horiz
            else:
                cand = horiz + vert
                rng.shuffle(cand)
            return cand

        def rec(occ: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                return False
            if occ == full:
                return True
            start = 0
            while occ >> start & 1:
                start += 1
            p0 = pixels[start]
            for q in order(p0):
                k = index.get(q)
                if k is None or occ >> k & 1:
                    continue
                acc.append((p0, q))
                if rec(occ | 1 << start | 1 << k):
                    return True
                acc.pop()
            return False

        if not rec(0):
            return None
        touching = [d for d in acc if d[0] in self.S or d[1] in self.S]
        return _canonical(touching)

    def flip_sites(self, placement: Placement):
        """Pairs of parallel dominoes forming a 2x2 block, flippable in place."""
        owner: dict[Pixel, int] = {}
        for k, (a, b) in enumerate(placement):
            owner[a] = k
            owner[b] = k
        sites = []
        seen = set()
        for a, b in placement:
            (m, n) = min(a, b)
            for om, on in ((m, n), (m - 1, n), (m, n - 1), (m - 1, n - 1)):
                square = ((om, on), (om + 1, on), (om, on + 1), (om + 1, on + 1))
                if any(p not in owner for p in square):
                    continue
                ks = {owner[p] for p in square}
                if len(ks) != 2:
                    continue
                key = tuple(sorted(ks))
                if key in seen:
                    continue
                seen.add(key)
                sites.append((key, square))
        return sites

    def flip(self, placement: Placement, site) -> Placement | None:
        (k1, k2), square = site
        horizontal = placement[k1][0][1] == placement[k1][1][1]
        (m, n) = square[0]
        if horizontal:
            new = (((m, n), (m, n + 1)), ((m + 1, n), (m + 1, n + 1)))
        else:
            new = (((m, n), (m + 1, n)), ((m, n + 1), (m + 1, n + 1)))
        for a, b in new:
            if a not in self.mand_index and b not in self.mand_index:
                return None  # would create a domino entirely in the margin
        out = [d for k, d in enumerate(placement) if k not in (k1, k2)]
        out.extend(new)
        return _canonical(out)

    def crossover(self, pa: Placement, pb: Placement, rng) -> Placement | None:
        ms = [p[0] for p in self.mand]
        ns = [p[1] for p in self.mand]
        m1, m2 = sorted(rng.integers(min(ms), max(ms) + 1, size=2))
        n1, n2 = sorted(rng.integers(min(ns), max(ns) + 1, size=2))

        def inside(p: Pixel) -> bool:
            return m1 <= p[0] <= m2 and n1 <= p[1] <= n2

        kept = [d for d in pa if inside(d[0]) and inside(d[1])]
        kept += [d for d in pb if not inside(d[0]) and not inside(d[1])]
        return self.complete(kept, rng)


def genetic_step(
    S: PixelRegion,
    R: PixelRegion,
    reference: ExcitationField,
    evaluator: _CostEvaluator,
    ga: GaConfig,
    rng: np.random.Generator,
) -> tuple[Placement, float, int]:
    """GA over admissible placements of S; returns the best one found.

    The initial population mixes structured seeds (brick-layer horizontal
    and vertical, herringbone, extracted from preference-guided tilings of
    the whole remainder) with randomized admissible completions.  Crossover
    swaps a rectangular sub-block between parents and repairs the child by
    randomized backtracking; mutation flips parallel domino pairs in place.
    Every individual is admissibility-checked; costs are memoized so the
    returned evaluation count covers distinct placements only.
    """
    problem = _PartitionProblem(S, R)
    memo = _AdmissibilityMemo(R.minus(S), problem.margin)
    pixel_index = {p: k for k, p in enumerate(S.pixels() + problem.margin)}
    rows = evaluator.rows(list(pixel_index))
    cache: dict[Placement, float] = {}
    evaluations = 0

    def admissible(placement: Placement) -> bool:
        return memo.admissible(memo.bits_of(placement, S))

    def score(population: list[Placement]):
        nonlocal evaluations
        fresh = [p for p in dict.fromkeys(population) if p not in cache]
        if fresh:
            dw = evaluator.candidate_deltas(fresh, reference, pixel_index)
            phis = evaluator.eval_deltas(dw, rows)
            for p, phi in zip(fresh, phis):
                cache[p] = float(phi)
            evaluations += len(fresh)
        return [cache[p] for p in population]

    def random_admissible() -> Placement:
        for _ in range(200):
            cand = problem.complete((), rng)
            if cand is not None and admissible(cand):
                return cand
        for pref in ("horizontal", "vertical", "herringbone"):
            cand = problem.structured_seed(pref, rng)
            if cand is not None:
                return cand
        raise InfeasibleError("could not generate an admissible placement")

    population: list[Placement] = []
    for pref in ("horizontal", "vertical", "herringbone", "random"):
        cand = problem.structured_seed(pref, rng)
        if cand is not None and admissible(cand) and cand not in population:
            population.append(cand)
    while len(population) < ga.population:
        population.append(random_admissible())
    fitness = score(population)

    best_k = int(np.argmin(fitness))
    best, best_phi = population[best_k], fitness[best_k]

    def tournament() -> Placement:
        i = int(rng.integers(len(population)))
        j = int(rng.integers(len(population)))
        return population[i] if fitness[i] <= fitness[j] else population[j]

    for _ in range(ga.generations - 1):
        next_pop: list[Placement] = [best]
        while len(next_pop) < ga.population:
            pa, pb = tournament(), tournament()
            if rng.random() < ga.pc:
                child = None
                for _ in range(10):
                    cand = problem.crossover(pa, pb, rng)
                    if cand is not None and admissible(cand):
                        child = cand
                        break
                if child is None:
                    child = pa
            else:
                child = pa
            for site in problem.flip_sites(child):
                if rng.random() < ga.pm:
                    flipped = problem.flip(child, site)
                    if flipped is not None:
                        child = flipped
                        break
            next_pop.append(child)
        population = next_pop
        fitness = score(population)
        k = int(np.argmin(fitness))
        if fitness[k] < best_phi:
            best, best_phi = population[k], fitness[k]

    return best, float(best_phi), evaluations


# ---------------------------------------------------------------------------
# Full synthesis loop
# ---------------------------------------------------------------------------


def synthesize(config: SynthesisConfig) -> SynthesisResult:
    """Cluster the whole aperture partition by partition in raster order.

    Each iteration removes the winning placement's pixels from the untiled
    remainder; the trace records the winner's whole-array cost and the
    number of cost evaluations spent.  Cluster ids in the returned tiling
    are renumbered globally in acceptance order, 1-based.
    """
    scheme = config.scheme
    grid = scheme.grid
    evaluator = _CostEvaluator(grid, config.element_model, config.uv, config.mask, config.reference)
    remainder = PixelRegion.full(grid)
    clusters: list[tuple[Domino, float, float]] = []
    trace: list[IterationRecord] = []
    total_evals = 0
    last_phi = evaluator.phi_of_field(evaluator.base_field)
    use_ga = scheme.eta > config.eta_th + 1e-12

    for i in range(1, scheme.count + 1):
        S = scheme.partition_region(i).intersect(remainder)
        if S.count == 0:
            trace.append(IterationRecord(i, last_phi, 0))
            continue
        if use_ga:
            rng = np.random.default_rng((config.rng_seed, i))
            placement, phi, n_eval = genetic_step(
                S, remainder, config.reference, evaluator, config.ga, rng
            )
        else:
            placement, phi, n_eval = exhaustive_step(S, remainder, config.reference, evaluator)
        alpha, beta = subarray_average(placement, config.reference)
        evaluator.apply(placement, alpha, beta)
        clusters.extend(zip(placement, alpha, beta))
        remainder = remainder.minus_pixels(p for d in placement for p in d)
        if not is_tileable(remainder):
            raise StructuralError("accepted placement left an untileable remainder")
        total_evals += n_eval
        last_phi = phi
        trace.append(IterationRecord(i, phi, n_eval))

    if remainder.count:
        raise StructuralError("synthesis finished with uncovered pixels")
    tiling = Tiling.from_dominoes(grid, [d for d, _, _ in clusters])
    tiling.validate()
    return SynthesisResult(
        tiling=tiling,
        cluster_amplitude=np.array([a for _, a, _ in clusters]),
        cluster_phase=np.array([b for _, _, b in clusters]),
        phi_opt=float(last_phi),
        evaluations=total_evals,
        trace=tuple(trace),
    )


def exhaustive_whole_aperture(
    grid: ApertureGrid,
    reference: ExcitationField,
    mask: Mask,
    element_model: str,
    uv: UvGrid,
):
    """Score every tiling of the full aperture; the global optimum reference.

    Intended for desk-scale oracles (grids up to ~6x6); returns
    (best tiling dominoes, best phi, count).
    """
    evaluator = _CostEvaluator(grid, element_model, uv, mask, reference)
    full = PixelRegion.full(grid)
    pixel_index = {p: k for k, p in enumerate(full.pixels())}
    rows = evaluator.rows(list(pixel_index))
    batch: list[Placement] = []
    best = (None, np.inf)
    count = 0

    def flush():
        nonlocal best
        if not batch:
            return
        dw = evaluator.candidate_deltas(batch, reference, pixel_index)
        phis = evaluator.eval_deltas(dw, rows)
        k = int(np.argmin(phis))
        if phis[k] < best[1]:
            best = (batch[k], float(phis[k]))
        batch.clear()

    def visit(dominoes):
        nonlocal count
        count += 1
        batch.append(dominoes)
        if len(batch) >= 2048:
            flush()

    enumerate_tilings(full, visit)
    flush()
    if best[0] is None:
        raise InfeasibleError("aperture admits no tiling")
    return best[0], best[1], count


def tradeoff_indicator(
    phi_table: Mapping, eval_table: Mapping, key=None
):
    """Balance indicator 0.5 (phi / max phi + T / max T) over a sweep table.

    With a single key both ratios are 1.  Raises DomainError when either
    table is empty or its maximum is not positive.
    """
    if not phi_table or not eval_table:
        raise DomainError("indicator tables must be non-empty")
    if set(phi_table) != set(eval_table):
        raise DomainError("indicator tables must share their keys")
    max_phi = max(phi_table.values())
    max_t = max(eval_table.values())
    if max_phi <= 0 or max_t <= 0:
        raise DomainError("indicator tables must have positive maxima")
    chi = {k: 0.5 * (phi_table[k] / max_phi + eval_table[k] / max_t) for k in phi_table}
    if key is None:
        return chi
    return chi[key]
