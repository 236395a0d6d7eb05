"""Domino tilings of pixel regions.

A domino pairs two edge-adjacent pixels.  Three tightly-coupled views of a
tiling are implemented here:

* the cluster vector: per-pixel integer ids, two pixels per id (`Tiling`);
* the height function on lattice vertices, which is in bijection with the
  tilings of a simply-connected region and carries the partial order whose
  bottom element is the minimal tiling (`HeightField`, `minimal_tiling`);
* explicit backtracking enumeration, including the soft-boundary variant
  where a domino may pair a partition pixel with an adjacent untiled pixel
  just outside the partition (`enumerate_partition_tilings`).

Tileability of an arbitrary region (possibly with holes) is decided exactly
through bipartite perfect matching on the white/grey pixel adjacency graph,
which is equivalent to the height-function criterion but also covers
non-simply-connected residual regions.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from heapq import heappop, heappush

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .aperture import ApertureGrid, Pixel, PixelRegion, boundary_heights, boundary_vertices, oriented_step
from .errors import DomainError, StructuralError, UntileableError

Domino = tuple[Pixel, Pixel]


@dataclass(frozen=True)
class Tiling:
    """Per-pixel cluster assignment; id 0 marks pixels outside the tiling."""

    grid: ApertureGrid
    cluster: np.ndarray  # (M, N) int, cluster[m-1, n-1]

    def __post_init__(self):
        c = np.asarray(self.cluster, dtype=np.int32)
        if c.shape != (self.grid.M, self.grid.N):
            raise StructuralError(f"cluster shape {c.shape} does not match grid")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "cluster", c)

    @property
    def Q(self) -> int:
        ids = self.cluster[self.cluster > 0]
        return int(len(np.unique(ids)))

    def cluster_of(self, m: int, n: int) -> int:
        return int(self.cluster[m - 1, n - 1])

    def dominoes(self) -> list[Domino]:
        """Pixel pairs ordered by cluster id, each pair sorted row-major."""
        members: dict[int, list[Pixel]] = {}
        ms, ns = np.nonzero(self.cluster > 0)
        for m, n in zip(ms, ns):
            members.setdefault(int(self.cluster[m, n]), []).append((int(m) + 1, int(n) + 1))
        out = []
        for q in sorted(members):
            pair = sorted(members[q], key=lambda p: (p[1], p[0]))
            if len(pair) != 2:
                raise StructuralError(f"cluster {q} has {len(pair)} pixels, expected 2")
            out.append((pair[0], pair[1]))
        return out

    def validate(self):
        """Check the two-pixel, edge-adjacent structure of every cluster."""
        for a, b in self.dominoes():
            if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                raise StructuralError(f"cluster pixels {a} and {b} are not edge-adjacent")

    @classmethod
    def from_dominoes(cls, grid: ApertureGrid, dominoes) -> "Tiling":
        """Build a tiling with cluster ids assigned in the given order, 1-based."""
        c = np.zeros((grid.M, grid.N), dtype=np.int32)
        for q, (a, b) in enumerate(dominoes, start=1):
            for m, n in (a, b):
                if c[m - 1, n - 1]:
                    raise StructuralError(f"pixel ({m}, {n}) covered twice")
                c[m - 1, n - 1] = q
        return cls(grid, c)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tiling)
            and self.grid == other.grid
            and bool(np.array_equal(self.cluster, other.cluster))
        )

    def __hash__(self) -> int:
        return hash((self.grid, self.cluster.tobytes()))


@dataclass(frozen=True)
class HeightField:
    """Integer heights on the (M+1) x (N+1) vertex lattice."""

    grid: ApertureGrid
    values: np.ndarray  # (M+1, N+1) int, values[i, j]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        if v.shape != (self.grid.M + 1, self.grid.N + 1):
            raise StructuralError(f"height shape {v.shape} does not match vertex lattice")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def at(self, i: int, j: int) -> int:
        return int(self.values[i, j])

    @property
    def boundary_values(self) -> np.ndarray:
        """Heights of the periphery vertices, in boundary walk order."""
        return np.array([self.values[i, j] for i, j in boundary_vertices(self.grid)])

    @property
    def internal_values(self) -> np.ndarray:
        """Heights of the (M-1)(N-1) internal vertices, row-major in (i, j)."""
        return self.values[1:-1, 1:-1].reshape(-1)


def _vertex_edges(grid: ApertureGrid):
    """All oriented lattice edges (v_from, v_to) of the full rectangle."""
    M, N = grid.M, grid.N
    edges = []
    for i in range(M + 1):
        for j in range(N):
            a, b = (i, j), (i, j + 1)
            edges.append((a, b) if oriented_step(a, b) == 1 else (b, a))
    for i in range(M):
        for j in range(N + 1):
            a, b = (i, j), (i + 1, j)
            edges.append((a, b) if oriented_step(a, b) == 1 else (b, a))
    return edges


def _domino_crossing_lookup(tiling: Tiling):
    """Set of lattice edges (frozenset of 2 vertices) interior to a domino."""
    crossed = set()
    for a, b in tiling.dominoes():
        (m1, n1), (m2, n2) = a, b
        if n1 == n2:  # horizontal domino, shared edge is vertical at x = max m - 1
            i = max(m1, m2) - 1
            crossed.add(frozenset({(i, n1 - 1), (i, n1)}))
        else:  # vertical domino, shared edge horizontal at y = max n - 1
            j = max(n1, n2) - 1
            crossed.add(frozenset({(m1 - 1, j), (m1, j)}))
    return crossed


def height_of_tiling(tiling: Tiling) -> HeightField:
    """Unique height function consistent with a full tiling of the grid.

    Walk from the top-left vertex (height 0): along an oriented edge the
    height rises by 1 unless the edge is crossed by a domino, in which case
    it drops by 3.  Inconsistent assignments (which cannot arise from a
    valid tiling of a simply-connected region) raise StructuralError.
    """
    grid = tiling.grid
    M, N = grid.M, grid.N
    crossed = _domino_crossing_lookup(tiling)
    h = np.full((M + 1, N + 1), np.iinfo(np.int64).min, dtype=np.int64)
    start = (0, N)
    h[start] = 0
    stack = [start]
    while stack:
        i, j = stack.pop()
        for ni, nj in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if not (0 <= ni <= M and 0 <= nj <= N):
                continue
            step = oriented_step((i, j), (ni, nj))
            drop = frozenset({(i, j), (ni, nj)}) in crossed
            delta = step * (-3 if drop else 1)
            val = h[i, j] + delta
            if h[ni, nj] == np.iinfo(np.int64).min:
                h[ni, nj] = val
                stack.append((ni, nj))
            elif h[ni, nj] != val:
                raise StructuralError(
                    f"inconsistent height at vertex ({ni}, {nj}): {h[ni, nj]} vs {val}"
                )
    return HeightField(grid, h)


def tiling_of_height(grid: ApertureGrid, field: HeightField) -> Tiling:
    """Inverse of height_of_tiling: dominoes sit where |height step| is 3."""
    dominoes = []
    h = field.values
    for n in range(1, grid.N + 1):  # vertical shared edges -> horizontal dominoes
        for m in range(1, grid.M):
            if abs(h[m, n - 1] - h[m, n]) == 3:
                dominoes.append(((m, n), (m + 1, n)))
    for n in range(1, grid.N):  # horizontal shared edges -> vertical dominoes
        for m in range(1, grid.M + 1):
            if abs(h[m - 1, n] - h[m, n]) == 3:
                dominoes.append(((m, n), (m, n + 1)))
    tiling = Tiling.from_dominoes(grid, dominoes)
    if np.any(tiling.cluster == 0):
        raise StructuralError("height field does not encode a full tiling")
    return tiling


def minimal_tiling(grid: ApertureGrid) -> tuple[Tiling, HeightField]:
    """The unique tiling whose height function is pointwise minimal.

    The minimal height at vertex v is max_b (h_b - d(b -> v)) over boundary
    vertices b, where d is the shortest directed path cost with weight 3
    along an edge's orientation and 1 against it.  Computed by multi-source
    Dijkstra; the resulting field is a valid height function whenever the
    rectangle is tileable, and its +/-3 steps identify the dominoes.
    """
    if grid.num_pixels % 2:
        raise UntileableError(f"{grid.M}x{grid.N} grid has odd pixel count")
    M, N = grid.M, grid.N
    bverts = boundary_vertices(grid)
    bh = boundary_heights(grid)
    # dist[v] accumulates min_b (d(b -> v) - h_b); heights are -dist.
    dist = {}
    heap = []
    for v, h in zip(bverts, bh):
        heappush(heap, (-int(h), v))
    while heap:
        d, (i, j) = heappop(heap)
        if (i, j) in dist:
            continue
        dist[(i, j)] = d
        for ni, nj in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if not (0 <= ni <= M and 0 <= nj <= N) or (ni, nj) in dist:
                continue
            w = 3 if oriented_step((i, j), (ni, nj)) == 1 else 1
            heappush(heap, (d + w, (ni, nj)))
    h = np.zeros((M + 1, N + 1), dtype=np.int64)
    for (i, j), d in dist.items():
        h[i, j] = -d
    for (i, j), hb in zip(bverts, bh):
        if h[i, j] != hb:
            raise StructuralError("minimal height field violates boundary values")
    field = HeightField(grid, h)
    tiling = tiling_of_height(grid, field)
    back = height_of_tiling(tiling)
    if not np.array_equal(back.values, field.values):
        raise StructuralError("minimal height field is not realized by its tiling")
    return tiling, field


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _indexed(pixels: list[Pixel]):
    index = {p: k for k, p in enumerate(pixels)}
    return index


def enumerate_tilings(region: PixelRegion, visitor=None) -> int:
    """Visit every perfect domino tiling of the region exactly once.

    The visitor, if given, receives the tiling as a tuple of pixel-pair
    dominoes in enumeration order.  Returns the number of tilings; an
    untileable region yields 0.  Enumeration is deterministic: the
    lowest-index uncovered pixel (row-major by n then m) is always paired
    next, with its +m neighbor tried before its +n neighbor.
    """
    pixels = region.pixels()
    n_pix = len(pixels)
    if n_pix == 0:
        if visitor is not None:
            visitor(())
        return 1
    if n_pix % 2:
        return 0
    index = _indexed(pixels)
    moves: list[list[tuple[int, int]]] = []
    for m, n in pixels:
        mv = []
        for q in ((m + 1, n), (m, n + 1)):
            k = index.get(q)
            if k is not None:
                mv.append((k, 1 << k))
        moves.append(mv)
    full = (1 << n_pix) - 1
    count = 0
    acc: list[Domino] = []
    emit = visitor is not None

    def rec(occ: int, start: int):
        nonlocal count
        while occ & (1 << start):
            start += 1
        occ1 = occ | (1 << start)
        for k, kb in moves[start]:
            if not occ1 & kb:
                o2 = occ1 | kb
                if emit:
                    acc.append((pixels[start], pixels[k]))
                if o2 == full:
                    count += 1
                    if emit:
                        visitor(tuple(acc))
                else:
                    rec(o2, start + 1)
                if emit:
                    acc.pop()

    rec(0, 0)
    return count


def count_tilings(region: PixelRegion) -> int:
    """Exact tiling count by the same backtracking order, no materialization."""
    return enumerate_tilings(region, None)


def is_tileable(region: PixelRegion) -> bool:
    """True iff the region admits a perfect domino tiling.

    Decided via maximum bipartite matching between white and grey pixels,
    exact for any region including ones with holes.
    """
    pixels = region.pixels()
    if len(pixels) % 2:
        return False
    if not pixels:
        return True
    whites = [p for p in pixels if (p[0] + p[1]) % 2 == 0]
    greys = [p for p in pixels if (p[0] + p[1]) % 2 == 1]
    if len(whites) != len(greys):
        return False
    gidx = {p: k for k, p in enumerate(greys)}
    indptr = [0]
    indices = []
    for m, n in whites:
        for q in ((m + 1, n), (m - 1, n), (m, n + 1), (m, n - 1)):
            k = gidx.get(q)
            if k is not None:
                indices.append(k)
        indptr.append(len(indices))
    graph = csr_matrix(
        (np.ones(len(indices), dtype=np.int8), indices, indptr),
        shape=(len(whites), len(greys)),
    )
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def soft_extended_region(S: PixelRegion, R: PixelRegion) -> PixelRegion:
    """S plus the one-pixel soft margin: pixels of R - S edge-adjacent to S."""
    if not S.issubset(R):
        raise DomainError("S must be a subset of R")
    sm = S.mask
    grown = sm.copy()
    grown[1:, :] |= sm[:-1, :]
    grown[:-1, :] |= sm[1:, :]
    grown[:, 1:] |= sm[:, :-1]
    grown[:, :-1] |= sm[:, 1:]
    return PixelRegion(S.grid, sm | (grown & R.mask))


def soft_margin_pixels(S: PixelRegion, R: PixelRegion) -> list[Pixel]:
    """The margin pixels of soft_extended_region(S, R), row-major order."""
    return soft_extended_region(S, R).minus(S).pixels()


def enumerate_partition_tilings(S: PixelRegion, R: PixelRegion, visitor=None) -> int:
    """Visit every soft-boundary domino placement of partition S inside R.

    A placement covers every pixel of S exactly once; each domino pairs a
    pixel of S with another pixel of S or with a margin pixel (a pixel of
    R - S edge-adjacent to S), and uses each margin pixel at most once.
    The visitor receives (dominoes, used_margin_bits) where the bitmask is
    over soft_margin_pixels(S, R) order.  Returns the number of placements.
    """
    if not S.issubset(R):
        raise DomainError("S must be a subset of R")
    mand = S.pixels()
    margin = soft_margin_pixels(S, R)
    if not mand:
        if visitor is not None:
            visitor((), 0)
        return 1
    midx = _indexed(mand)
    gidx = _indexed(margin)
    moves: list[list[tuple]] = []
    for m, n in mand:
        mv = []
        for q in ((m + 1, n), (m, n + 1)):
            k = midx.get(q)
            if k is not None:
                mv.append((q, 1 << k, 0))
        for q in ((m + 1, n), (m - 1, n), (m, n + 1), (m, n - 1)):
            k = gidx.get(q)
            if k is not None:
                mv.append((q, 0, 1 << k))
        moves.append(mv)
    full = (1 << len(mand)) - 1
    count = 0
    acc: list[Domino] = []
    emit = visitor is not None

    def rec(occ: int, used: int, start: int):
        nonlocal count
        while occ & (1 << start):
            start += 1
        occ1 = occ | (1 << start)
        for q, mb, gb in moves[start]:
            if occ1 & mb or used & gb:
                continue
            o2 = occ1 | mb
            if emit:
                acc.append((mand[start], q))
            if o2 == full:
                count += 1
                if emit:
                    visitor(tuple(acc), used | gb)
            else:
                rec(o2, used | gb, start + 1)
            if emit:
                acc.pop()

    rec(0, 0, 0)
    return count


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------


def write_tiling_csv(tiling: Tiling, path):
    """One row per pixel, header m,n,cluster; cluster blank when untiled."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "n", "cluster"])
        for n in range(1, tiling.grid.N + 1):
            for m in range(1, tiling.grid.M + 1):
                q = tiling.cluster_of(m, n)
                w.writerow([m, n, q if q else ""])


def read_tiling_csv(grid: ApertureGrid, path) -> Tiling:
    from .errors import FormatError

    c = np.zeros((grid.M, grid.N), dtype=np.int32)
    seen = set()
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        if r.fieldnames is None or [f.strip() for f in r.fieldnames] != ["m", "n", "cluster"]:
            raise FormatError(f"{path}: expected header m,n,cluster")
        for row in r:
            m, n = int(row["m"]), int(row["n"])
            if not (1 <= m <= grid.M and 1 <= n <= grid.N):
                raise FormatError(f"{path}: pixel ({m}, {n}) outside grid")
            if (m, n) in seen:
                raise FormatError(f"{path}: duplicate pixel ({m}, {n})")
            seen.add((m, n))
            val = (row["cluster"] or "").strip()
            c[m - 1, n - 1] = int(val) if val else 0
    if len(seen) != grid.num_pixels:
        raise FormatError(f"{path}: {len(seen)} rows, expected {grid.num_pixels}")
    return Tiling(grid, c)
