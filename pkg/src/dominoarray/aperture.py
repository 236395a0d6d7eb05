"""Pixel lattice geometry for a rectangular planar array.

A grid of M columns by N rows of square pixels, one radiating element per
pixel, lattice-centered so element (m, n) sits at

    x_m = (m - (M + 1) / 2) * dx,    y_n = (n - (N + 1) / 2) * dy

with spacings in wavelengths and 1-based public indices.  Pixels are
checkerboard colored ((1, 1) is white) and every lattice edge carries an
orientation: white cells clockwise, grey cells counter-clockwise (y up).
That orientation is what makes height functions on the vertex lattice well
defined; see the tiling module.

Vertices are addressed as (i, j) with 0 <= i <= M, 0 <= j <= N, vertex
(i, j) being the corner point at x = (i - M/2) dx, y = (j - N/2) dy.  The
"top-left" vertex is (0, N): minimum x, maximum y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

WHITE = "white"
GREY = "grey"

Vertex = tuple[int, int]
Pixel = tuple[int, int]


@dataclass(frozen=True)
class ApertureGrid:
    """Rectangular M x N pixel lattice with spacings in wavelengths."""

    M: int
    N: int
    dx: float
    dy: float

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ConfigurationError(f"grid must be at least 1x1, got {self.M}x{self.N}")
        if self.M % 2 and self.N % 2:
            raise ConfigurationError(
                f"at least one of M, N must be even for full domino coverage, got {self.M}x{self.N}"
            )
        if self.dx <= 0 or self.dy <= 0:
            raise ConfigurationError(f"spacings must be positive, got dx={self.dx}, dy={self.dy}")

    @property
    def num_pixels(self) -> int:
        return self.M * self.N

    def x(self, m: int) -> float:
        """x position (wavelengths) of column m, 1-based."""
        return (m - (self.M + 1) / 2.0) * self.dx

    def y(self, n: int) -> float:
        return (n - (self.N + 1) / 2.0) * self.dy

    @property
    def x_positions(self) -> np.ndarray:
        return (np.arange(1, self.M + 1) - (self.M + 1) / 2.0) * self.dx

    @property
    def y_positions(self) -> np.ndarray:
        return (np.arange(1, self.N + 1) - (self.N + 1) / 2.0) * self.dy


def checkerboard_color(grid: ApertureGrid, m: int, n: int) -> str:
    """Color of pixel (m, n); (1, 1) is white and colors alternate."""
    if not (1 <= m <= grid.M and 1 <= n <= grid.N):
        raise DomainError(f"pixel ({m}, {n}) outside {grid.M}x{grid.N} grid")
    return WHITE if (m + n) % 2 == 0 else GREY


def oriented_step(v_from: Vertex, v_to: Vertex) -> int:
    """+1 if the lattice edge is oriented v_from -> v_to, else -1.

    Orientation follows the checkerboard: white cells clockwise, grey
    counter-clockwise, which reduces to a parity rule on the edge's lower
    endpoint: a vertical edge above vertex (i, j) points up iff i + j is
    even; a horizontal edge right of (i, j) points right iff i + j is odd.
    """
    (i1, j1), (i2, j2) = v_from, v_to
    if i1 == i2 and abs(j2 - j1) == 1:
        points_up = (i1 + min(j1, j2)) % 2 == 0
        return 1 if (j2 > j1) == points_up else -1
    if j1 == j2 and abs(i2 - i1) == 1:
        points_right = (min(i1, i2) + j1) % 2 == 1
        return 1 if (i2 > i1) == points_right else -1
    raise DomainError(f"vertices {v_from} and {v_to} are not lattice-adjacent")


def boundary_vertices(grid: ApertureGrid) -> list[Vertex]:
    """Periphery vertices in walk order, counter-clockwise from top-left.

    Starts at (0, N) and goes down the left side first; B = 2 (M + N)
    vertices in total.
    """
    M, N = grid.M, grid.N
    left = [(0, j) for j in range(N, -1, -1)]
    bottom = [(i, 0) for i in range(1, M + 1)]
    right = [(M, j) for j in range(1, N + 1)]
    top = [(i, N) for i in range(M - 1, 0, -1)]
    return left + bottom + right + top


def boundary_heights(grid: ApertureGrid) -> np.ndarray:
    """Height-function values on the periphery, in boundary_vertices order.

    The first (top-left) vertex is pinned to 0 and each step adds +1 along
    the edge orientation, -1 against it.  The walk is closed, so the signed
    steps around the full periphery sum to zero.
    """
    verts = boundary_vertices(grid)
    h = np.zeros(len(verts), dtype=np.int64)
    for b in range(1, len(verts)):
        h[b] = h[b - 1] + oriented_step(verts[b - 1], verts[b])
    closure = h[-1] + oriented_step(verts[-1], verts[0])
    if closure != 0:
        raise AssertionError("periphery height walk failed to close")
    return h


class PixelRegion:
    """Immutable subset of a grid's pixels, stored as an (M, N) boolean mask."""

    __slots__ = ("grid", "mask")

    def __init__(self, grid: ApertureGrid, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (grid.M, grid.N):
            raise DomainError(f"mask shape {mask.shape} does not match {grid.M}x{grid.N} grid")
        mask = mask.copy()
        mask.setflags(write=False)
        self.grid = grid
        self.mask = mask

    @classmethod
    def full(cls, grid: ApertureGrid) -> "PixelRegion":
        return cls(grid, np.ones((grid.M, grid.N), dtype=bool))

    @classmethod
    def empty(cls, grid: ApertureGrid) -> "PixelRegion":
        return cls(grid, np.zeros((grid.M, grid.N), dtype=bool))

    @classmethod
    def from_pixels(cls, grid: ApertureGrid, pixels) -> "PixelRegion":
        mask = np.zeros((grid.M, grid.N), dtype=bool)
        for m, n in pixels:
            if not (1 <= m <= grid.M and 1 <= n <= grid.N):
                raise DomainError(f"pixel ({m}, {n}) outside {grid.M}x{grid.N} grid")
            mask[m - 1, n - 1] = True
        return cls(grid, mask)

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    def __bool__(self) -> bool:
        return bool(self.mask.any())

    def __contains__(self, pixel: Pixel) -> bool:
        m, n = pixel
        return 1 <= m <= self.grid.M and 1 <= n <= self.grid.N and bool(self.mask[m - 1, n - 1])

    def pixels(self) -> list[Pixel]:
        """Member pixels sorted row-major: by n, then m."""
        ms, ns = np.nonzero(self.mask)
        order = np.lexsort((ms, ns))
        return [(int(ms[k]) + 1, int(ns[k]) + 1) for k in order]

    def issubset(self, other: "PixelRegion") -> bool:
        return bool(np.all(~self.mask | other.mask))

    def intersect(self, other: "PixelRegion") -> "PixelRegion":
        return PixelRegion(self.grid, self.mask & other.mask)

    def union(self, other: "PixelRegion") -> "PixelRegion":
        return PixelRegion(self.grid, self.mask | other.mask)

    def minus(self, other: "PixelRegion") -> "PixelRegion":
        return PixelRegion(self.grid, self.mask & ~other.mask)

    def minus_pixels(self, pixels) -> "PixelRegion":
        mask = self.mask.copy()
        for m, n in pixels:
            mask[m - 1, n - 1] = False
        return PixelRegion(self.grid, mask)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PixelRegion)
            and self.grid == other.grid
            and bool(np.array_equal(self.mask, other.mask))
        )

    def __hash__(self) -> int:
        return hash((self.grid, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"PixelRegion({self.grid.M}x{self.grid.N}, {self.count} pixels)"


@dataclass(frozen=True)
class PartitionScheme:
    """Raster-scan split of the grid into equal Mhat x Nhat blocks."""

    grid: ApertureGrid
    Mhat: int
    Nhat: int

    def __post_init__(self):
        M, N = self.grid.M, self.grid.N
        if not (1 <= self.Mhat <= M and 1 <= self.Nhat <= N):
            raise ConfigurationError(f"partition {self.Mhat}x{self.Nhat} exceeds grid {M}x{N}")
        if M % self.Mhat or N % self.Nhat:
            raise ConfigurationError(
                f"partition {self.Mhat}x{self.Nhat} must divide the {M}x{N} grid exactly"
            )

    @property
    def count(self) -> int:
        return (self.grid.M // self.Mhat) * (self.grid.N // self.Nhat)

    @property
    def eta(self) -> float:
        """Partition-to-aperture size ratio sqrt((Mhat Nhat)/(M N)) in (0, 1]."""
        return float(np.sqrt((self.Mhat * self.Nhat) / (self.grid.M * self.grid.N)))

    @property
    def delta(self) -> float:
        """Partition aspect ratio (Mhat Nhat)/(M N)."""
        return (self.Mhat * self.Nhat) / (self.grid.M * self.grid.N)

    @property
    def origins(self) -> list[Pixel]:
        """Lowest-index corner pixel of each partition, raster order."""
        return [partition_pixel(i, 1, 1, self) for i in range(1, self.count + 1)]

    def partition_pixels(self, i: int) -> list[Pixel]:
        return [
            partition_pixel(i, r, s, self)
            for s in range(1, self.Nhat + 1)
            for r in range(1, self.Mhat + 1)
        ]

    def partition_region(self, i: int) -> PixelRegion:
        return PixelRegion.from_pixels(self.grid, self.partition_pixels(i))


def partition_pixel(i: int, r: int, s: int, scheme: PartitionScheme) -> Pixel:
    """Global pixel index of the (r, s)-th pixel of the i-th partition.

    Blocks raster left-to-right along m first, then advance in n; with
    W = M / Mhat blocks per row this is

        m = r + ((i - 1) mod W) * Mhat,    n = s + floor((i - 1) / W) * Nhat
    """
    if not (1 <= i <= scheme.count):
        raise DomainError(f"partition index {i} outside 1..{scheme.count}")
    if not (1 <= r <= scheme.Mhat and 1 <= s <= scheme.Nhat):
        raise DomainError(f"local pixel ({r}, {s}) outside {scheme.Mhat}x{scheme.Nhat} partition")
    per_row = scheme.grid.M // scheme.Mhat
    bx = (i - 1) % per_row
    by = (i - 1) // per_row
    return (r + bx * scheme.Mhat, s + by * scheme.Nhat)


def raster_partitions(grid: ApertureGrid, Mhat: int, Nhat: int) -> PartitionScheme:
    """Partition the grid into I = (M/Mhat)(N/Nhat) raster-ordered blocks."""
    return PartitionScheme(grid, Mhat, Nhat)
