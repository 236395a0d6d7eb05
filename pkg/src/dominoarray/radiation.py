"""Far-field evaluation on a uv lattice, excitations, masks, and metrics.

The power pattern of an M x N lattice with complex excitations w_mn and a
common element pattern g(u, v) is

    P(u, v) = | sum_m sum_n g(u, v) w_mn exp(j 2 pi (x_m u + y_n v)) |^2

with positions in wavelengths.  On the lattice u_k = k / (Px dx) the inner
sum is a zero-padded 2-D DFT, so evaluation costs two FFTs regardless of
excitation; `array_pattern_direct` keeps the literal double sum as the
slow reference path.

Masks are strictly positive upper bounds on P over the visible disk
u^2 + v^2 <= 1, and the matching cost is the mask-normalized integral of
the positive part of P - mask.  Scalar metrics (directivity, sidelobe
level, half-power beamwidths, EIRP) are measured from the sampled pattern;
the main lobe is delimited by the first local minimum along radial cuts
from the peak.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.signal.windows import chebwin

from .aperture import ApertureGrid
from .errors import ConfigurationError, DomainError, FormatError, ResolutionError

ELEMENT_MODELS = ("isotropic", "cosine-root")
RIM_EPS = 1e-9  # 1 - u^2 - v^2 below this is treated as the disk rim


# ---------------------------------------------------------------------------
# uv lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UvGrid:
    """Uniform uv lattice covering the visible disk, FFT-aligned per axis.

    u = ku * du with du = 1 / (fft_x * dx), and likewise for v, so the
    array factor on the lattice is an exact zero-padded DFT.  The lattice
    always contains u = v = 0 and extends to at least |u| = |v| = 1.
    """

    u: np.ndarray
    v: np.ndarray
    fft_x: int
    fft_y: int

    def __post_init__(self):
        for name in ("u", "v"):
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def du(self) -> float:
        return float(self.u[1] - self.u[0])

    @property
    def dv(self) -> float:
        return float(self.v[1] - self.v[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.u), len(self.v))

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.u, self.v, indexing="ij")

    def inside_disk(self) -> np.ndarray:
        uu, vv = self.meshes()
        return uu * uu + vv * vv <= 1.0


def make_uv_grid(grid: ApertureGrid, resolution: int = 512) -> UvGrid:
    """Build the lattice for a target of ~resolution points across [-1, 1].

    The FFT size per axis is at least resolution / (2 d) and at least 4x
    the element count, so the element lattice is always zero-padded by 4x
    or more and the uv spacing is no coarser than 2 / resolution.
    """
    if resolution < 8:
        raise ConfigurationError(f"uv resolution {resolution} is too small")

    def axis(d: float, count: int):
        size = max(int(np.ceil(resolution / (2.0 * d))), 4 * count)
        du = 1.0 / (size * d)
        half = int(np.ceil(size * d - 1e-9))
        k = np.arange(-half, half + 1)
        return k * du, size

    u, fx = axis(grid.dx, grid.M)
    v, fy = axis(grid.dy, grid.N)
    return UvGrid(u, v, fx, fy)


# ---------------------------------------------------------------------------
# Excitations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExcitationField:
    """Per-element amplitude (>= 0) and phase (radians) on the M x N grid."""

    amplitude: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitude, dtype=float)
        p = np.asarray(self.phase, dtype=float)
        if a.shape != p.shape or a.ndim != 2:
            raise DomainError(f"amplitude/phase shapes {a.shape}/{p.shape} must match and be 2-D")
        if not np.all(np.isfinite(a)) or np.any(a < 0):
            raise DomainError("amplitudes must be finite and non-negative")
        if not np.all(np.isfinite(p)):
            raise DomainError("phases must be finite")
        for arr, name in ((a, "amplitude"), (p, "phase")):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.amplitude.shape

    @property
    def weights(self) -> np.ndarray:
        return self.amplitude * np.exp(1j * self.phase)


def uniform_weights(M: int, N: int) -> ExcitationField:
    return ExcitationField(np.ones((M, N)), np.zeros((M, N)))


def dolph_chebyshev_weights(M: int, N: int, sll_db: float) -> ExcitationField:
    """Separable Dolph-Chebyshev taper with the given per-plane sidelobe level.

    sll_db is the (negative) sidelobe level in dB; each principal-plane
    pattern is equiripple at exactly that level.  Phases are zero and the
    amplitude is peak-normalized.
    """
    if M < 2 or N < 2:
        raise ConfigurationError("Dolph-Chebyshev taper needs at least 2 elements per axis")
    if not sll_db < 0:
        raise ConfigurationError(f"sidelobe level must be negative dB, got {sll_db}")
    with warnings.catch_warnings():
        # chebwin warns below 45 dB about spectral-analysis use; irrelevant here.
        warnings.simplefilter("ignore", UserWarning)
        wx = chebwin(M, at=-sll_db)
        wy = chebwin(N, at=-sll_db)
    amp = np.outer(wx, wy)
    amp = amp / amp.max()
    return ExcitationField(amp, np.zeros_like(amp))


def steering_phases(grid: ApertureGrid, u0: float, v0: float) -> np.ndarray:
    """Linear phase front -2 pi (x_m u0 + y_n v0) that points the beam at (u0, v0)."""
    if u0 * u0 + v0 * v0 > 1.0 + 1e-12:
        raise DomainError(f"steering ({u0}, {v0}) outside the unit disk")
    return -2.0 * np.pi * (np.add.outer(grid.x_positions * u0, grid.y_positions * v0))


def save_weights(exc: ExcitationField, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "n", "alpha", "beta_rad"])
        M, N = exc.shape
        for n in range(1, N + 1):
            for m in range(1, M + 1):
                w.writerow([m, n, f"{exc.amplitude[m-1, n-1]:.17g}", f"{exc.phase[m-1, n-1]:.17g}"])


def load_weights(path, M: int, N: int) -> ExcitationField:
    """Parse excitation CSV m,n,alpha,beta_rad covering all M x N elements."""
    amp = np.zeros((M, N))
    ph = np.zeros((M, N))
    seen = set()
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        if r.fieldnames is None or [f.strip() for f in r.fieldnames] != ["m", "n", "alpha", "beta_rad"]:
            raise FormatError(f"{path}: expected header m,n,alpha,beta_rad")
        for row in r:
            m, n = int(row["m"]), int(row["n"])
            if not (1 <= m <= M and 1 <= n <= N):
                raise FormatError(f"{path}: element ({m}, {n}) outside {M}x{N} grid")
            if (m, n) in seen:
                raise FormatError(f"{path}: duplicate element ({m}, {n})")
            seen.add((m, n))
            amp[m - 1, n - 1] = float(row["alpha"])
            ph[m - 1, n - 1] = float(row["beta_rad"])
    if len(seen) != M * N:
        raise FormatError(f"{path}: {len(seen)} elements, expected {M * N}")
    return ExcitationField(amp, ph)


# ---------------------------------------------------------------------------
# Element patterns and the power pattern
# ---------------------------------------------------------------------------


def element_gain(model: str, uu: np.ndarray, vv: np.ndarray) -> np.ndarray:
    """Scalar element amplitude pattern on the given uv samples.

    isotropic: unit magnitude.  cosine-root: ((1 - u^2 - v^2)/2)^(1/4)
    inside the visible disk, zero outside.
    """
    if model == "isotropic":
        return np.ones(np.broadcast(uu, vv).shape)
    if model == "cosine-root":
        arg = (1.0 - uu * uu - vv * vv) / 2.0
        return np.power(np.maximum(arg, 0.0), 0.25)
    raise ConfigurationError(f"unknown element model {model!r}; choose from {ELEMENT_MODELS}")


@dataclass(frozen=True, eq=False)
class PowerPattern:
    """Sampled P(u, v) >= 0 on a uv lattice."""

    uv: UvGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.uv.shape:
            raise DomainError(f"pattern shape {v.shape} does not match lattice {self.uv.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def array_field(exc: ExcitationField, grid: ApertureGrid, model: str, uv: UvGrid) -> np.ndarray:
    """Complex far field on the lattice via zero-padded 2-D FFT.

    Exact (to rounding) on UvGrid lattices because u_k = k / (fft_x dx):
    the element sum collapses to an inverse DFT times a linear phase from
    the lattice centering.
    """
    M, N = grid.M, grid.N
    if exc.shape != (M, N):
        raise DomainError(f"excitation shape {exc.shape} does not match grid {M}x{N}")
    Px, Py = uv.fft_x, uv.fft_y
    if Px < M or Py < N:
        raise DomainError("uv lattice FFT size smaller than the element lattice")
    buf = np.zeros((Px, Py), dtype=complex)
    buf[:M, :N] = exc.weights
    spec = np.fft.ifft2(buf) * (Px * Py)
    kx = np.rint(uv.u / uv.du).astype(int)
    ky = np.rint(uv.v / uv.dv).astype(int)
    af = spec[np.ix_(kx % Px, ky % Py)]
    af = af * np.exp(-1j * np.pi * (M - 1) * kx / Px)[:, None]
    af = af * np.exp(-1j * np.pi * (N - 1) * ky / Py)[None, :]
    uu, vv = uv.meshes()
    return element_gain(model, uu, vv) * af


def array_pattern(
    exc: ExcitationField, grid: ApertureGrid, model: str, uv: UvGrid
) -> PowerPattern:
    """Power pattern |F|^2 via the zero-padded FFT field evaluation."""
    f = array_field(exc, grid, model, uv)
    return PowerPattern(uv, f.real**2 + f.imag**2)


def array_pattern_direct(
    exc: ExcitationField, grid: ApertureGrid, model: str, u_pts, v_pts
) -> np.ndarray:
    """Literal double-sum evaluation of P at arbitrary (u, v) points."""
    u_pts = np.atleast_1d(np.asarray(u_pts, dtype=float))
    v_pts = np.atleast_1d(np.asarray(v_pts, dtype=float))
    ex = np.exp(2j * np.pi * np.outer(u_pts, grid.x_positions))
    ey = np.exp(2j * np.pi * np.outer(v_pts, grid.y_positions))
    f = np.einsum("pm,mn,pn->p", ex, exc.weights, ey)
    g = element_gain(model, u_pts, v_pts)
    return np.abs(g * f) ** 2


# ---------------------------------------------------------------------------
# Masks
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Mask:
    """Strictly positive upper bound on P over the visible disk."""

    uv: UvGrid
    psi: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.psi, dtype=float)
        if p.shape != self.uv.shape:
            raise DomainError(f"mask shape {p.shape} does not match lattice {self.uv.shape}")
        if np.any(p[self.uv.inside_disk()] <= 0):
            raise ConfigurationError("mask must be strictly positive over the visible disk")
        p.setflags(write=False)
        object.__setattr__(self, "psi", p)


@dataclass(frozen=True)
class MaskSpec:
    """Piecewise-constant mask: far-region level, main-lobe disk, optional rings.

    Levels are in dB relative to a peak power supplied at build time (the
    reference pattern peak); rings are (r_in, r_out, level_db) annuli around
    the steering point, applied after the base level, with the main-lobe
    disk applied last.
    """

    base_db: float
    mainlobe_radius: float
    mainlobe_db: float = 1.0
    rings: tuple[tuple[float, float, float], ...] = ()

    def build(self, uv: UvGrid, u0: float, v0: float, peak_power: float) -> Mask:
        if peak_power <= 0:
            raise ConfigurationError("mask normalization peak must be positive")
        if self.mainlobe_radius <= 0:
            raise ConfigurationError("main-lobe mask radius must be positive")
        uu, vv = uv.meshes()
        r = np.hypot(uu - u0, vv - v0)
        psi = np.full(uv.shape, peak_power * 10.0 ** (self.base_db / 10.0))
        for r_in, r_out, level_db in self.rings:
            sel = (r >= r_in) & (r < r_out)
            psi[sel] = peak_power * 10.0 ** (level_db / 10.0)
        psi[r <= self.mainlobe_radius] = peak_power * 10.0 ** (self.mainlobe_db / 10.0)
        return Mask(uv, psi)


def mask_cost(pattern: PowerPattern, mask: Mask) -> float:
    """Mask-normalized integral of the positive part of P - mask over the disk.

    Zero iff P <= mask at every in-disk sample.
    """
    if pattern.uv is not mask.uv and (
        not np.array_equal(pattern.uv.u, mask.uv.u) or not np.array_equal(pattern.uv.v, mask.uv.v)
    ):
        raise DomainError("pattern and mask must share a uv lattice")
    inside = mask.uv.inside_disk()
    psi = mask.psi[inside]
    p = pattern.values[inside]
    cell = mask.uv.du * mask.uv.dv
    num = float(np.maximum(p - psi, 0.0).sum() * cell)
    den = float(psi.sum() * cell)
    return num / den


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternMetrics:
    sll_db: float
    d_dbi: float
    hpbw_az_deg: float
    hpbw_el_deg: float
    eirp_dbw: float | None = None
    phi: float | None = None


def _hill_climb(values: np.ndarray, i: int, j: int) -> tuple[int, int]:
    U, V = values.shape
    while True:
        best = (i, j)
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                a, b = i + di, j + dj
                if 0 <= a < U and 0 <= b < V and values[a, b] > values[best]:
                    best = (a, b)
        if best == (i, j):
            return i, j
        i, j = best


def _bilinear(values: np.ndarray, uv: UvGrid, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    fu = (us - uv.u[0]) / uv.du
    fv = (vs - uv.v[0]) / uv.dv
    i0 = np.clip(np.floor(fu).astype(int), 0, len(uv.u) - 2)
    j0 = np.clip(np.floor(fv).astype(int), 0, len(uv.v) - 2)
    tu = np.clip(fu - i0, 0.0, 1.0)
    tv = np.clip(fv - j0, 0.0, 1.0)
    v00 = values[i0, j0]
    v10 = values[i0 + 1, j0]
    v01 = values[i0, j0 + 1]
    v11 = values[i0 + 1, j0 + 1]
    return (1 - tu) * (1 - tv) * v00 + tu * (1 - tv) * v10 + (1 - tu) * tv * v01 + tu * tv * v11


def _mainlobe_exclusion(pattern: PowerPattern, peak_uv, n_rays: int) -> np.ndarray:
    """In-disk samples belonging to the main lobe, delimited per radial cut.

    Along each of n_rays directions from the peak, the lobe extends to the
    first strict rise of the (bilinearly sampled) pattern; the exclusion
    radius per direction is that first-minimum distance plus one step.
    """
    uv = pattern.uv
    u0, v0 = peak_uv
    step = 0.5 * min(uv.du, uv.dv)
    angles = np.linspace(0.0, 2.0 * np.pi, n_rays, endpoint=False)
    cs, sn = np.cos(angles), np.sin(angles)
    null_r = np.full(n_rays, np.inf)
    active = np.ones(n_rays, dtype=bool)
    prev = _bilinear(pattern.values, uv, np.full(n_rays, u0), np.full(n_rays, v0))
    k = 0
    max_k = int(2.5 / step) + 2
    while np.any(active) and k < max_k:
        k += 1
        r = k * step
        us = u0 + r * cs
        vs = v0 + r * sn
        out = (us * us + vs * vs > 1.0) | (np.abs(us) > uv.u[-1]) | (np.abs(vs) > uv.v[-1])
        hit = active & out
        null_r[hit] = (k - 1) * step  # lobe truncated at the disk rim
        active &= ~out
        if not np.any(active):
            break
        cur = prev.copy()
        cur[active] = _bilinear(pattern.values, uv, us[active], vs[active])
        rising = active & (cur > prev)
        null_r[rising] = (k - 1) * step
        active &= ~rising
        prev = cur
    null_r[np.isinf(null_r)] = max_k * step
    uu, vv = uv.meshes()
    dist = np.hypot(uu - u0, vv - v0)
    ang = np.mod(np.arctan2(vv - v0, uu - u0), 2.0 * np.pi)
    idx = np.rint(ang / (2.0 * np.pi / n_rays)).astype(int) % n_rays
    return dist <= null_r[idx] + step


def _cut_crossings(ts, cut, peak_t, half):
    """Half-power crossing positions on a 1-D cut, linear interpolation in power."""
    k0 = int(np.argmin(np.abs(ts - peak_t)))
    k0 = max(0, min(len(ts) - 1, k0))
    # re-center on the cut's local maximum around the peak
    while 0 < k0 < len(ts) - 1 and (cut[k0 + 1] > cut[k0] or cut[k0 - 1] > cut[k0]):
        k0 = k0 + 1 if cut[k0 + 1] > cut[k0 - 1] else k0 - 1
    lo = k0
    while lo > 0 and cut[lo] > half:
        lo -= 1
    if cut[lo] > half:
        raise ResolutionError("half-power crossing outside the sampled cut")
    t_lo = ts[lo] + (half - cut[lo]) * (ts[lo + 1] - ts[lo]) / (cut[lo + 1] - cut[lo])
    hi = k0
    while hi < len(ts) - 1 and cut[hi] > half:
        hi += 1
    if cut[hi] > half:
        raise ResolutionError("half-power crossing outside the sampled cut")
    t_hi = ts[hi - 1] + (half - cut[hi - 1]) * (ts[hi] - ts[hi - 1]) / (cut[hi] - cut[hi - 1])
    return t_lo, t_hi


def _angle_between(p, q) -> float:
    a = np.array([p[0], p[1], np.sqrt(max(0.0, 1.0 - p[0] ** 2 - p[1] ** 2))])
    b = np.array([q[0], q[1], np.sqrt(max(0.0, 1.0 - q[0] ** 2 - q[1] ** 2))])
    return float(np.degrees(np.arccos(np.clip(np.dot(a, b), -1.0, 1.0))))


def metrics(
    pattern: PowerPattern,
    u0: float,
    v0: float,
    input_power_w: float | None = None,
    phi: float | None = None,
    n_rays: int = 720,
) -> PatternMetrics:
    """Directivity, SLL, and half-power beamwidths of a sampled pattern.

    The peak is located by hill-climbing from the sample nearest (u0, v0).
    Directivity integrates P / sqrt(1 - u^2 - v^2) over the disk by the
    midpoint rule, skipping the rim ring where 1 - u^2 - v^2 < 1e-9.  SLL
    is the highest in-disk sample outside the first-null main-lobe region.
    Beamwidths are measured on the u- and v-axis cuts through the peak by
    linear interpolation of the half-power crossings, reported as the
    angle between the two crossing directions in degrees.
    """
    uv = pattern.uv
    P = pattern.values
    i0 = int(np.argmin(np.abs(uv.u - u0)))
    j0 = int(np.argmin(np.abs(uv.v - v0)))
    ip, jp = _hill_climb(P, i0, j0)
    peak = float(P[ip, jp])
    if peak <= 0:
        raise DomainError("pattern peak is not positive")
    peak_uv = (float(uv.u[ip]), float(uv.v[jp]))

    uu, vv = uv.meshes()
    one_minus_r2 = 1.0 - uu * uu - vv * vv
    integ_sel = one_minus_r2 >= RIM_EPS
    integral = float((P[integ_sel] / np.sqrt(one_minus_r2[integ_sel])).sum() * uv.du * uv.dv)
    d_lin = 4.0 * np.pi * peak / integral
    d_dbi = 10.0 * np.log10(d_lin)

    inside = one_minus_r2 >= 0.0
    excl = _mainlobe_exclusion(pattern, peak_uv, n_rays)
    side = inside & ~excl
    if not np.any(side):
        sll_db = float("-inf")
    else:
        sll_db = 10.0 * np.log10(float(P[side].max()) / peak)

    half = peak / 2.0
    cut_az = _bilinear(P, uv, uv.u, np.full_like(uv.u, peak_uv[1]))
    t_lo, t_hi = _cut_crossings(uv.u, cut_az, peak_uv[0], half)
    if (t_hi - t_lo) / uv.du < 8.0:
        raise ResolutionError("main lobe under-resolved on the azimuth cut (need >= 8 samples)")
    hpbw_az = _angle_between((t_lo, peak_uv[1]), (t_hi, peak_uv[1]))
    cut_el = _bilinear(P, uv, np.full_like(uv.v, peak_uv[0]), uv.v)
    s_lo, s_hi = _cut_crossings(uv.v, cut_el, peak_uv[1], half)
    if (s_hi - s_lo) / uv.dv < 8.0:
        raise ResolutionError("main lobe under-resolved on the elevation cut (need >= 8 samples)")
    hpbw_el = _angle_between((peak_uv[0], s_lo), (peak_uv[0], s_hi))

    eirp = None
    if input_power_w is not None:
        if input_power_w <= 0:
            raise ConfigurationError("input power must be positive")
        eirp = d_dbi + 10.0 * np.log10(input_power_w)
    return PatternMetrics(sll_db, d_dbi, hpbw_az, hpbw_el, eirp, phi)


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------


def write_pattern_csv(pattern: PowerPattern, path):
    """Full uv-grid dump, header u,v,power, row-major in u."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["u", "v", "power"])
        for i, u in enumerate(pattern.uv.u):
            for j, v in enumerate(pattern.uv.v):
                w.writerow([f"{u:.12g}", f"{v:.12g}", f"{pattern.values[i, j]:.12g}"])


def read_pattern_csv(path) -> PowerPattern:
    us, vs, ps = [], [], []
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        if r.fieldnames is None or [f.strip() for f in r.fieldnames] != ["u", "v", "power"]:
            raise FormatError(f"{path}: expected header u,v,power")
        for row in r:
            us.append(float(row["u"]))
            vs.append(float(row["v"]))
            ps.append(float(row["power"]))
    u = np.unique(np.array(us))
    v = np.unique(np.array(vs))
    if len(u) * len(v) != len(ps):
        raise FormatError(f"{path}: samples do not form a full lattice")
    for arr in (u, v):
        d = np.diff(arr)
        if len(d) and not np.allclose(d, d[0], rtol=1e-9, atol=1e-12):
            raise FormatError(f"{path}: lattice is not uniform")
    values = np.full((len(u), len(v)), np.nan)
    iu = np.searchsorted(u, np.array(us))
    iv = np.searchsorted(v, np.array(vs))
    values[iu, iv] = np.array(ps)
    if np.any(np.isnan(values)):
        raise FormatError(f"{path}: missing lattice samples")
    uv = UvGrid(u, v, fft_x=max(len(u), 1), fft_y=max(len(v), 1))
    return PowerPattern(uv, values)


def write_cut_csv(pattern: PowerPattern, path, plane: str, u0: float, v0: float):
    """Principal-plane cut angle_deg,power_db through (u0, v0), dB re pattern peak.

    plane 'az' is the phi = 0 cut (u varies, v = v0); 'el' is phi = 90.
    """
    uv = pattern.uv
    peak = float(pattern.values.max())
    if plane == "az":
        ts = uv.u
        cut = _bilinear(pattern.values, uv, uv.u, np.full_like(uv.u, v0))
    elif plane == "el":
        ts = uv.v
        cut = _bilinear(pattern.values, uv, np.full_like(uv.v, u0), uv.v)
    else:
        raise DomainError(f"plane must be 'az' or 'el', got {plane!r}")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["angle_deg", "power_db"])
        for t, p in zip(ts, cut):
            if abs(t) > 1.0:
                continue
            ang = np.degrees(np.arcsin(t))
            pdb = 10.0 * np.log10(p / peak) if p > 0 else -400.0
            w.writerow([f"{ang:.12g}", f"{pdb:.12g}"])
