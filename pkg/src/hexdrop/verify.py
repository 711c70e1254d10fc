"""Monte Carlo verification: drops, goodness-of-fit tests, reports.

The pipeline drops n terminals in a cell, computes each row's separation
and losses, then checks the loss sample against the closed-form CDF with
a one-sample KS test and the spatial sample against uniformity with a
chi-square test over equal-area bins.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from .density import DensityModel, shadowed_cdf
from .geometry import CellGeometry, chord_y_bounds, point_in_shape
from .pathloss import PathLossParams, mean_pathloss
from .rng import GENERATOR_LABEL, VariateStream
from .sampler import marginal_x_cdf, sample_points

# Asymptotic one-sample KS critical coefficient at significance 0.01.
KS_COEFF_001_LEVEL = 1.628

SPATIAL_BINS_X = 12
SPATIAL_BINS_Y = 8
SPATIAL_SIGNIFICANCE = 1e-3


@dataclass
class DropTable:
    """Columns of one simulated drop, all length n."""

    x: np.ndarray
    y: np.ndarray
    r: np.ndarray
    w: np.ndarray
    psi: np.ndarray
    lp: np.ndarray

    def __len__(self) -> int:
        return len(self.x)

    def write_csv(self, path: str | Path) -> None:
        write_samples_csv(path, self)


def run_drop(geom: CellGeometry, pl: PathLossParams, n: int, seed: int) -> DropTable:
    """Drop n terminals and tabulate (x, y, r, mean loss, shadowing, loss).

    Deterministic for a fixed seed: the stream is consumed as n x-uniforms,
    n y-uniforms, n normals.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    stream = VariateStream(seed)
    xy = sample_points(geom, stream, n)
    r = np.hypot(xy[:, 0], xy[:, 1])
    w = mean_pathloss(pl, r)
    psi = pl.sigma_psi * stream.normals(n)
    return DropTable(x=xy[:, 0], y=xy[:, 1], r=r, w=w, psi=psi, lp=w + psi)


def _fmt(v: float) -> str:
    return repr(float(v))


def write_samples_csv(path: str | Path, table: DropTable) -> None:
    lines = ["x_m,y_m,r_m,w_db,psi_db,lp_db"]
    for i in range(len(table)):
        lines.append(
            ",".join(
                _fmt(c[i]) for c in (table.x, table.y, table.r, table.w, table.psi, table.lp)
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


@dataclass(frozen=True)
class KsResult:
    statistic: float
    critical: float
    passed: bool


def ks_test(samples: np.ndarray, cdf) -> KsResult:
    """One-sample KS test at significance 0.01.

    statistic = sup |empirical CDF - cdf|, critical = 1.628/sqrt(n)
    (asymptotic), passed = statistic < critical.
    """
    s = np.sort(np.asarray(samples, dtype=float))
    n = len(s)
    if n == 0:
        raise ValueError("samples must be nonempty")
    f = np.asarray(cdf(s), dtype=float)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    statistic = float(max(d_plus, d_minus))
    critical = KS_COEFF_001_LEVEL / math.sqrt(n)
    return KsResult(statistic=statistic, critical=critical, passed=statistic < critical)


def equal_area_bin_counts(
    geom: CellGeometry, xy: np.ndarray, nx: int = SPATIAL_BINS_X, ny: int = SPATIAL_BINS_Y
) -> np.ndarray:
    """Histogram points into nx*ny equal-probability spatial bins.

    The bins are preimages of a regular grid under (F_X(x), position of y
    inside its chord); under uniformity each bin carries exactly the same
    probability, 1/(nx*ny).
    """
    x, y = xy[:, 0], xy[:, 1]
    u = marginal_x_cdf(geom, x)
    lo, hi = chord_y_bounds(geom, x)
    width = hi - lo
    v = np.where(width > 0.0, (y - lo) / np.where(width > 0.0, width, 1.0), 0.5)
    iu = np.clip((u * nx).astype(int), 0, nx - 1)
    iv = np.clip((v * ny).astype(int), 0, ny - 1)
    return np.bincount(iu * ny + iv, minlength=nx * ny)


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    bins: int
    critical: float
    passed: bool


def spatial_chi_square(
    geom: CellGeometry,
    xy: np.ndarray,
    nx: int = SPATIAL_BINS_X,
    ny: int = SPATIAL_BINS_Y,
    significance: float = SPATIAL_SIGNIFICANCE,
) -> ChiSquareResult:
    """Chi-square uniformity test over equal-area bins."""
    counts = equal_area_bin_counts(geom, xy, nx, ny)
    n = counts.sum()
    expected = n / counts.size
    statistic = float(np.sum((counts - expected) ** 2) / expected)
    critical = float(stats.chi2.ppf(1.0 - significance, counts.size - 1))
    return ChiSquareResult(
        statistic=statistic, bins=counts.size, critical=critical, passed=statistic < critical
    )


@dataclass
class HistogramReport:
    edges: np.ndarray
    observed: np.ndarray
    expected: np.ndarray
    flagged: np.ndarray
    passed: bool


def histogram_compare(
    samples: np.ndarray, pdf, bins: int, lo: float | None = None, hi: float | None = None
) -> HistogramReport:
    """Compare a histogram of samples against a density.

    Expected counts come from the density integrated over each bin
    (Simpson on a fine sub-grid); a bin is flagged when its count misses
    the expectation by more than three Poisson standard deviations, and
    the report passes when at most 1% of bins are flagged.  The range
    defaults to the sample range.
    """
    if bins < 10:
        raise ValueError(f"need at least 10 bins, got {bins}")
    s = np.asarray(samples, dtype=float)
    if lo is None:
        lo = float(s.min())
    if hi is None:
        hi = float(s.max())
    edges = np.linspace(lo, hi, bins + 1)
    observed = np.histogram(s, bins=edges)[0].astype(float)

    sub = 8  # Simpson points per bin
    expected = np.empty(bins)
    for i in range(bins):
        grid = np.linspace(edges[i], edges[i + 1], 2 * sub + 1)
        vals = np.asarray(pdf(grid), dtype=float)
        h = grid[1] - grid[0]
        expected[i] = h / 3.0 * (
            vals[0] + vals[-1] + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-1:2].sum()
        )
    expected *= len(s)

    flagged = np.abs(observed - expected) > 3.0 * np.sqrt(expected)
    return HistogramReport(
        edges=edges,
        observed=observed,
        expected=expected,
        flagged=flagged,
        passed=bool(flagged.sum() <= 0.01 * bins),
    )


@dataclass(frozen=True)
class DensityCurve:
    """A tabulated density with provenance metadata."""

    abscissa: np.ndarray
    density: np.ndarray
    label: str
    fingerprint: str

    def __post_init__(self):
        a = np.asarray(self.abscissa, dtype=float)
        d = np.asarray(self.density, dtype=float)
        if len(a) != len(d):
            raise ValueError("abscissa and density must have equal length")
        if not (np.diff(a) > 0.0).all():
            raise ValueError("abscissa must be strictly increasing")
        if (d < 0.0).any():
            raise ValueError("densities must be nonnegative")

    def trapezoid_mass(self) -> float:
        return float(np.trapezoid(self.density, self.abscissa))


def write_density_csv(path: str | Path, l: np.ndarray, f_closed: np.ndarray, f_oracle=None) -> None:
    header = "l_db,f_closed" + (",f_oracle" if f_oracle is not None else "")
    lines = [header]
    for i in range(len(l)):
        row = [_fmt(l[i]), _fmt(f_closed[i])]
        if f_oracle is not None:
            row.append(_fmt(f_oracle[i]))
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


@dataclass
class VerifyReport:
    preset: str
    shape: str
    side_m: float
    count: int
    seed: int
    ks_statistic: float
    ks_critical: float
    chi2_statistic: float
    chi2_bins: int
    chi2_critical: float
    passed: bool
    generator: str = GENERATOR_LABEL

    def to_json(self) -> str:
        payload = asdict(self)
        payload["pass"] = payload.pop("passed")
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8", newline="\n")


def run_verification(
    geom: CellGeometry,
    model: DensityModel,
    preset_name: str,
    count: int,
    seed: int,
) -> tuple[VerifyReport, DropTable]:
    """Drop terminals, KS-test the losses, chi-square-test the positions."""
    table = run_drop(geom, model.pathloss, count, seed)
    ks = ks_test(table.lp, lambda v: shadowed_cdf(model, v))
    chi2 = spatial_chi_square(geom, np.column_stack([table.x, table.y]))
    report = VerifyReport(
        preset=preset_name,
        shape=geom.shape.value,
        side_m=geom.side,
        count=count,
        seed=seed,
        ks_statistic=ks.statistic,
        ks_critical=ks.critical,
        chi2_statistic=chi2.statistic,
        chi2_bins=chi2.bins,
        chi2_critical=chi2.critical,
        passed=ks.passed and chi2.passed,
    )
    return report, table


def containment_fraction(geom: CellGeometry, xy: np.ndarray) -> float:
    """Fraction of points inside the contour (boundary included)."""
    return float(np.mean(point_in_shape(geom, xy)))
