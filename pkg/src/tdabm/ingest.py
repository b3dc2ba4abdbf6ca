"""Point-cloud loading, standardization, synthesis, and row permutation.

Row identity contract: rows get 0-based ids in file/storage order at load
time, and every downstream membership table refers to those ids. Nothing
here reorders rows silently; ``permute`` returns a new cloud together with
the permutation that produced it.

Standardization uses population moments (divide variance by N, not N-1)
throughout, so a standardized column has population sd exactly 1.

Randomness (``synthesize``, ``permute``) comes from numpy's PCG64 generator
seeded per call, which is deterministic across platforms.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .tables import Table

STAT_ROWS = ("mean", "sd", "min", "25%", "50%", "75%", "max")


def _frozen_array(values, dtype=np.float64, ndim=None) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if ndim is not None and arr.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-D array, got {arr.ndim}-D")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PointCloud:
    """N x K matrix of finite reals with named columns.

    Row ids are the storage positions 0..N-1. Instances are immutable; the
    values array is marked read-only.
    """

    values: np.ndarray
    columns: tuple[str, ...]

    def __post_init__(self):
        vals = _frozen_array(self.values, ndim=2)
        n, k = vals.shape
        if n < 1 or k < 1:
            raise ValidationError("point cloud needs at least 1 row and 1 column")
        if not np.isfinite(vals).all():
            raise ValidationError("point cloud contains NaN or infinite values")
        cols = tuple(str(c) for c in self.columns)
        if len(cols) != k:
            raise ValidationError(f"{len(cols)} column names for {k} columns")
        if any(not c for c in cols):
            raise ValidationError("column names must be non-empty")
        if len(set(cols)) != len(cols):
            raise ValidationError("column names must be unique")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "columns", cols)

    @property
    def n_points(self) -> int:
        return self.values.shape[0]

    @property
    def n_axes(self) -> int:
        return self.values.shape[1]

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise ValidationError(f"unknown column {name!r}")
        return self.values[:, self.columns.index(name)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.columns == other.columns and np.array_equal(
            self.values, other.values
        )


@dataclass(frozen=True, eq=False)
class ColoringVariable:
    """Length-N vector of finite reals aligned to a PointCloud's row ids."""

    name: str
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen_array(self.values, ndim=1)
        if not self.name:
            raise ValidationError("coloring variable needs a non-empty name")
        if vals.shape[0] < 1:
            raise ValidationError("coloring variable is empty")
        if not np.isfinite(vals).all():
            raise ValidationError(
                f"coloring {self.name!r} contains NaN or infinite values"
            )
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoringVariable):
            return NotImplemented
        return self.name == other.name and np.array_equal(self.values, other.values)


@dataclass(frozen=True)
class DatasetSpec:
    """Recipe for a synthetic bivariate dataset with a targeted correlation."""

    n: int
    seed: int = 0
    target_correlation: float = 0.0
    standardize: bool = True

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError("dataset needs n >= 2")
        if not abs(self.target_correlation) < 1:
            raise ValidationError("target correlation must lie in (-1, 1)")


def read_numeric_columns(
    text: str, names: Sequence[str], source: str = "<memory>"
) -> dict[str, np.ndarray]:
    """Parse the named columns of CSV text into float arrays.

    The header row is mandatory; every selected cell must parse as a real
    number (missing values are rejected). Errors name the 0-based data row
    and the column.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError(f"{source}: file is empty, header row required") from None
    header = [h.strip() for h in header]
    positions = {}
    for name in names:
        if name in positions:
            raise ValidationError(f"{source}: column {name!r} selected twice")
        if name not in header:
            raise ValidationError(f"{source}: column {name!r} not found in header")
        positions[name] = header.index(name)

    data: dict[str, list[float]] = {name: [] for name in names}
    for row_idx, row in enumerate(reader):
        if not row:
            continue
        for name, pos in positions.items():
            if pos >= len(row):
                raise ValidationError(
                    f"{source}: row {row_idx} has {len(row)} fields, "
                    f"column {name!r} missing"
                )
            cell = row[pos].strip()
            try:
                data[name].append(float(cell))
            except ValueError:
                raise ValidationError(
                    f"{source}: cannot parse {cell!r} at row {row_idx}, "
                    f"column {name!r}"
                ) from None
    n_rows = {len(v) for v in data.values()}
    if n_rows == {0}:
        raise ValidationError(f"{source}: no data rows")
    return {name: np.array(vals, dtype=np.float64) for name, vals in data.items()}


def load_csv_text(
    text: str,
    axes: Sequence[str],
    coloring: str | None = None,
    source: str = "<memory>",
) -> tuple[PointCloud, ColoringVariable | None]:
    """Build a cloud (and optional coloring) from in-memory CSV text."""
    if not axes:
        raise ValidationError(f"{source}: need at least one axis column")
    wanted = list(dict.fromkeys(axes))
    if len(wanted) != len(axes):
        dup = next(a for a in axes if axes.count(a) > 1)
        raise ValidationError(f"{source}: column {dup!r} selected twice")
    if coloring is not None and coloring not in wanted:
        wanted.append(coloring)
    columns = read_numeric_columns(text, wanted, source=source)
    cloud = PointCloud(
        np.column_stack([columns[a] for a in axes]), tuple(axes)
    )
    color = None
    if coloring is not None:
        color = ColoringVariable(coloring, columns[coloring])
    return cloud, color


def load_csv(
    path: str | Path, axes: Sequence[str], coloring: str | None = None
) -> tuple[PointCloud, ColoringVariable | None]:
    """Load selected columns of a CSV file (header row mandatory).

    Row ids follow file order, 0-based, excluding the header.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return load_csv_text(text, axes, coloring, source=str(path))


def standardize(cloud: PointCloud) -> PointCloud:
    """Center each column at 0 and scale to population sd 1.

    Raises on constant columns; idempotent within 1e-12 per entry.
    """
    means = cloud.values.mean(axis=0)
    sds = cloud.values.std(axis=0)
    for name, sd in zip(cloud.columns, sds):
        if sd == 0.0:
            raise ValidationError(f"column {name!r} is constant, cannot standardize")
    return PointCloud((cloud.values - means) / sds, cloud.columns)


def synthesize(spec: DatasetSpec) -> tuple[PointCloud, ColoringVariable]:
    """Draw a bivariate uniform cloud and the outcome Y = X1 - X2.

    X1, X2 are i.i.d. uniform on [0,1); both are standardized (population
    moments) when the spec asks for it; a nonzero target correlation rho
    replaces X2 with rho*X1 + sqrt(1-rho^2)*X2. Because standardized X1 and
    X2 have exact unit variance, the mixed column hits the target exactly
    when the inputs are exactly uncorrelated. The mixed column is not
    re-standardized, and Y is computed on the final columns and left raw.
    Deterministic given the seed.
    """
    rng = np.random.default_rng(spec.seed)
    x1 = rng.random(spec.n)
    x2 = rng.random(spec.n)
    if spec.standardize:
        x1 = (x1 - x1.mean()) / x1.std()
        x2 = (x2 - x2.mean()) / x2.std()
    rho = spec.target_correlation
    if rho != 0.0:
        x2 = rho * x1 + np.sqrt(1.0 - rho * rho) * x2
    y = x1 - x2
    cloud = PointCloud(np.column_stack([x1, x2]), ("X1", "X2"))
    return cloud, ColoringVariable("Y", y)


def summary_stats(
    cloud: PointCloud, extra: Sequence[ColoringVariable] = ()
) -> Table:
    """Per-variable mean, sd, min, quartiles, max.

    sd is the population value; quartiles use linear interpolation between
    order statistics.
    """
    names = list(cloud.columns) + [c.name for c in extra]
    vectors = [cloud.column(c) for c in cloud.columns] + [c.values for c in extra]
    for c in extra:
        if len(c) != cloud.n_points:
            raise ValidationError(
                f"coloring {c.name!r} has {len(c)} values for "
                f"{cloud.n_points} rows"
            )
    stats = {
        "mean": [float(v.mean()) for v in vectors],
        "sd": [float(v.std()) for v in vectors],
        "min": [float(v.min()) for v in vectors],
        "25%": [float(np.percentile(v, 25)) for v in vectors],
        "50%": [float(np.percentile(v, 50)) for v in vectors],
        "75%": [float(np.percentile(v, 75)) for v in vectors],
        "max": [float(v.max()) for v in vectors],
    }
    rows = tuple((stat, *stats[stat]) for stat in STAT_ROWS)
    return Table(("statistic", *names), rows)


def permute(
    cloud: PointCloud, coloring: ColoringVariable, seed: int
) -> tuple[PointCloud, ColoringVariable, np.ndarray]:
    """Uniformly shuffle rows; returns (cloud, coloring, permutation).

    The permutation maps new row position to original row id, so
    ``new.values[i] == old.values[perm[i]]``. Deterministic given the seed.
    """
    if len(coloring) != cloud.n_points:
        raise ValidationError(
            f"coloring {coloring.name!r} has {len(coloring)} values for "
            f"{cloud.n_points} rows"
        )
    perm = np.random.default_rng(seed).permutation(cloud.n_points)
    shuffled = PointCloud(cloud.values[perm], cloud.columns)
    recolored = ColoringVariable(coloring.name, coloring.values[perm])
    perm.setflags(write=False)
    return shuffled, recolored, perm
