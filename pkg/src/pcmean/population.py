"""Finite-population data model, moments, and SRSWOR sampling.

A population holds parallel vectors for the study variable y and two
auxiliary variables x, z (plus optionally the first principal-component
scores w).  All downstream theory is expressed through a
:class:`PopulationSummary`: means, standard deviations (divisor N-1),
coefficients of variation, pairwise correlations, and the
finite-population factor theta = 1/n - 1/N.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, fields
from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateDataError,
    DomainError,
    IncompleteSummaryError,
    ZeroMeanError,
)

__all__ = [
    "FinitePopulation",
    "PopulationSummary",
    "Sample",
    "SampleMeans",
    "theta",
    "summarize",
    "draw_srswor",
    "sample_means",
    "load_columns",
    "load_population",
]

# Below this mean-to-sd ratio a CV is still computed but flagged: the
# minimum-MSE formulas cancel the offending factor, so rejecting would be
# too strict (component scores are centered and have near-zero mean).
CV_ILL_CONDITIONED_RATIO = 1e-8


def _as_vector(name: str, values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FinitePopulation:
    """Immutable container for the N population units.

    Parameters
    ----------
    y, x, z : array_like, shape (N,)
        Study variable and the two auxiliaries.  N >= 2, finite values only.
    w : array_like, shape (N,), optional
        First principal-component scores of (x, z), when available.
    """

    y: np.ndarray
    x: np.ndarray
    z: np.ndarray
    w: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "y", _as_vector("y", self.y))
        object.__setattr__(self, "x", _as_vector("x", self.x))
        object.__setattr__(self, "z", _as_vector("z", self.z))
        n = len(self.y)
        if n < 2:
            raise DomainError(f"population needs at least 2 units, got {n}")
        if len(self.x) != n or len(self.z) != n:
            raise DomainError(
                f"length mismatch: y={n}, x={len(self.x)}, z={len(self.z)}"
            )
        if self.w is not None:
            object.__setattr__(self, "w", _as_vector("w", self.w))
            if len(self.w) != n:
                raise DomainError(f"length mismatch: y={n}, w={len(self.w)}")

    @property
    def size(self) -> int:
        return len(self.y)


@dataclass(frozen=True)
class Sample:
    """An SRSWOR sample: distinct unit indices and the selected values."""

    indices: np.ndarray
    y: np.ndarray
    x: np.ndarray
    z: np.ndarray
    w: np.ndarray | None = None

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.intp)
        if idx.ndim != 1 or len(idx) == 0:
            raise DomainError("sample indices must be a nonempty 1-d array")
        if len(np.unique(idx)) != len(idx):
            raise DomainError("sample indices must be distinct (without replacement)")
        object.__setattr__(self, "indices", idx)

    @property
    def n(self) -> int:
        return len(self.indices)


class SampleMeans(NamedTuple):
    y_bar: float
    x_bar: float
    z_bar: float
    w_bar: float | None


def theta(n: int, N: int) -> float:
    """Finite-population factor 1/n - 1/N.

    Zero exactly in the census case n = N; strictly decreasing in n.
    """
    if n <= 0:
        raise DomainError(f"sample size must be positive, got {n}")
    if n > N:
        raise DomainError(f"sample size {n} exceeds population size {N}")
    return 1.0 / n - 1.0 / N


@dataclass(frozen=True)
class PopulationSummary:
    """Closed-form inputs to every bias/MSE formula in the package.

    Standard deviations use divisor N-1 (required for the exact
    Var(y_bar) = theta * S_y^2 identity under SRSWOR).  Coefficients of
    variation are sd/|mean|; variables whose |mean| is tiny relative to
    the sd are listed in ``cv_warnings`` rather than rejected.
    """

    N: int
    n: int
    y_bar: float
    x_bar: float
    z_bar: float
    s_y: float
    s_x: float
    s_z: float
    c_y: float
    c_x: float
    c_z: float
    rho_yx: float
    rho_yz: float
    rho_xz: float
    w_bar: float | None = None
    s_w: float | None = None
    c_w: float | None = None
    rho_yw: float | None = None
    cv_warnings: tuple[str, ...] = ()
    theta: float = field(init=False)

    def __post_init__(self):
        if not (0 < self.n <= self.N):
            raise DomainError(f"need 0 < n <= N, got n={self.n}, N={self.N}")
        object.__setattr__(self, "theta", theta(self.n, self.N))
        for name in ("s_y", "s_x", "s_z"):
            if getattr(self, name) <= 0:
                raise DegenerateDataError(f"{name} must be positive")
        for name in ("rho_yx", "rho_yz", "rho_xz"):
            r = getattr(self, name)
            if not -1.0 <= r <= 1.0:
                raise DomainError(f"{name}={r} outside [-1, 1]")
        w_fields = (self.w_bar, self.s_w, self.c_w, self.rho_yw)
        present = [v is not None for v in w_fields]
        if any(present) and not all(present):
            missing = [
                name
                for name, v in zip(("w_bar", "s_w", "c_w", "rho_yw"), w_fields)
                if v is None
            ]
            raise IncompleteSummaryError(missing)
        if self.rho_yw is not None and not -1.0 <= self.rho_yw <= 1.0:
            raise DomainError(f"rho_yw={self.rho_yw} outside [-1, 1]")

    @property
    def has_component(self) -> bool:
        """True when the principal-component (w) block is populated."""
        return self.w_bar is not None

    def require_component(self) -> None:
        if not self.has_component:
            raise IncompleteSummaryError(["w_bar", "s_w", "c_w", "rho_yw"])

    @classmethod
    def from_fields(cls, values: dict) -> "PopulationSummary":
        """Build a summary from a loosely specified field mapping.

        Accepts either sd or CV per variable and derives the other from
        the mean.  Raises :class:`IncompleteSummaryError` listing every
        missing field, so callers can report them all at once.
        """
        vals = dict(values)
        missing = [k for k in ("N", "n", "y_bar", "x_bar", "z_bar") if k not in vals]
        for k in ("rho_yx", "rho_yz", "rho_xz"):
            if k not in vals:
                missing.append(k)
        for var, mean_key in (("y", "y_bar"), ("x", "x_bar"), ("z", "z_bar")):
            if f"s_{var}" not in vals and f"c_{var}" not in vals:
                missing.append(f"c_{var}")
        if missing:
            raise IncompleteSummaryError(missing)

        warnings = []
        for var, mean_key in (
            ("y", "y_bar"),
            ("x", "x_bar"),
            ("z", "z_bar"),
            ("w", "w_bar"),
        ):
            if mean_key not in vals or vals.get(mean_key) is None:
                continue
            mean = float(vals[mean_key])
            s_key, c_key = f"s_{var}", f"c_{var}"
            if vals.get(s_key) is None and vals.get(c_key) is not None:
                vals[s_key] = float(vals[c_key]) * abs(mean)
            elif vals.get(c_key) is None and vals.get(s_key) is not None:
                sd = float(vals[s_key])
                if mean == 0.0:
                    raise ZeroMeanError(var)
                vals[c_key] = sd / abs(mean)
                if abs(mean) < CV_ILL_CONDITIONED_RATIO * sd:
                    warnings.append(var)
            elif var == "w" and vals.get(s_key) is None and vals.get(c_key) is None:
                raise IncompleteSummaryError([c_key])

        known = {f.name for f in fields(cls) if f.init}
        unknown = set(vals) - known
        if unknown:
            raise DomainError(f"unknown summary fields: {sorted(unknown)}")
        vals.setdefault("cv_warnings", tuple(warnings))
        vals["N"] = int(vals["N"])
        vals["n"] = int(vals["n"])
        return cls(**vals)


def _moments(name: str, values: np.ndarray) -> tuple[float, float, float, bool]:
    """mean, sd (ddof=1), cv, ill-conditioned flag."""
    mean = float(np.mean(values))
    sd = float(np.std(values, ddof=1))
    if sd == 0.0:
        raise DegenerateDataError(f"variable {name!r} is constant (zero variance)")
    if mean == 0.0:
        raise ZeroMeanError(name)
    return mean, sd, sd / abs(mean), abs(mean) < CV_ILL_CONDITIONED_RATIO * sd


def _corr(a: np.ndarray, b: np.ndarray) -> float:
    r = float(np.corrcoef(a, b)[0, 1])
    return min(1.0, max(-1.0, r))


def summarize(pop: FinitePopulation, n: int) -> PopulationSummary:
    """Compute the full parameter summary of a population for sample size n.

    Includes the component (w) block when the population carries scores.
    Permutation-invariant in unit order.
    """
    theta(n, pop.size)  # validate the pair early
    y_bar, s_y, c_y, warn_y = _moments("y", pop.y)
    x_bar, s_x, c_x, warn_x = _moments("x", pop.x)
    z_bar, s_z, c_z, warn_z = _moments("z", pop.z)
    warnings = [name for name, w in (("y", warn_y), ("x", warn_x), ("z", warn_z)) if w]
    extra = {}
    if pop.w is not None:
        w_bar, s_w, c_w, warn_w = _moments("w", pop.w)
        if warn_w:
            warnings.append("w")
        extra = {
            "w_bar": w_bar,
            "s_w": s_w,
            "c_w": c_w,
            "rho_yw": _corr(pop.y, pop.w),
        }
    return PopulationSummary(
        N=pop.size,
        n=n,
        y_bar=y_bar,
        x_bar=x_bar,
        z_bar=z_bar,
        s_y=s_y,
        s_x=s_x,
        s_z=s_z,
        c_y=c_y,
        c_x=c_x,
        c_z=c_z,
        rho_yx=_corr(pop.y, pop.x),
        rho_yz=_corr(pop.y, pop.z),
        rho_xz=_corr(pop.x, pop.z),
        cv_warnings=tuple(warnings),
        **extra,
    )


def draw_srswor(pop: FinitePopulation, n: int, rng: np.random.Generator) -> Sample:
    """Draw a simple random sample without replacement.

    Every size-n subset has selection probability 1/C(N, n); the draw is
    deterministic given the generator state.
    """
    N = pop.size
    theta(n, N)  # validates 0 < n <= N
    idx = rng.choice(N, size=n, replace=False)
    return Sample(
        indices=idx,
        y=pop.y[idx],
        x=pop.x[idx],
        z=pop.z[idx],
        w=None if pop.w is None else pop.w[idx],
    )


def sample_means(s: Sample) -> SampleMeans:
    """Arithmetic means of the sampled values (w mean only when present)."""
    return SampleMeans(
        y_bar=float(np.mean(s.y)),
        x_bar=float(np.mean(s.x)),
        z_bar=float(np.mean(s.z)),
        w_bar=None if s.w is None else float(np.mean(s.w)),
    )


def load_columns(path, required: tuple[str, ...] = ("x", "z")) -> dict[str, np.ndarray]:
    """Read named numeric columns from a headered CSV file.

    Column names are matched case-insensitively after stripping
    whitespace; extra columns are ignored.  Raises
    :class:`IncompleteSummaryError` listing absent required columns.
    """
    wanted = {"y", "x", "z"}
    columns: dict[str, list[float]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IncompleteSummaryError(required) from None
        names = [h.strip().lower() for h in header]
        keep = {i: name for i, name in enumerate(names) if name in wanted}
        missing = [c for c in required if c not in keep.values()]
        if missing:
            raise IncompleteSummaryError(missing)
        for name in keep.values():
            columns[name] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            for i, name in keep.items():
                try:
                    columns[name].append(float(row[i]))
                except (IndexError, ValueError):
                    raise DomainError(
                        f"{path}: line {lineno}: bad value for column {name!r}"
                    ) from None
    return {name: np.asarray(vals, dtype=float) for name, vals in columns.items()}


def load_population(path) -> FinitePopulation:
    """Load a population from a CSV with y, x, z columns."""
    cols = load_columns(path, required=("y", "x", "z"))
    return FinitePopulation(y=cols["y"], x=cols["x"], z=cols["z"])
