"""Dataset container, file formats and seeded synthetic generators.

Generators draw from an explicit splitmix64 stream (constants below) so
identical seeds reproduce identical datasets on any platform.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, ParseError

_MASK64 = (1 << 64) - 1
_SM64_GAMMA = 0x9E3779B97F4A7C15
_SM64_MIX1 = 0xBF58476D1CE4E5B9
_SM64_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 PRNG; uniform doubles use the top 53 bits."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _SM64_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _SM64_MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _SM64_MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def randint(self, n: int) -> int:
        return self.next_u64() % n


@dataclass(frozen=True)
class Dataset:
    """Immutable labeled samples: features (n, d), labels in {-1, +1}.

    ``subset_flags`` marks the secondary subset (True = B) for the
    combined-sets booster; None when the split is unused.
    """

    features: np.ndarray
    labels: np.ndarray
    subset_flags: np.ndarray | None = field(default=None)

    def __post_init__(self):
        f = np.asarray(self.features, dtype=float)
        a = np.asarray(self.labels, dtype=float)
        if f.ndim != 2 or f.shape[0] < 1 or f.shape[1] < 1:
            raise ConfigurationError("features must be a nonempty (n, d) matrix")
        if a.shape != (f.shape[0],):
            raise ConfigurationError("labels must match the number of rows")
        if not np.all(np.isfinite(f)):
            raise ConfigurationError("features contain NaN or Inf")
        if not np.all(np.isin(a, (-1.0, 1.0))):
            raise ConfigurationError("labels must be -1 or +1")
        object.__setattr__(self, "features", f)
        object.__setattr__(self, "labels", a)
        if self.subset_flags is not None:
            s = np.asarray(self.subset_flags, dtype=bool)
            if s.shape != (f.shape[0],):
                raise ConfigurationError("subset flags must match the number of rows")
            object.__setattr__(self, "subset_flags", s)
        f.setflags(write=False)
        a.setflags(write=False)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]


def _map_label(raw: str, line: int) -> float:
    try:
        v = float(raw)
    except ValueError:
        raise ParseError(f"non-numeric label {raw!r}", line) from None
    if v in (-1.0, 1.0):
        return v
    if v == 0.0:
        return -1.0
    raise ParseError(f"label must be -1, 0 or +1, got {raw!r}", line)


def load_csv(path: str, label_column: str = "label", subset_column: str | None = None) -> Dataset:
    """Load a numeric CSV with a header row.

    Label values may be {-1, +1} or {0, 1} (0 maps to -1). The optional
    subset column holds 'A' / 'B' markers.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", 1) from None
        header = [c.strip() for c in header]
        if label_column not in header:
            raise ParseError(f"missing label column {label_column!r}", 1)
        label_idx = header.index(label_column)
        subset_idx = None
        if subset_column is not None:
            if subset_column not in header:
                raise ParseError(f"missing subset column {subset_column!r}", 1)
            subset_idx = header.index(subset_column)
        feature_idx = [
            i for i in range(len(header)) if i not in (label_idx, subset_idx)
        ]

        rows, labels, flags = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} cells, got {len(row)}", lineno
                )
            labels.append(_map_label(row[label_idx].strip(), lineno))
            if subset_idx is not None:
                marker = row[subset_idx].strip()
                if marker not in ("A", "B"):
                    raise ParseError(f"subset marker must be A or B, got {marker!r}", lineno)
                flags.append(marker == "B")
            vals = []
            for i in feature_idx:
                try:
                    vals.append(float(row[i]))
                except ValueError:
                    raise ParseError(f"non-numeric cell {row[i]!r}", lineno) from None
            rows.append(vals)
    if not rows:
        raise ParseError("no data rows", 2)
    return Dataset(
        np.array(rows), np.array(labels),
        np.array(flags) if flags else None,
    )


def save_csv(dataset: Dataset, path: str) -> None:
    """Write a dataset in the load_csv format (repr floats, lossless round-trip)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        cols = ["label"] + [f"f{i}" for i in range(dataset.d)]
        if dataset.subset_flags is not None:
            cols.append("subset")
        writer.writerow(cols)
        for i in range(dataset.n):
            row = [repr(int(dataset.labels[i]))] + [repr(float(v)) for v in dataset.features[i]]
            if dataset.subset_flags is not None:
                row.append("B" if dataset.subset_flags[i] else "A")
            writer.writerow(row)


def load_libsvm(path: str) -> Dataset:
    """Load the sparse LIBSVM text format: ``<label> idx:value ...`` (1-based)."""
    labels, entries = [], []
    max_idx = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            labels.append(_map_label(tokens[0], lineno))
            row = {}
            for tok in tokens[1:]:
                try:
                    idx_s, val_s = tok.split(":", 1)
                    idx = int(idx_s)
                    val = float(val_s)
                except ValueError:
                    raise ParseError(f"malformed token {tok!r}", lineno) from None
                if idx < 1:
                    raise ParseError(f"feature index must be >= 1, got {idx}", lineno)
                row[idx - 1] = val
                max_idx = max(max_idx, idx)
            entries.append(row)
    if not labels:
        raise ParseError("no data lines", 1)
    features = np.zeros((len(labels), max(max_idx, 1)))
    for i, row in enumerate(entries):
        for j, v in row.items():
            features[i, j] = v
    return Dataset(features, np.array(labels))


DEFAULT_MARGIN = 0.5


def gen_blobs(seed: int, n: int, margin: float) -> Dataset:
    """Two axis-aligned 2-D box clusters separated by 2*margin along axis 0.

    The first n/2 samples are positive with x0 in [margin, margin + 1]; the
    second half are negative with x0 in [-margin - 1, -margin]. A stump at
    threshold 0 on feature 0 separates the classes perfectly.
    """
    if n < 2 or n % 2:
        raise ConfigurationError("n must be even and >= 2")
    if margin <= 0:
        raise ConfigurationError("margin must be positive")
    rng = SplitMix64(seed)
    features = np.empty((n, 2))
    labels = np.empty(n)
    half = n // 2
    for i in range(n):
        u0 = rng.uniform()
        u1 = rng.uniform()
        if i < half:
            features[i] = (margin + u0, 2.0 * u1 - 1.0)
            labels[i] = 1.0
        else:
            features[i] = (-margin - u0, 2.0 * u1 - 1.0)
            labels[i] = -1.0
    return Dataset(features, labels)


def gen_noisy(seed: int, n: int, flip_rate: float) -> Dataset:
    """gen_blobs with the default margin and a seeded fraction of flipped labels."""
    if not 0.0 <= flip_rate < 0.5:
        raise ConfigurationError("flip_rate must be in [0, 0.5)")
    base = gen_blobs(seed, n, DEFAULT_MARGIN)
    n_flip = int(round(flip_rate * n))
    if n_flip == 0:
        return base
    labels = base.labels.copy()
    rng = SplitMix64(seed ^ 0xA5A5A5A5A5A5A5A5)
    idx = list(range(n))
    for i in range(n_flip):  # partial Fisher-Yates picks distinct flip targets
        j = i + rng.randint(n - i)
        idx[i], idx[j] = idx[j], idx[i]
        labels[idx[i]] = -labels[idx[i]]
    return Dataset(base.features, labels)


def gen_combined(seed: int, n_clean: int, n_noisy: int, flip_rate: float) -> Dataset:
    """A clean subset A stacked with a label-noised subset B, flags set."""
    clean = gen_blobs(seed, n_clean, DEFAULT_MARGIN)
    noisy = gen_noisy(seed + 1, n_noisy, flip_rate)
    features = np.vstack([clean.features, noisy.features])
    labels = np.concatenate([clean.labels, noisy.labels])
    flags = np.concatenate([np.zeros(n_clean, bool), np.ones(n_noisy, bool)])
    return Dataset(features, labels, flags)
