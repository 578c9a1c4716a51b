"""Session-partitioned request streams drawn from a popularity catalog.

A workload is a fixed request sequence split into consecutive sessions,
plus per-object size and channel-time attributes used by the bandwidth
accounting. Traces round-trip through a one-rank-per-line text format.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .popularity import ZipfCatalog, sample_ranks

DEFAULT_SIZE_RANGE = (1.0, 15.0)   # kilobits
DEFAULT_TIME_RANGE = (1.0, 10.0)   # milliseconds
DEFAULT_SESSION_SIZE = 1000


class TraceParseError(ValueError):
    """Raised for malformed trace files; message names the bad line."""


@dataclass(frozen=True)
class ObjectAttributes:
    """Per-rank object sizes (kilobits) and channel times (milliseconds)."""

    sizes: np.ndarray
    channel_times: np.ndarray


@dataclass(frozen=True)
class Workload:
    """Request sequence with session boundaries.

    ``session_boundaries`` holds the exclusive end index of each session
    in ascending order; the last boundary equals the request count.
    ``seed`` records the generating seed, 0 for workloads loaded from a
    trace file.
    """

    requests: np.ndarray
    session_boundaries: np.ndarray
    seed: int
    n_objects: int

    @property
    def total_requests(self) -> int:
        return int(self.requests.size)

    @property
    def session_size(self) -> int:
        return int(self.session_boundaries[0])

    def sessions(self):
        """Yield each session's requests as a read-only slice."""
        start = 0
        for end in self.session_boundaries:
            yield self.requests[start:end]
            start = int(end)


def generate_workload(
    catalog: ZipfCatalog, total_requests: int, session_size: int, seed: int
) -> Workload:
    """Draw ``total_requests`` i.i.d. ranks and split them into sessions.

    Sessions are consecutive blocks of ``session_size`` requests; the
    final session may be shorter. Deterministic per seed.
    """
    if total_requests < 1:
        raise ValueError(f"total_requests must be >= 1, got {total_requests}")
    if session_size < 1:
        raise ValueError(f"session_size must be >= 1, got {session_size}")
    rng = np.random.default_rng(seed)
    requests = sample_ranks(catalog, total_requests, rng)
    boundaries = np.arange(session_size, total_requests, session_size,
                           dtype=np.int64)
    boundaries = np.append(boundaries, total_requests)
    return Workload(
        requests=requests,
        session_boundaries=boundaries,
        seed=int(seed),
        n_objects=catalog.n_objects,
    )


def assign_attributes(
    n_objects: int,
    size_range: tuple[float, float] = DEFAULT_SIZE_RANGE,
    time_range: tuple[float, float] = DEFAULT_TIME_RANGE,
    seed: int = 0,
) -> ObjectAttributes:
    """Draw per-object sizes and channel times uniformly over their ranges.

    Parameters
    ----------
    n_objects : int
        Number of ranks to cover.
    size_range, time_range : (float, float)
        Inclusive bounds; lower bound must be positive and not exceed
        the upper bound. Degenerate ranges like ``(5, 5)`` are allowed.
    seed : int
        Seed for the attribute stream; same seed, same table.
    """
    if n_objects < 1:
        raise ValueError(f"n_objects must be >= 1, got {n_objects}")
    for name, (lo, hi) in (("size_range", size_range),
                           ("time_range", time_range)):
        if lo <= 0:
            raise ValueError(f"{name} lower bound must be > 0, got {lo}")
        if lo > hi:
            raise ValueError(f"{name} is empty: [{lo}, {hi}]")
    rng = np.random.default_rng(seed)
    sizes = rng.uniform(size_range[0], size_range[1], n_objects)
    times = rng.uniform(time_range[0], time_range[1], n_objects)
    return ObjectAttributes(sizes=sizes, channel_times=times)


def rank_histogram(workload: Workload) -> np.ndarray:
    """Per-rank request counts, index 0 holding rank 1.

    Conserves the total: ``counts.sum() == workload.total_requests``.
    """
    return np.bincount(workload.requests,
                       minlength=workload.n_objects + 1)[1:]


def save_trace(workload: Workload, path: str) -> None:
    """Write a workload as a header line plus one rank per line."""
    with open(path, "w") as f:
        f.write(f"#n_objects={workload.n_objects} "
                f"session={workload.session_size}\n")
        f.write("\n".join(str(int(r)) for r in workload.requests))
        f.write("\n")


def load_trace(path: str) -> Workload:
    """Read a trace written by :func:`save_trace`.

    Raises
    ------
    TraceParseError
        On a missing or malformed header, a non-integer or non-positive
        rank, or a rank beyond the declared catalog size; the message
        names the offending line number. An empty file is an error.
    """
    with open(path) as f:
        lines = f.read().splitlines()
    if not lines:
        raise TraceParseError(f"{path}: empty trace file")
    header = lines[0]
    if not header.startswith("#"):
        raise TraceParseError(f"{path}: line 1: missing #n_objects header")
    try:
        fields = dict(part.split("=", 1)
                      for part in header.lstrip("#").split())
        n_objects = int(fields["n_objects"])
        session_size = int(fields["session"])
    except (ValueError, KeyError):
        raise TraceParseError(f"{path}: line 1: malformed header {header!r}")
    if n_objects < 1 or session_size < 1:
        raise TraceParseError(f"{path}: line 1: non-positive header fields")

    requests = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rank = int(line)
        except ValueError:
            raise TraceParseError(
                f"{path}: line {lineno}: not an integer rank: {line!r}")
        if rank < 1:
            raise TraceParseError(
                f"{path}: line {lineno}: rank must be >= 1, got {rank}")
        if rank > n_objects:
            raise TraceParseError(
                f"{path}: line {lineno}: rank {rank} exceeds "
                f"n_objects={n_objects}")
        requests.append(rank)
    if not requests:
        raise TraceParseError(f"{path}: no requests in trace")

    total = len(requests)
    boundaries = np.arange(session_size, total, session_size, dtype=np.int64)
    boundaries = np.append(boundaries, total)
    return Workload(
        requests=np.asarray(requests, dtype=np.int64),
        session_boundaries=boundaries,
        seed=0,
        n_objects=n_objects,
    )


def write_attributes_csv(attrs: ObjectAttributes, path: str) -> None:
    """Write the attribute table as ``rank,size_kb,channel_ms`` rows."""
    with open(path, "w") as f:
        f.write("rank,size_kb,channel_ms\n")
        for i in range(attrs.sizes.size):
            f.write(f"{i + 1},{attrs.sizes[i]:.12e},"
                    f"{attrs.channel_times[i]:.12e}\n")
