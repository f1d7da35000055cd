"""Stage plans that move rows between processing units (PUs).

Each PU holds ``rows_per_pu`` rows and orthogonalizes every pair among them
during a stage.  Rows are grouped into half-blocks of ``rows_per_pu // 2``
consecutive indices; PU ``p`` starts with half-blocks ``2p`` and ``2p + 1``.
Between stages the half-blocks move by a round-robin (circle method)
tournament with half-block 0 pinned, so after ``2 * num_pus - 1`` stages every
pair of half-blocks has shared a PU exactly once and therefore every pair of
rows has been orthogonalized at least once.  With two rows per PU this is the
classic row-exchange ordering and every pair is visited exactly once.
"""

import io
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class PuConfig:
    n_rows: int
    rows_per_pu: int

    def __post_init__(self):
        problems = []
        if self.rows_per_pu < 2:
            problems.append("rows_per_pu must be >= 2")
        if self.rows_per_pu % 2:
            problems.append("rows_per_pu must be even")
        if self.n_rows < 1:
            problems.append("n_rows must be >= 1")
        elif self.rows_per_pu > 0 and self.n_rows % self.rows_per_pu:
            problems.append(
                f"n_rows ({self.n_rows}) must be divisible by rows_per_pu ({self.rows_per_pu})"
            )
        if problems:
            raise ConfigError("; ".join(problems))

    @property
    def num_pus(self):
        return self.n_rows // self.rows_per_pu

    @property
    def stages_per_sweep(self):
        return 2 * self.num_pus - 1


def padded_size(n, rows_per_pu):
    """Smallest multiple of ``rows_per_pu`` that is >= n."""
    return -(-n // rows_per_pu) * rows_per_pu


@dataclass(frozen=True)
class Stage:
    groups: tuple  # per PU: global row indices in local order
    pairs: tuple  # per PU: (i, j) global index pairs, local lexicographic order


@dataclass(frozen=True)
class SweepSchedule:
    config: PuConfig
    stages: tuple

    @cached_property
    def row_table(self):
        """Array of shape (stages, num_pus, rows_per_pu) with the rows each PU holds."""
        return np.array([s.groups for s in self.stages], dtype=np.intp)

    @cached_property
    def local_pairs(self):
        """Local (li, lj) index pairs shared by every PU, in processing order."""
        return tuple(combinations(range(self.config.rows_per_pu), 2))

    def all_pairs(self):
        for stage in self.stages:
            for pu_pairs in stage.pairs:
                yield from pu_pairs

    def dump(self):
        """CSV text: one line per (stage, PU) with its rows and pairs."""
        out = io.StringIO()
        out.write("stage,pu,rows,pairs\n")
        for k, stage in enumerate(self.stages):
            for p, (rows, pairs) in enumerate(zip(stage.groups, stage.pairs)):
                row_txt = " ".join(map(str, rows))
                pair_txt = " ".join(f"{i}-{j}" for i, j in pairs)
                out.write(f"{k},{p},{row_txt},{pair_txt}\n")
        return out.getvalue()


def _circle_order(num_halves):
    # seat k faces seat num_halves-1-k; seed so PU p starts with (2p, 2p+1)
    seats = [0] * num_halves
    for p in range(num_halves // 2):
        seats[p] = 2 * p
        seats[num_halves - 1 - p] = 2 * p + 1
    return seats


def build_schedule(n_rows, rows_per_pu):
    cfg = PuConfig(n_rows, rows_per_pu)
    half = rows_per_pu // 2
    num_halves = 2 * cfg.num_pus
    seats = _circle_order(num_halves)
    local = list(combinations(range(rows_per_pu), 2))

    stages = []
    for _ in range(cfg.stages_per_sweep):
        groups = []
        pairs = []
        for p in range(cfg.num_pus):
            first, second = seats[p], seats[num_halves - 1 - p]
            rows = tuple(range(first * half, (first + 1) * half)) + tuple(
                range(second * half, (second + 1) * half)
            )
            groups.append(rows)
            pairs.append(tuple((rows[a], rows[b]) for a, b in local))
        stages.append(Stage(tuple(groups), tuple(pairs)))
        seats = [seats[0], seats[-1]] + seats[1:-1]
    return SweepSchedule(cfg, tuple(stages))


def rotations_per_sweep(n_rows, rows_per_pu):
    cfg = PuConfig(n_rows, rows_per_pu)
    p = rows_per_pu
    return cfg.stages_per_sweep * cfg.num_pus * (p * (p - 1) // 2)
