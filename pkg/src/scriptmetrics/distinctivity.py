"""Letter distinctivity: component-level differences, minimum-cost letter
distances, distance matrices and mean distinctivities."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .assignment import min_cost_assignment
from .model import Alphabet, Component, DataError, Letter

ABSENCE_MODES = ("component-weight", "fixed")


@dataclass(frozen=True)
class DifferenceWeightTable:
    """Weights for component differences.

    The defaults are a placeholder calibration; load real weights with
    :meth:`from_json` when they are known.
    """

    kind_mismatch: int = 3
    orientation_mismatch: int = 1
    absence_cost_mode: str = "component-weight"
    absence_cost: int = 2  # used when absence_cost_mode == "fixed"
    connection_weight: int = 0  # per unit of connection-count difference

    def __post_init__(self):
        if self.absence_cost_mode not in ABSENCE_MODES:
            raise DataError(f"unknown absence cost mode {self.absence_cost_mode!r}; expected one of {ABSENCE_MODES}")
        for name in ("kind_mismatch", "orientation_mismatch", "absence_cost", "connection_weight"):
            if getattr(self, name) < 0:
                raise DataError(f"weight {name} must be non-negative")

    @classmethod
    def from_mapping(cls, data: dict) -> DifferenceWeightTable:
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise DataError(f"unknown weight keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> DifferenceWeightTable:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise DataError(f"{path}: expected a JSON object of weights")
        return cls.from_mapping(data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


DEFAULT_WEIGHTS = DifferenceWeightTable()


def component_difference(c1: Component | None, c2: Component | None,
                         weights: DifferenceWeightTable = DEFAULT_WEIGHTS) -> int:
    """Cost of matching ``c1`` with ``c2``; ``None`` marks an absent component."""
    if c1 is None and c2 is None:
        raise DataError("cannot compare two absent components")
    if c1 is None or c2 is None:
        present = c1 if c2 is None else c2
        if weights.absence_cost_mode == "fixed":
            return weights.absence_cost
        return present.kind.weight
    cost = 0
    if c1.kind is not c2.kind:
        cost += weights.kind_mismatch
    if c1.orientation != c2.orientation:
        cost += weights.orientation_mismatch
    return cost


def _cost_matrix(l1: Letter, l2: Letter, weights) -> list[list[int]]:
    n = max(len(l1.components), len(l2.components))
    a = list(l1.components) + [None] * (n - len(l1.components))
    b = list(l2.components) + [None] * (n - len(l2.components))
    return [[0 if x is None and y is None else component_difference(x, y, weights) for y in b] for x in a]


def letter_distance(l1: Letter, l2: Letter, weights: DifferenceWeightTable = DEFAULT_WEIGHTS) -> int:
    """Minimum over component matchings of the summed component differences.

    The shorter component list is padded with absent components.
    """
    total, _ = min_cost_assignment(_cost_matrix(l1, l2, weights))
    total += weights.connection_weight * abs(len(l1.connections) - len(l2.connections))
    return total


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple[str, ...]
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        values = tuple(tuple(row) for row in self.values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)
        n = len(labels)
        if len(set(labels)) != n:
            raise DataError("duplicate labels in distance matrix")
        if len(values) != n or any(len(row) != n for row in values):
            raise DataError(f"distance matrix is not square ({n} labels)")
        for i in range(n):
            if values[i][i] != 0:
                raise DataError(f"non-zero diagonal at {labels[i]}")
            for j in range(i + 1, n):
                if values[i][j] != values[j][i]:
                    raise DataError(
                        f"asymmetric entry ({labels[i]},{labels[j]})={values[i][j]} "
                        f"vs ({labels[j]},{labels[i]})={values[j][i]}"
                    )
                if values[i][j] < 0:
                    raise DataError(f"negative distance at ({labels[i]},{labels[j]})")

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, key: tuple[str, str]) -> int:
        i, j = (self.labels.index(k) for k in key)
        return self.values[i][j]

    def row_sum(self, label: str) -> int:
        return sum(self.values[self.labels.index(label)])


def distance_matrix(alphabet: Alphabet, weights: DifferenceWeightTable = DEFAULT_WEIGHTS) -> DistanceMatrix:
    letters = list(alphabet)
    n = len(letters)
    values = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            values[i][j] = values[j][i] = letter_distance(letters[i], letters[j], weights)
    return DistanceMatrix(tuple(l.glyph for l in letters), values)


@dataclass(frozen=True)
class DistinctivityStats:
    means: dict[str, float]
    overall: float


def mean_distinctivities(matrix: DistanceMatrix) -> DistinctivityStats:
    """Per-letter row sum over I - 1, and the mean of those means."""
    n = len(matrix)
    if n < 2:
        raise DataError("mean distinctivity needs at least two letters")
    means = {label: sum(row) / (n - 1) for label, row in zip(matrix.labels, matrix.values)}
    return DistinctivityStats(means, sum(means.values()) / n)


def pair_sum(matrix: DistanceMatrix) -> int:
    """Sum of distances over unordered pairs."""
    vals: Sequence[Sequence[int]] = matrix.values
    return sum(vals[i][j] for i in range(len(vals)) for j in range(i + 1, len(vals)))
