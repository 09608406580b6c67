"""TSPLIB instance ingestion.

Reads symmetric (``.tsp``) and asymmetric (``.atsp``) TSPLIB files and
materializes the full n-by-n distance matrix.  Supported EDGE_WEIGHT_TYPEs
are EUC_2D, CEIL_2D, GEO and EXPLICIT with the FULL_MATRIX, UPPER_ROW,
LOWER_DIAG_ROW and UPPER_DIAG_ROW layouts.  Distances are always integers
(TSPLIB rounding happens at parse time), so every later weight comparison
is an exact integer comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

SYMMETRIC = "symmetric"
ASYMMETRIC = "asymmetric"

#: source_format values for coordinate-based instances
_COORD_FORMATS = ("EUC_2D", "CEIL_2D", "GEO")

#: EDGE_WEIGHT_FORMAT -> (source_format, value count, layout expander)
_EXPLICIT_FORMATS = {
    "FULL_MATRIX": "EXPLICIT_FULL",
    "UPPER_ROW": "EXPLICIT_UPPER_ROW",
    "LOWER_DIAG_ROW": "EXPLICIT_LOWER_DIAG",
    "UPPER_DIAG_ROW": "EXPLICIT_UPPER_DIAG",
}


class ParseError(ValueError):
    """Raised for malformed or unsupported TSPLIB input, naming the culprit."""


class InvalidTourError(ValueError):
    """Raised when a node sequence cannot be costed against an instance."""


@dataclass(frozen=True, eq=False)
class Instance:
    """A complete TSP instance with a fully materialized distance matrix.

    ``weights`` is an (n, n) read-only int64 array.  The diagonal is stored
    as 0 but is never a legal arc; consumers treat self-loops as ineligible
    by construction.  Instances are immutable after parse and safe to share
    across threads.
    """

    name: str
    n: int
    kind: str  # SYMMETRIC or ASYMMETRIC
    weights: np.ndarray
    source_format: str

    def __post_init__(self) -> None:
        self.weights.setflags(write=False)

    @property
    def is_symmetric(self) -> bool:
        return self.kind == SYMMETRIC


def tour_cost(inst: Instance, order: Sequence[int] | np.ndarray) -> int:
    """Total cost of the closed tour visiting ``order`` and returning to start.

    Asymmetric instances are costed in traversal order, i.e. the matrix is
    used as-is along the arc directions.
    """
    idx = np.asarray(order, dtype=np.int64)
    if idx.ndim != 1 or len(idx) != inst.n:
        raise InvalidTourError(
            f"tour has {idx.size} nodes, instance {inst.name!r} has {inst.n}"
        )
    return int(inst.weights[idx, np.roll(idx, -1)].sum())


def load_instance(path: str | Path) -> Instance:
    """Parse a TSPLIB file from disk."""
    path = Path(path)
    return parse_instance(path.read_text(), name=path.stem)


def parse_instance(text: str, name: str | None = None) -> Instance:
    """Parse TSPLIB-format text into an :class:`Instance`.

    The instance kind comes from the TYPE header (TSP or ATSP); everything
    else is taken from the file content, never from the file name.
    """
    header, sections = _split_file(text)

    file_name = header.get("NAME", name or "unnamed")
    problem_type = header.get("TYPE")
    if problem_type is None:
        raise ParseError("missing TYPE header (expected TSP or ATSP)")
    if problem_type not in ("TSP", "ATSP"):
        raise ParseError(f"unsupported TYPE: {problem_type!r}")
    kind = SYMMETRIC if problem_type == "TSP" else ASYMMETRIC

    if "DIMENSION" not in header:
        raise ParseError("missing DIMENSION header")
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise ParseError(f"malformed DIMENSION: {header['DIMENSION']!r}") from None
    if n < 3:
        raise ParseError(f"DIMENSION must be at least 3, got {n}")

    ewt = header.get("EDGE_WEIGHT_TYPE")
    if ewt in _COORD_FORMATS:
        if kind == ASYMMETRIC:
            raise ParseError(f"EDGE_WEIGHT_TYPE {ewt} requires TYPE: TSP")
        coords = _parse_coords(sections, n)
        weights = _matrix_from_coords(coords, ewt)
        source_format = ewt
    elif ewt == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT", "FULL_MATRIX")
        if fmt not in _EXPLICIT_FORMATS:
            raise ParseError(f"unsupported EDGE_WEIGHT_FORMAT: {fmt!r}")
        values = _parse_weight_section(sections, n, fmt)
        weights = _expand_explicit(values, n, fmt, kind)
        source_format = _EXPLICIT_FORMATS[fmt]
    elif ewt is None:
        raise ParseError("missing EDGE_WEIGHT_TYPE header")
    else:
        raise ParseError(
            f"unsupported EDGE_WEIGHT_TYPE: {ewt!r} "
            f"(supported: {', '.join(_COORD_FORMATS)}, EXPLICIT)"
        )

    np.fill_diagonal(weights, 0)  # self-loops are stored as 0, never read
    off_diag = weights[~np.eye(n, dtype=bool)]
    if (off_diag < 0).any():
        i, j = np.argwhere((weights < 0) & ~np.eye(n, dtype=bool))[0]
        raise ParseError(f"negative weight {weights[i, j]} at ({i + 1}, {j + 1})")
    if kind == SYMMETRIC and not np.array_equal(weights, weights.T):
        i, j = np.argwhere(weights != weights.T)[0]
        raise ParseError(
            f"TYPE: TSP but matrix is asymmetric at ({i + 1}, {j + 1})"
        )

    return Instance(
        name=file_name, n=n, kind=kind, weights=weights, source_format=source_format
    )


def _split_file(text: str) -> tuple[dict[str, str], dict[str, list[str]]]:
    """Split TSPLIB text into header key/values and raw section line lists."""
    section_names = (
        "NODE_COORD_SECTION",
        "EDGE_WEIGHT_SECTION",
        "DISPLAY_DATA_SECTION",
        "FIXED_EDGES_SECTION",
        "TOUR_SECTION",
    )
    header: dict[str, str] = {}
    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        if line in section_names:
            current = sections.setdefault(line, [])
            continue
        if current is not None:
            current.append(line)
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            header[key.strip().upper()] = value.strip()
        else:
            raise ParseError(f"malformed header line: {line!r}")
    return header, sections


def _parse_coords(sections: dict[str, list[str]], n: int) -> np.ndarray:
    lines = sections.get("NODE_COORD_SECTION")
    if not lines:
        raise ParseError("missing NODE_COORD_SECTION")
    if len(lines) != n:
        raise ParseError(
            f"NODE_COORD_SECTION has {len(lines)} entries, DIMENSION is {n}"
        )
    coords = np.empty((n, 2), dtype=np.float64)
    seen = np.zeros(n, dtype=bool)
    for line in lines:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"malformed coordinate line: {line!r}")
        try:
            node = int(parts[0])
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise ParseError(f"malformed coordinate line: {line!r}") from None
        if not 1 <= node <= n:
            raise ParseError(f"node number {node} outside 1..{n}: {line!r}")
        idx = node - 1  # file numbering is 1-based
        if seen[idx]:
            raise ParseError(f"duplicate node number {node}: {line!r}")
        seen[idx] = True
        coords[idx] = (x, y)
    return coords


def _matrix_from_coords(coords: np.ndarray, ewt: str) -> np.ndarray:
    if ewt == "GEO":
        return _geo_matrix(coords)
    dx = coords[:, 0:1] - coords[:, 0:1].T
    dy = coords[:, 1:2] - coords[:, 1:2].T
    dist = np.sqrt(dx * dx + dy * dy)
    if ewt == "EUC_2D":
        return (dist + 0.5).astype(np.int64)  # nearest integer
    return np.ceil(dist).astype(np.int64)  # CEIL_2D


def _geo_matrix(coords: np.ndarray) -> np.ndarray:
    # TSPLIB geographical convention: coordinates are DDD.MM (degrees and
    # minutes), degrees are truncated toward zero, radius is 6378.388 km
    # and the result is truncated to an integer after adding 1.0.
    pi = 3.141592
    deg = np.trunc(coords)
    minutes = coords - deg
    rad = pi * (deg + 5.0 * minutes / 3.0) / 180.0
    lat, lon = rad[:, 0], rad[:, 1]
    q1 = np.cos(lon[:, None] - lon[None, :])
    q2 = np.cos(lat[:, None] - lat[None, :])
    q3 = np.cos(lat[:, None] + lat[None, :])
    arg = np.clip(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3), -1.0, 1.0)
    dist = 6378.388 * np.arccos(arg) + 1.0
    matrix = dist.astype(np.int64)
    np.fill_diagonal(matrix, 0)
    return matrix


def _parse_weight_section(
    sections: dict[str, list[str]], n: int, fmt: str
) -> list[int]:
    lines = sections.get("EDGE_WEIGHT_SECTION")
    if not lines:
        raise ParseError("missing EDGE_WEIGHT_SECTION")
    values: list[int] = []
    for line in lines:
        for token in line.split():
            try:
                values.append(int(token))
            except ValueError:
                raise ParseError(f"non-integer weight {token!r} in line: {line!r}") from None
    expected = _expected_count(n, fmt)
    if len(values) != expected:
        raise ParseError(
            f"EDGE_WEIGHT_SECTION has {len(values)} values, "
            f"{fmt} with DIMENSION {n} needs {expected}"
        )
    return values


def _expected_count(n: int, fmt: str) -> int:
    if fmt == "FULL_MATRIX":
        return n * n
    if fmt == "UPPER_ROW":
        return n * (n - 1) // 2
    return n * (n + 1) // 2  # *_DIAG_ROW layouts include the diagonal


def _expand_explicit(values: list[int], n: int, fmt: str, kind: str) -> np.ndarray:
    if fmt == "FULL_MATRIX":
        return np.array(values, dtype=np.int64).reshape(n, n)
    if kind == ASYMMETRIC:
        raise ParseError(f"EDGE_WEIGHT_FORMAT {fmt} is triangular, TYPE must be TSP")
    matrix = np.zeros((n, n), dtype=np.int64)
    it = iter(values)
    if fmt == "UPPER_ROW":
        for i in range(n):
            for j in range(i + 1, n):
                matrix[i, j] = matrix[j, i] = next(it)
    elif fmt == "LOWER_DIAG_ROW":
        for i in range(n):
            for j in range(i + 1):
                v = next(it)
                matrix[i, j] = matrix[j, i] = v
    else:  # UPPER_DIAG_ROW
        for i in range(n):
            for j in range(i, n):
                v = next(it)
                matrix[i, j] = matrix[j, i] = v
    return matrix
