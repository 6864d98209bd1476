"""Erasure-coded block grid with row commitments.

Data is chunked into 31-byte units so every cell is a canonical scalar,
rows are interpolated over the first `cols` domain points and evaluated
over the full extended row domain (a systematic Reed-Solomon extension),
and each row gets one KZG commitment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field_poly import (
    EvaluationDomain, MicroDomain, evaluate_on_domain, interpolate,
    roots_of_unity_domain,
)
from .kzg import SRS, Commitment, commit
from .multiproof import OpenedGroup

CHUNK_BYTES = 31


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridDims:
    rows: int
    cols: int
    extension_factor: int = 2

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise GridError("grid needs at least one row and column")
        if self.extension_factor < 2:
            raise GridError("extension factor must be at least 2")

    @property
    def extended_cols(self) -> int:
        return self.cols * self.extension_factor

    @property
    def extended_cells(self) -> int:
        return self.rows * self.extended_cols

    @property
    def data_capacity_bytes(self) -> int:
        return self.rows * self.cols * CHUNK_BYTES


@dataclass(frozen=True)
class Coordinate:
    """Position in the extended grid."""

    row: int
    col: int

    def __post_init__(self):
        if self.row < 0 or self.col < 0:
            raise GridError("coordinates are unsigned")


def default_row_domain(extended_cols: int) -> EvaluationDomain:
    """Roots of unity when the width is a power of two, consecutive
    integers otherwise; the algebra downstream is domain-agnostic."""
    n = extended_cols
    if n & (n - 1) == 0:
        return roots_of_unity_domain(n)
    return EvaluationDomain(range(n))


class DataGrid:
    """Immutable extended grid: cells, row polynomials, row commitments."""

    def __init__(self, dims: GridDims, cells, row_domain: EvaluationDomain,
                 row_polys, row_commitments):
        self.dims = dims
        self.cells = tuple(tuple(row) for row in cells)
        self.row_domain = row_domain
        self.row_polys = tuple(row_polys)
        self.row_commitments = tuple(row_commitments)

    def cell(self, coord: Coordinate) -> int:
        self.check_bounds(coord)
        return self.cells[coord.row][coord.col]

    def check_bounds(self, coord: Coordinate) -> None:
        if coord.row >= self.dims.rows or coord.col >= self.dims.extended_cols:
            raise GridError(f"coordinate {coord} outside the extended grid")


def bytes_to_scalars(data: bytes, count: int):
    """Chunk into 31-byte units (zero-extended little-endian scalars),
    padded with zero scalars up to `count`."""
    scalars = []
    for i in range(0, len(data), CHUNK_BYTES):
        scalars.append(int.from_bytes(data[i:i + CHUNK_BYTES], "little"))
    if len(scalars) > count:
        raise GridError("data does not fit the grid")
    scalars.extend([0] * (count - len(scalars)))
    return scalars


def build_grid(data: bytes, dims: GridDims, srs: SRS,
               row_domain: EvaluationDomain | None = None) -> DataGrid:
    if len(data) > dims.data_capacity_bytes:
        raise GridError(
            f"data of {len(data)} bytes exceeds grid capacity "
            f"{dims.data_capacity_bytes}")
    if row_domain is None:
        row_domain = default_row_domain(dims.extended_cols)
    if len(row_domain) != dims.extended_cols:
        raise GridError("row domain size must equal the extended width")
    if dims.cols - 1 > srs.degree_bound:
        raise GridError("row polynomial degree exceeds the SRS bound")
    scalars = bytes_to_scalars(data, dims.rows * dims.cols)
    base_points = EvaluationDomain(row_domain.points[: dims.cols])
    cells = []
    polys = []
    commitments = []
    for r in range(dims.rows):
        row_data = scalars[r * dims.cols:(r + 1) * dims.cols]
        poly = interpolate(base_points, row_data)
        extended = evaluate_on_domain(poly, row_domain)
        assert extended[: dims.cols] == row_data
        cells.append(extended)
        polys.append(poly)
        commitments.append(commit(srs, poly))
    return DataGrid(dims, cells, row_domain, polys, commitments)


def partition_micro_domains(row_domain: EvaluationDomain, g: int):
    """Split the row domain into contiguous disjoint blocks of size g."""
    n = len(row_domain)
    if g < 1 or n % g != 0:
        raise GridError(f"group size {g} does not divide domain size {n}")
    return [MicroDomain(row_domain.points[j * g:(j + 1) * g], offset=j * g)
            for j in range(n // g)]


def coordinate_to_group(coord: Coordinate, g: int, rows_per_group: int = 1,
                        dims: GridDims | None = None):
    """(row-band index, micro-domain index) containing the coordinate."""
    if g < 1 or rows_per_group < 1:
        raise GridError("group size and rows-per-group must be positive")
    if dims is not None and (coord.row >= dims.rows
                             or coord.col >= dims.extended_cols):
        raise GridError(f"coordinate {coord} outside the extended grid")
    return (coord.row // rows_per_group, coord.col // g)


def band_rows(grid: DataGrid, band_index: int, rows_per_group: int) -> range:
    start = band_index * rows_per_group
    stop = min(start + rows_per_group, grid.dims.rows)
    if start >= grid.dims.rows:
        raise GridError("row band outside the grid")
    return range(start, stop)


def build_opened_group(grid: DataGrid, band: range,
                       md: MicroDomain) -> OpenedGroup:
    """Full evaluation vectors of every band row on one micro-domain."""
    if band.start < 0 or band.stop > grid.dims.rows or len(band) == 0:
        raise GridError("row band outside the grid")
    expected = grid.row_domain.points[md.offset:md.offset + md.size]
    if expected != md.points:
        raise GridError("micro-domain is not a block of this grid's partition")
    commitments = [grid.row_commitments[r] for r in band]
    values = [tuple(grid.cells[r][md.offset:md.offset + md.size])
              for r in band]
    return OpenedGroup(commitments, values, md)


def iter_groups(grid: DataGrid, g: int, rows_per_group: int = 1):
    """Yield ((band_index, md_index), band, micro-domain) over the grid."""
    mds = partition_micro_domains(grid.row_domain, g)
    n_bands = (grid.dims.rows + rows_per_group - 1) // rows_per_group
    for b in range(n_bands):
        band = band_rows(grid, b, rows_per_group)
        for m, md in enumerate(mds):
            yield (b, m), band, md
