"""
Sample store: the multiset X of lazy samples.

Every slot holds one lazy sample, a length-n row of cells that are TRUE,
FALSE or MARK (value not drawn yet). Capacity is fixed for a run; free slots
live on a stack. Two backends share the slot bookkeeping and the
bit-consumption order, so equal seeds give identical runs on both:

  * dense  - one pre-allocated 2-bit-packed array, fixed-stride rows;
  * sparse - per-sample run-length rows (value, following MARK run).

Bit order: materialization visits occupied slots ascending and, within a
slot, the cube's MARK variables ascending; all of them are drawn before the
agreement check. Thinning draws one bit per occupied slot, ascending; bit 1
removes the sample.
"""
import logging
from abc import ABC, abstractmethod
from enum import IntEnum
from typing import Dict, List, Tuple

import numpy as np

from .arith import RandomSource
from .config import BACKENDS
from .dnf import Cube
from .errors import ParameterError, StoreFullError

logger = logging.getLogger(__name__)


class CellValue(IntEnum):
    FALSE = 0b00
    TRUE = 0b01
    MARK = 0b11


MARK = int(CellValue.MARK)
ALL_MARK_BYTE = 0xFF
DUMP_CHARS = {CellValue.FALSE: "0", CellValue.TRUE: "1", CellValue.MARK: "?"}


class SampleStore(ABC):
    backend = ""

    def __init__(self, capacity: int, n: int):
        if capacity < 1 or n < 1:
            raise ParameterError(f"store needs capacity >= 1 and n >= 1, got ({capacity}, {n})")
        self.capacity = capacity
        self.n = n
        self._occupied = np.zeros(capacity, dtype=bool)
        # popped from the end, so slots fill 0, 1, 2, ...
        self._free: List[int] = list(range(capacity - 1, -1, -1))
        self._size = 0

    # ------------------------------------------------------------------
    # slot bookkeeping
    # ------------------------------------------------------------------
    @property
    def size(self) -> int:
        return self._size

    @property
    def free_slots(self) -> int:
        return len(self._free)

    def is_occupied(self, slot: int) -> bool:
        return bool(self._occupied[slot])

    def occupied_slots(self) -> np.ndarray:
        return np.flatnonzero(self._occupied)

    def _check_accounting(self):
        assert self._size + len(self._free) == self.capacity, "slot accounting broken"

    def append_lazy(self, cube: Cube) -> int:
        """Store a sample with the cube's literals set and every other cell MARK."""
        if not self._free:
            raise StoreFullError(f"sample store full (capacity {self.capacity})")
        slot = self._free.pop()
        self._write_cube(slot, cube)
        self._occupied[slot] = True
        self._size += 1
        self._check_accounting()
        return slot

    def remove(self, slot: int):
        assert self._occupied[slot], f"slot {slot} removed twice"
        self._occupied[slot] = False
        self._free.append(int(slot))
        self._size -= 1
        self._check_accounting()

    # ------------------------------------------------------------------
    # randomized operations
    # ------------------------------------------------------------------
    def check_materialize(self, slot: int, cube: Cube, rng: RandomSource) -> bool:
        assert self._occupied[slot], f"slot {slot} is empty"
        return bool(self._materialize(np.array([slot], dtype=np.intp), cube, rng)[0])

    def scan_remove_satisfying(self, cube: Cube, rng: RandomSource) -> int:
        rows = self.occupied_slots()
        if len(rows) == 0:
            return 0
        satisfied = self._materialize(rows, cube, rng)
        doomed = rows[satisfied]
        for slot in doomed:
            self.remove(int(slot))
        return len(doomed)

    def thin_half(self, rng: RandomSource) -> int:
        rows = self.occupied_slots()
        if len(rows) == 0:
            return 0
        doomed = rows[rng.bits(len(rows)) == 1]
        for slot in doomed:
            self.remove(int(slot))
        return len(doomed)

    def dump(self) -> str:
        """One line per occupied slot, 0/1/? for FALSE/TRUE/MARK."""
        return "\n".join(
            "".join(DUMP_CHARS[c] for c in self.cells(int(slot)))
            for slot in self.occupied_slots()
        )

    # ------------------------------------------------------------------
    # backend hooks
    # ------------------------------------------------------------------
    @abstractmethod
    def _write_cube(self, slot: int, cube: Cube):
        ...

    @abstractmethod
    def _materialize(self, rows: np.ndarray, cube: Cube, rng: RandomSource) -> np.ndarray:
        """Draw MARK cells of the cube's variables in `rows`; return per-row s |= cube."""

    @abstractmethod
    def cells(self, slot: int) -> Tuple[CellValue, ...]:
        ...

    @property
    @abstractmethod
    def payload_bytes(self) -> int:
        ...


class DenseSampleStore(SampleStore):
    backend = "dense"

    def __init__(self, capacity: int, n: int):
        super().__init__(capacity, n)
        self._row_bytes = (n + 3) // 4
        self._data = np.full((capacity, self._row_bytes), ALL_MARK_BYTE, dtype=np.uint8)

    @property
    def payload_bytes(self) -> int:
        return self._data.nbytes

    @staticmethod
    def _layout(cube: Cube) -> Tuple[np.ndarray, np.ndarray]:
        idx = cube.var_index
        return idx >> 2, ((idx & 3) << 1).astype(np.uint8)

    def _set_cells(self, slots: np.ndarray, col: int, shift: int, values: np.ndarray):
        keep = np.uint8(~(MARK << shift) & 0xFF)
        self._data[slots, col] = (self._data[slots, col] & keep) | (values.astype(np.uint8) << np.uint8(shift))

    def _write_cube(self, slot: int, cube: Cube):
        row = self._data[slot]
        row.fill(ALL_MARK_BYTE)
        cols, shifts = self._layout(cube)
        for col, shift, value in zip(cols, shifts, cube.values):
            row[col] = (row[col] & (~(MARK << int(shift)) & 0xFF)) | (int(value) << int(shift))

    def _materialize(self, rows: np.ndarray, cube: Cube, rng: RandomSource) -> np.ndarray:
        cols, shifts = self._layout(cube)
        block = (self._data[np.ix_(rows, cols)] >> shifts) & np.uint8(MARK)
        marks = block == MARK
        n_marks = int(np.count_nonzero(marks))
        if n_marks:
            # boolean-mask assignment runs in C order: slot-major, variable-minor
            block[marks] = rng.bits(n_marks)
            for j in np.flatnonzero(marks.any(axis=0)):
                hit = marks[:, j]
                self._set_cells(rows[hit], int(cols[j]), int(shifts[j]), block[hit, j])
        return (block == cube.values).all(axis=1)

    def cells(self, slot: int) -> Tuple[CellValue, ...]:
        row = self._data[slot]
        unpacked = (row[:, None] >> np.array([0, 2, 4, 6], dtype=np.uint8)) & np.uint8(MARK)
        return tuple(CellValue(int(c)) for c in unpacked.reshape(-1)[:self.n])


class RunLengthRow:
    """
    Sparse lazy sample: `leading` MARKs, then runs of
    [value, number of MARKs following it].
    """
    __slots__ = ("n", "leading", "runs")

    def __init__(self, n: int, cube: Cube):
        self.n = n
        variables = [lit.var - 1 for lit in cube.literals]
        self.leading = variables[0] if variables else n
        self.runs: List[List[int]] = []
        for i, lit in enumerate(cube.literals):
            nxt = variables[i + 1] if i + 1 < len(variables) else n
            self.runs.append([int(lit.positive), nxt - variables[i] - 1])

    def get(self, var: int) -> int:
        if var < self.leading:
            return MARK
        pos = self.leading
        for value, following in self.runs:
            if var == pos:
                return value
            if var <= pos + following:
                return MARK
            pos += 1 + following
        raise IndexError(var)

    def set(self, var: int, value: int):
        """Assign a MARK cell, splitting the run that contains it."""
        if var < self.leading:
            self.runs.insert(0, [value, self.leading - var - 1])
            self.leading = var
            return
        pos = self.leading
        for idx, run in enumerate(self.runs):
            assert var != pos, f"cell {var} already assigned"
            if var <= pos + run[1]:
                offset = var - pos - 1
                self.runs.insert(idx + 1, [value, run[1] - offset - 1])
                run[1] = offset
                return
            pos += 1 + run[1]
        raise IndexError(var)

    def expand(self) -> List[int]:
        out = [MARK] * self.leading
        for value, following in self.runs:
            out.append(value)
            out.extend([MARK] * following)
        return out


class SparseSampleStore(SampleStore):
    backend = "sparse"

    def __init__(self, capacity: int, n: int):
        super().__init__(capacity, n)
        self._rows: Dict[int, RunLengthRow] = {}

    @property
    def payload_bytes(self) -> int:
        # two machine words per run plus the leading counter
        return sum(16 * len(r.runs) + 8 for r in self._rows.values())

    def remove(self, slot: int):
        super().remove(slot)
        del self._rows[int(slot)]

    def _write_cube(self, slot: int, cube: Cube):
        self._rows[slot] = RunLengthRow(self.n, cube)

    def _materialize(self, rows: np.ndarray, cube: Cube, rng: RandomSource) -> np.ndarray:
        variables = [lit.var - 1 for lit in cube.literals]
        wanted = [int(lit.positive) for lit in cube.literals]
        current = [[self._rows[int(slot)].get(v) for v in variables] for slot in rows]
        pending = [(r, j) for r, vals in enumerate(current) for j, c in enumerate(vals) if c == MARK]
        if pending:
            bits = rng.bits(len(pending))
            for (r, j), bit in zip(pending, bits):
                self._rows[int(rows[r])].set(variables[j], int(bit))
                current[r][j] = int(bit)
        return np.array([vals == wanted for vals in current], dtype=bool)

    def cells(self, slot: int) -> Tuple[CellValue, ...]:
        return tuple(CellValue(c) for c in self._rows[slot].expand())


_BACKEND_CLASSES = {
    "dense": DenseSampleStore,
    "sparse": SparseSampleStore,
}
assert tuple(_BACKEND_CLASSES) == BACKENDS


def new_store(capacity: int, n: int, backend: str = "dense") -> SampleStore:
    try:
        cls = _BACKEND_CLASSES[backend]
    except KeyError:
        raise ParameterError(f"unknown backend {backend!r}, expected one of {BACKENDS}")
    store = cls(capacity, n)
    logger.debug(f"Allocated {backend} store: capacity={capacity}, n={n}, {store.payload_bytes} payload bytes")
    return store
