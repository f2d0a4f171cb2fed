"""Label algebra: radiation modes, photon occupations, electronuclear levels,
partition schemes and coupling tables.

Everything here is a frozen value type with no dynamics.  hbar = 1 throughout,
so mode frequencies are energies and a mode's momentum vector is its frequency
times the unit propagation direction (c = 1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "DEFAULT_RESONANCE_TOL",
    "ModeLabel",
    "FockLabel",
    "ENLabel",
    "PartitionScheme",
    "CouplingModel",
    "Registry",
    "RegistryError",
    "is_resonant",
    "photonic_level",
]

DEFAULT_RESONANCE_TOL = 1e-9


class RegistryError(ValueError):
    """Raised for malformed registry files; message cites the offending field."""


def _unit(vec: tuple[float, float, float]) -> tuple[float, float, float]:
    norm = math.sqrt(sum(v * v for v in vec))
    if norm == 0.0:
        raise ValueError("direction vector must be nonzero")
    return (vec[0] / norm, vec[1] / norm, vec[2] / norm)


@dataclass(frozen=True)
class ModeLabel:
    """A radiation mode: symbolic id, angular frequency and propagation direction.

    ``momentum`` is omega * unit(direction) so that momentum bookkeeping across
    a protocol is a plain vector sum.
    """

    id: str
    omega: float
    direction: tuple[float, float, float] = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if not (self.omega > 0.0) or not math.isfinite(self.omega):
            raise ValueError(f"mode {self.id!r}: omega must be finite and > 0, got {self.omega}")
        object.__setattr__(self, "direction", _unit(tuple(float(v) for v in self.direction)))

    @property
    def momentum(self) -> tuple[float, float, float]:
        return tuple(self.omega * d for d in self.direction)


@dataclass(frozen=True)
class FockLabel:
    """Photon occupation of one mode; n = 0 is the colored vacuum of that mode."""

    mode: ModeLabel
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"occupation must be a non-negative integer, got {self.n!r}")

    @property
    def energy(self) -> float:
        # Zero-point offsets are excluded everywhere: only level differences
        # are physical, so (1/2) omega per mode would cancel anyway.
        return self.n * self.mode.omega


@dataclass(frozen=True)
class ENLabel:
    """Electronuclear level: electronic j, subsidiary quantum number k_sub, energy.

    k_sub is opaque; it only distinguishes levels sharing the same j.
    """

    j: int
    k_sub: int
    energy: float

    def __post_init__(self):
        if self.j < 0 or self.k_sub < 0:
            raise ValueError("quantum numbers must be non-negative")
        if not math.isfinite(self.energy):
            raise ValueError("energy must be finite")

    @property
    def key(self) -> tuple[int, int]:
        return (self.j, self.k_sub)


@dataclass(frozen=True)
class PartitionScheme:
    """Ordered partition of constituents 1..m into disjoint blocks.

    Blocks are tuples of 1-based constituent indices.  All schemes sharing one
    basis must cover the same m constituents.
    """

    id: str
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = [i for b in blocks for i in b]
        if len(set(flat)) != len(flat):
            raise ValueError(f"partition {self.id!r}: blocks are not disjoint")
        if not flat or set(flat) != set(range(1, max(flat) + 1)):
            raise ValueError(f"partition {self.id!r}: blocks must cover 1..m with no gaps")

    @property
    def m(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)


def _pair_key(a: ENLabel, b: ENLabel) -> tuple:
    return (a.key, b.key)


class CouplingModel:
    """Hermitian table of transition integrals between EN labels plus
    externally driven couplings between basis elements (by index pair).

    Absent entries mean zero (dark transitions).
    """

    def __init__(
        self,
        transition_integrals: Mapping[tuple[ENLabel, ENLabel], complex] | None = None,
        mode_couplings: Mapping[tuple[int, int], complex] | None = None,
    ):
        self._t: dict[tuple, complex] = {}
        self._drive: dict[tuple[int, int], complex] = {}
        if transition_integrals:
            for (a, b), v in transition_integrals.items():
                self.set_transition(a, b, v)
        if mode_couplings:
            for (i, j), v in mode_couplings.items():
                self.set_drive(i, j, v)

    def set_transition(self, a: ENLabel, b: ENLabel, value: complex) -> None:
        value = complex(value)
        existing = self._t.get(_pair_key(b, a))
        if existing is not None and abs(existing - value.conjugate()) > 1e-12:
            raise ValueError(f"non-Hermitian transition integral for {a.key} <-> {b.key}")
        self._t[_pair_key(a, b)] = value
        self._t[_pair_key(b, a)] = value.conjugate()

    def transition(self, a: ENLabel, b: ENLabel) -> complex:
        return self._t.get(_pair_key(a, b), 0.0 + 0.0j)

    def set_drive(self, i: int, j: int, value: complex) -> None:
        if i == j:
            raise ValueError("drive couplings are off-diagonal only")
        value = complex(value)
        self._drive[(i, j)] = value
        self._drive[(j, i)] = value.conjugate()

    def drive(self, i: int, j: int) -> complex:
        return self._drive.get((i, j), 0.0 + 0.0j)

    @property
    def drive_pairs(self) -> list[tuple[int, int]]:
        return sorted(p for p in self._drive if p[0] < p[1])

    def check_hermitian(self, tol: float = 1e-12) -> None:
        for (a, b), v in self._t.items():
            if abs(v - self._t[(b, a)].conjugate()) > tol:
                raise ValueError(f"transition table not Hermitian at {a} <-> {b}")
        for (i, j), v in self._drive.items():
            if abs(v - self._drive[(j, i)].conjugate()) > tol:
                raise ValueError(f"drive table not Hermitian at ({i},{j})")


def is_resonant(a: ENLabel, b: ENLabel, m: ModeLabel, tol: float = DEFAULT_RESONANCE_TOL) -> bool:
    """True iff the excitation gap |E_a - E_b| matches the mode frequency.

    Convention: excitation energy is higher minus lower, so the check is
    symmetric under swapping a and b.
    """
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return abs(abs(a.energy - b.energy) - m.omega) <= tol


def photonic_level(en: ENLabel, fock_list: Iterable[FockLabel]) -> float:
    """Energy level of an EN label dressed with photon occupations:
    E + sum(n * omega).  Zero-point offsets are excluded."""
    fock_list = list(fock_list)
    ids = [f.mode.id for f in fock_list]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate mode in fock_list")
    return en.energy + sum(f.energy for f in fock_list)


@dataclass
class Registry:
    """Named collections of EN levels, modes and transition couplings.

    Loaded from a JSON file with arrays ``levels`` ({j, k, energy}),
    ``modes`` ({id, omega, dir}) and ``couplings`` ({from, to, value}).
    """

    levels: dict[tuple[int, int], ENLabel] = field(default_factory=dict)
    modes: dict[str, ModeLabel] = field(default_factory=dict)
    couplings: CouplingModel = field(default_factory=CouplingModel)

    def add_level(self, label: ENLabel) -> None:
        if label.key in self.levels:
            raise RegistryError(f"duplicate EN level (j={label.j}, k={label.k_sub})")
        self.levels[label.key] = label

    def add_mode(self, mode: ModeLabel) -> None:
        if mode.id in self.modes:
            raise RegistryError(f"duplicate mode id {mode.id!r}")
        self.modes[mode.id] = mode

    def level(self, j: int, k_sub: int = 0) -> ENLabel:
        try:
            return self.levels[(j, k_sub)]
        except KeyError:
            raise RegistryError(f"unknown EN level (j={j}, k={k_sub})") from None

    def mode(self, mode_id: str) -> ModeLabel:
        try:
            return self.modes[mode_id]
        except KeyError:
            raise RegistryError(f"unknown mode id {mode_id!r}") from None

    @classmethod
    def from_dict(cls, data: Mapping) -> "Registry":
        reg = cls()
        for idx, row in enumerate(data.get("levels", [])):
            try:
                reg.add_level(ENLabel(j=int(row["j"]), k_sub=int(row.get("k", 0)),
                                      energy=float(row["energy"])))
            except (KeyError, TypeError, ValueError) as exc:
                raise RegistryError(f"levels[{idx}]: {exc}") from None
        for idx, row in enumerate(data.get("modes", [])):
            try:
                reg.add_mode(ModeLabel(id=str(row["id"]), omega=float(row["omega"]),
                                       direction=tuple(row.get("dir", (1.0, 0.0, 0.0)))))
            except (KeyError, TypeError, ValueError) as exc:
                raise RegistryError(f"modes[{idx}]: {exc}") from None
        for idx, row in enumerate(data.get("couplings", [])):
            try:
                a = reg.level(int(row["from"][0]), int(row["from"][1]))
                b = reg.level(int(row["to"][0]), int(row["to"][1]))
                v = row["value"]
                value = complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
                reg.couplings.set_transition(a, b, value)
            except RegistryError:
                raise
            except (KeyError, TypeError, ValueError, IndexError) as exc:
                raise RegistryError(f"couplings[{idx}]: {exc}") from None
        return reg

    @classmethod
    def from_json(cls, path: str) -> "Registry":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise RegistryError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        if not isinstance(data, dict):
            raise RegistryError(f"{path}: top level must be an object")
        return cls.from_dict(data)
