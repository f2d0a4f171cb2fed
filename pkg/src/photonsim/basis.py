"""Photonic basis construction: fourfold manifolds, multipartite enumeration,
canonical ordering and deterministic serialization.

A basis element pairs a partitioned electronuclear part with per-mode photon
occupations, each mode carried either as a direct product factor or entangled
with the matter part.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .labels import ENLabel, FockLabel, ModeLabel, PartitionScheme, Registry

__all__ = [
    "PRODUCT",
    "ENTANGLED",
    "Guise",
    "BasisElement",
    "Basis",
    "SINGLE_PARTITE",
    "element_level",
    "fourfold_manifold",
    "enumerate_basis",
    "canonical_index",
]

PRODUCT = "product"
ENTANGLED = "entangled"
Guise = Literal["product", "entangled"]

_GUISE_RANK = {PRODUCT: 0, ENTANGLED: 1}

# Trivial one-constituent partition used by single-system examples.
SINGLE_PARTITE = PartitionScheme(id="1-partite", blocks=((1,),))


@dataclass(frozen=True)
class BasisElement:
    """One photonic base state.

    ``en_labels`` assigns one EN label per partition block, in block order.
    ``photon_part`` lists (occupation, guise) pairs over distinct modes.
    ``phase_dir`` is a +1/-1 incoming/outgoing tag (0 when unused); it is
    metadata for momentum bookkeeping, never dynamics.
    """

    partition: PartitionScheme
    en_labels: tuple[ENLabel, ...]
    photon_part: tuple[tuple[FockLabel, Guise], ...] = ()
    phase_dir: int = 0

    def __post_init__(self):
        object.__setattr__(self, "en_labels", tuple(self.en_labels))
        object.__setattr__(self, "photon_part", tuple(self.photon_part))
        if len(self.en_labels) != self.partition.n_blocks:
            raise ValueError(
                f"expected {self.partition.n_blocks} EN labels for partition "
                f"{self.partition.id!r}, got {len(self.en_labels)}"
            )
        ids = [f.mode.id for f, _ in self.photon_part]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate mode in photon_part")
        for _, guise in self.photon_part:
            if guise not in _GUISE_RANK:
                raise ValueError(f"unknown guise {guise!r}")
        if self.phase_dir not in (-1, 0, 1):
            raise ValueError("phase_dir must be -1, 0 or +1")

    def occupation(self, mode_id: str) -> int:
        for fock, _ in self.photon_part:
            if fock.mode.id == mode_id:
                return fock.n
        return 0

    def occupations(self) -> dict[str, int]:
        return {f.mode.id: f.n for f, _ in self.photon_part}

    def sort_key(self) -> tuple:
        photon = tuple(
            sorted((f.mode.id, -f.n, _GUISE_RANK[g]) for f, g in self.photon_part)
        )
        return (
            self.partition.id,
            tuple(l.key for l in self.en_labels),
            photon,
            self.phase_dir,
        )


def element_level(e: BasisElement) -> float:
    """Photonic energy level: sum of block EN energies plus n*omega per mode."""
    return sum(l.energy for l in e.en_labels) + sum(f.energy for f, _ in e.photon_part)


def fourfold_manifold(root: ENLabel, excited: ENLabel, m: ModeLabel) -> list[BasisElement]:
    """The four base elements generated by one EN pair and one mode:
    root with the quantum available (product), root entangled, excited with
    the colored vacuum (product), excited entangled.  Resonance is not
    required; off-resonant manifolds are legal.
    """
    if root == excited:
        raise ValueError("root and excited labels must differ")
    one = FockLabel(m, 1)
    vac = FockLabel(m, 0)
    return [
        BasisElement(SINGLE_PARTITE, (root,), ((one, PRODUCT),)),
        BasisElement(SINGLE_PARTITE, (root,), ((one, ENTANGLED),)),
        BasisElement(SINGLE_PARTITE, (excited,), ((vac, PRODUCT),)),
        BasisElement(SINGLE_PARTITE, (excited,), ((vac, ENTANGLED),)),
    ]


class Basis:
    """An ordered, duplicate-free set of basis elements with a canonical total
    order, so indices are stable across runs and construction orders."""

    def __init__(self, elements: Iterable[BasisElement], metadata: dict | None = None):
        elems = sorted(set(elements), key=BasisElement.sort_key)
        if not elems:
            raise ValueError("basis must contain at least one element")
        ms = {e.partition.m for e in elems}
        if len(ms) > 1:
            raise ValueError(f"partitions disagree on constituent count: {sorted(ms)}")
        self._elements: tuple[BasisElement, ...] = tuple(elems)
        self._index: dict[BasisElement, int] = {e: i for i, e in enumerate(self._elements)}
        self.metadata: dict = dict(metadata or {})

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, e: BasisElement) -> bool:
        return e in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Basis) and self._elements == other._elements

    def __hash__(self):
        return hash(self._elements)

    @property
    def elements(self) -> tuple[BasisElement, ...]:
        return self._elements

    def element_at(self, i: int) -> BasisElement:
        return self._elements[i]

    def index(self, e: BasisElement) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise KeyError("element not in basis") from None

    def levels(self) -> list[float]:
        return [element_level(e) for e in self._elements]

    def to_jsonable(self) -> list:
        rows = []
        for i, e in enumerate(self._elements):
            rows.append([
                i,
                e.partition.id,
                [list(l.key) for l in e.en_labels],
                sorted([[f.mode.id, f.n] for f, _ in e.photon_part]),
                sorted([[f.mode.id, g] for f, g in e.photon_part]),
                e.phase_dir,
            ])
        return rows

    def to_json(self) -> str:
        return json.dumps(
            {"metadata": dict(sorted(self.metadata.items())), "elements": self.to_jsonable()},
            sort_keys=True,
            separators=(",", ":"),
        )


def canonical_index(b: Basis, e: BasisElement) -> int:
    """Stable zero-based index of an element; inverse of ``element_at``."""
    return b.index(e)


def enumerate_basis(
    registry: Registry,
    partitions: Sequence[PartitionScheme],
    modes: Sequence[ModeLabel],
    n_max: int,
) -> Basis:
    """Enumerate every combination of (partition, per-block EN label,
    per-mode occupation 0..n_max, per-mode guise) exactly once.

    The conceptually infinite photon ladders are truncated at n_max, which is
    recorded in the basis metadata.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if not partitions:
        raise ValueError("need at least one partition scheme")
    for m in modes:
        if m.id not in registry.modes:
            raise ValueError(f"mode {m.id!r} not in registry")
    en_labels = [registry.levels[k] for k in sorted(registry.levels)]
    if not en_labels:
        raise ValueError("registry has no EN levels")

    elements = []
    for part in partitions:
        for assignment in itertools.product(en_labels, repeat=part.n_blocks):
            for occs in itertools.product(range(n_max + 1), repeat=len(modes)):
                for guises in itertools.product((PRODUCT, ENTANGLED), repeat=len(modes)):
                    photon = tuple(
                        (FockLabel(mode, n), g)
                        for mode, n, g in zip(modes, occs, guises)
                    )
                    elements.append(BasisElement(part, assignment, photon))
    meta = {
        "n_max": n_max,
        "modes": sorted(m.id for m in modes),
        "partitions": sorted(p.id for p in partitions),
    }
    return Basis(elements, metadata=meta)
