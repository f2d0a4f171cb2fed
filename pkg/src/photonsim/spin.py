"""Two-constituent spin-1/2 functions combined with a two-permutation space
label factor: singlet and triplet constructions and their symmetry behavior.

The space factor is abstract: a 2-dimensional coefficient vector over the two
label-permuted partite products (P1 = |...m-1>|m>, P2 = |...m>|m-1>).  No
configuration-space functions are evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

__all__ = [
    "SPIN_BASIS",
    "SpinSpaceFunction",
    "singlet",
    "triplet",
    "permute_labels",
    "s_squared_matrix",
    "s_z_matrix",
    "spin_expectation",
]

# Ordered two-spin basis.
SPIN_BASIS = ("aa", "ab", "ba", "bb")

_SQRT2 = np.sqrt(2.0)

# Pauli / 2 for one spin-1/2.
_SX = np.array([[0, 0.5], [0.5, 0]], dtype=np.complex128)
_SY = np.array([[0, -0.5j], [0.5j, 0]], dtype=np.complex128)
_SZ = np.array([[0.5, 0], [0, -0.5]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)


def s_squared_matrix() -> np.ndarray:
    """Total-spin S^2 = (S1 + S2).(S1 + S2) on the two-spin product basis."""
    total = np.zeros((4, 4), dtype=np.complex128)
    for s in (_SX, _SY, _SZ):
        op = np.kron(s, _I2) + np.kron(_I2, s)
        total += op @ op
    return total


def s_z_matrix() -> np.ndarray:
    return np.kron(_SZ, _I2) + np.kron(_I2, _SZ)


@dataclass(frozen=True)
class SpinSpaceFunction:
    """A normalized spin (x) space product over the 4-dim spin basis and the
    2-dim permutation-coefficient space."""

    spin_part: np.ndarray
    space_part: np.ndarray

    def __post_init__(self):
        spin = np.asarray(self.spin_part, dtype=np.complex128)
        space = np.asarray(self.space_part, dtype=np.complex128)
        if spin.shape != (4,) or space.shape != (2,):
            raise ValueError("spin part must be 4-dim, space part 2-dim")
        if abs(np.linalg.norm(spin) - 1.0) > 1e-12 or abs(np.linalg.norm(space) - 1.0) > 1e-12:
            raise ValueError("factors must be normalized")
        spin.flags.writeable = False
        space.flags.writeable = False
        object.__setattr__(self, "spin_part", spin)
        object.__setattr__(self, "space_part", space)

    @property
    def total(self) -> np.ndarray:
        """Tensor combination over the 8-dim spin (x) space product basis."""
        return np.kron(self.spin_part, self.space_part)

    def overlap(self, other: "SpinSpaceFunction") -> complex:
        return complex(np.vdot(self.total, other.total))

    def pretty(self) -> str:
        """Compact text notation, e.g. (ab - ba)/sqrt2 x (P1 + P2)/sqrt2."""
        return f"{_pretty_factor(self.spin_part, SPIN_BASIS)} x {_pretty_factor(self.space_part, ('P1', 'P2'))}"


def _pretty_factor(coeffs: np.ndarray, names: tuple[str, ...]) -> str:
    terms = []
    for c, name in zip(coeffs, names):
        if abs(c) < 1e-12:
            continue
        sign = "-" if c.real < 0 else "+"
        terms.append((sign, name))
    if len(terms) == 1:
        sign, name = terms[0]
        return name if sign == "+" else f"-{name}"
    body = terms[0][1] if terms[0][0] == "+" else f"-{terms[0][1]}"
    for sign, name in terms[1:]:
        body += f" {sign} {name}"
    return f"({body})/sqrt{len(terms)}"


def singlet() -> SpinSpaceFunction:
    """Antisymmetric spin pair with the symmetric space combination."""
    spin = np.array([0.0, 1.0, -1.0, 0.0], dtype=np.complex128) / _SQRT2
    space = np.array([1.0, 1.0], dtype=np.complex128) / _SQRT2
    return SpinSpaceFunction(spin, space)


def triplet(ms: Literal[-1, 0, 1]) -> SpinSpaceFunction:
    """Triplet component for ms in {-1, 0, +1}; space part antisymmetric
    (the algebraic nodal plane between the permuted labels)."""
    if ms == 0:
        spin = np.array([0.0, 1.0, 1.0, 0.0], dtype=np.complex128) / _SQRT2
    elif ms == 1:
        spin = np.array([1.0, 0.0, 0.0, 0.0], dtype=np.complex128)
    elif ms == -1:
        spin = np.array([0.0, 0.0, 0.0, 1.0], dtype=np.complex128)
    else:
        raise ValueError(f"ms must be -1, 0 or +1, got {ms!r}")
    space = np.array([1.0, -1.0], dtype=np.complex128) / _SQRT2
    return SpinSpaceFunction(spin, space)


_SPIN_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)
_SPACE_SWAP = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def permute_labels(f: SpinSpaceFunction, which: Literal["spin", "space", "both"]) -> SpinSpaceFunction:
    """Exchange the m-1 and m labels in the requested factor(s)."""
    spin, space = f.spin_part, f.space_part
    if which in ("spin", "both"):
        spin = _SPIN_SWAP @ spin
    if which in ("space", "both"):
        space = _SPACE_SWAP @ space
    if which not in ("spin", "space", "both"):
        raise ValueError(f"which must be 'spin', 'space' or 'both', got {which!r}")
    return SpinSpaceFunction(spin, space)


def spin_expectation(f: SpinSpaceFunction, op: np.ndarray) -> float:
    """Expectation of a 4x4 spin operator in the spin factor."""
    val = np.vdot(f.spin_part, op @ f.spin_part)
    return float(val.real)
