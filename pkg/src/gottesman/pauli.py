"""Exact Pauli-group algebra with phase tracking and a Top annihilator.

Atoms are the single-qubit operators I, X, Y, Z plus TOP, the marker for a
conjugate that has left the Pauli group. Internally an atom is a pair of
bits (x, z) with Y standing for i*X*Z exactly, so every product works out
to an integer power of i times another atom; phases are kept as exponents
of i modulo 4 and nothing ever passes through floating point.

A PauliString is a phase together with one atom per qubit. Any TOP atom
collapses the whole string to all-TOP with phase +1: a non-Pauli conjugate
is not locally a Pauli, so per-qubit claims or a phase would overstate
what is known.

Everything here is immutable; operations return fresh values and are safe
to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import ArityError, TopOperandError, WireError


@dataclass(frozen=True)
class Phase:
    """A power of i: ``Phase(k)`` denotes i**k with k kept modulo 4."""

    k: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", self.k % 4)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.k + other.k)

    def __neg__(self) -> "Phase":
        return Phase(self.k + 2)

    def times_i(self) -> "Phase":
        return Phase(self.k + 1)

    def inverse(self) -> "Phase":
        return Phase(-self.k)

    @property
    def is_real(self) -> bool:
        return self.k % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1; only defined for real phases."""
        if not self.is_real:
            raise ValueError(f"phase {self} has no real sign")
        return 1 if self.k == 0 else -1

    def to_complex(self) -> complex:
        return (1 + 0j, 1j, -1 + 0j, -1j)[self.k]

    @property
    def prefix(self) -> str:
        """The literal prefix used when printing phased strings."""
        return ("", "i", "-", "-i")[self.k]

    def __str__(self) -> str:
        return ("+1", "i", "-1", "-i")[self.k]


ONE = Phase(0)
PLUS_I = Phase(1)
MINUS_ONE = Phase(2)
MINUS_I = Phase(3)

_PREFIX_TO_K = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


class PauliAtom(Enum):
    """One tensor position: a Pauli operator or the TOP annihilator."""

    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"
    TOP = "T"

    @property
    def letter(self) -> str:
        return self.value

    @property
    def bits(self) -> tuple[int, int]:
        """The (x, z) encoding; TOP has none."""
        try:
            return _ATOM_BITS[self]
        except KeyError:
            raise TopOperandError("Top has no symplectic bits") from None

    @property
    def x_bit(self) -> int:
        return self.bits[0]

    @property
    def z_bit(self) -> int:
        return self.bits[1]

    @classmethod
    def from_bits(cls, x: int, z: int) -> "PauliAtom":
        return _BITS_ATOM[(x & 1, z & 1)]

    @classmethod
    def from_letter(cls, letter: str) -> "PauliAtom":
        try:
            return cls(letter)
        except ValueError:
            raise ValueError(f"not a Pauli atom: {letter!r}") from None


_ATOM_BITS = {
    PauliAtom.I: (0, 0),
    PauliAtom.X: (1, 0),
    PauliAtom.Y: (1, 1),
    PauliAtom.Z: (0, 1),
}
_BITS_ATOM = {bits: atom for atom, bits in _ATOM_BITS.items()}


def atom_mul(a: PauliAtom, b: PauliAtom) -> tuple[Phase, PauliAtom]:
    """Normalized single-qubit product a*b as (phase, atom).

    Top absorbs everything: any product involving TOP is (+1, TOP).
    """
    if a is PauliAtom.TOP or b is PauliAtom.TOP:
        return ONE, PauliAtom.TOP
    x1, z1 = a.bits
    x2, z2 = b.bits
    x3, z3 = x1 ^ x2, z1 ^ z2
    # Writing each atom as i^(xz) X^x Z^z, the product reorders Z^z1 past
    # X^x2 at a cost of (-1)^(z1 x2) and re-normalizes the result.
    k = x1 * z1 + x2 * z2 + 2 * z1 * x2 - x3 * z3
    return Phase(k), PauliAtom.from_bits(x3, z3)


_LITERAL = re.compile(r"([+-]?i?)([IXYZT]+)\Z")


@dataclass(frozen=True)
class PauliString:
    """A phased tensor of atoms, e.g. -i(X@Z); arity is fixed at creation."""

    phase: Phase
    atoms: tuple[PauliAtom, ...]

    def __post_init__(self) -> None:
        atoms = tuple(self.atoms)
        if not atoms:
            raise ArityError("a Pauli string needs at least one qubit")
        if any(a is PauliAtom.TOP for a in atoms):
            atoms = (PauliAtom.TOP,) * len(atoms)
            object.__setattr__(self, "phase", ONE)
        object.__setattr__(self, "atoms", atoms)

    @property
    def arity(self) -> int:
        return len(self.atoms)

    @property
    def is_top(self) -> bool:
        return self.atoms[0] is PauliAtom.TOP

    @property
    def is_identity(self) -> bool:
        return self.phase == ONE and all(a is PauliAtom.I for a in self.atoms)

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple(a.x_bit for a in self.atoms)

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple(a.z_bit for a in self.atoms)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(ONE, (PauliAtom.I,) * n)

    @classmethod
    def top(cls, n: int) -> "PauliString":
        return cls(ONE, (PauliAtom.TOP,) * n)

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        """Parse a literal like ``XX``, ``-iXZ`` or ``TT``.

        The optional prefix is one of ``+ - i -i``; atoms are one character
        per qubit from ``IXYZT``.
        """
        m = _LITERAL.match(text.strip())
        if m is None:
            raise ValueError(f"not a Pauli literal: {text!r}")
        prefix, letters = m.groups()
        atoms = tuple(PauliAtom.from_letter(c) for c in letters)
        return cls(Phase(_PREFIX_TO_K[prefix]), atoms)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return string_mul(self, other)

    def __neg__(self) -> "PauliString":
        return PauliString(-self.phase, self.atoms)

    def __str__(self) -> str:
        return self.phase.prefix + "".join(a.letter for a in self.atoms)


def string_mul(p: PauliString, q: PauliString) -> PauliString:
    """Pointwise product p*q with exact phase accumulation."""
    if p.arity != q.arity:
        raise ArityError(f"cannot multiply arity {p.arity} by arity {q.arity}")
    if p.is_top or q.is_top:
        return PauliString.top(p.arity)
    k = p.phase.k + q.phase.k
    atoms = []
    for a, b in zip(p.atoms, q.atoms):
        ph, c = atom_mul(a, b)
        k += ph.k
        atoms.append(c)
    return PauliString(Phase(k), tuple(atoms))


def tensor(p: PauliString, q: PauliString) -> PauliString:
    """Concatenate two strings, multiplying their phases."""
    return PauliString(p.phase * q.phase, p.atoms + q.atoms)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff p*q == q*p.

    Decided by the parity of positions whose atoms anticommute. Undefined
    for TOP operands, which have no commutation relations.
    """
    if p.is_top or q.is_top:
        raise TopOperandError("commutation is undefined for Top strings")
    if p.arity != q.arity:
        raise ArityError(f"cannot compare arity {p.arity} with arity {q.arity}")
    flips = 0
    for a, b in zip(p.atoms, q.atoms):
        x1, z1 = a.bits
        x2, z2 = b.bits
        flips ^= (x1 & z2) ^ (z1 & x2)
    return flips == 0


def embed(atom: PauliAtom, phase: Phase, k: int, n: int) -> PauliString:
    """The string with ``atom`` at qubit k (1-based) of n and I elsewhere."""
    if not 1 <= k <= n:
        raise WireError(f"qubit {k} out of range for {n} qubits")
    atoms = [PauliAtom.I] * n
    atoms[k - 1] = atom
    return PauliString(phase, tuple(atoms))
