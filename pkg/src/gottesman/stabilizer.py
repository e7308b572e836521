"""Binary-symplectic machinery: canonical forms, membership, measurement.

A Top-free Pauli string of arity n is a row of 2n bits [x | z] plus an
exponent-of-i phase. Multiplying strings is GF(2) addition of rows with an
exact integer phase correction, so group questions reduce to linear
algebra: canonical forms are row-reduced echelon forms under the column
order x_1..x_n, z_1..z_n, group equality is row-by-row comparison of
canonical forms, and membership is pivot reduction.

Functions taking a generating set accept either a ``typesys.StabType`` or
a plain sequence of ``PauliString``; they never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ArityError, IllFormedTypeError, TopOperandError, WireError
from .pauli import ONE, PauliAtom, PauliString, Phase, embed


@dataclass(frozen=True)
class SymplecticRow:
    """Bit-level encoding of one Top-free Pauli string."""

    x: tuple[int, ...]
    z: tuple[int, ...]
    phase_k: int  # exponent of i, mod 4

    @classmethod
    def from_string(cls, p: PauliString) -> "SymplecticRow":
        if p.is_top:
            raise TopOperandError("Top strings have no symplectic encoding")
        return cls(p.x_bits, p.z_bits, p.phase.k)

    @classmethod
    def identity(cls, n: int) -> "SymplecticRow":
        return cls((0,) * n, (0,) * n, 0)

    def to_string(self) -> PauliString:
        atoms = tuple(PauliAtom.from_bits(x, z) for x, z in zip(self.x, self.z))
        return PauliString(Phase(self.phase_k), atoms)

    @property
    def n(self) -> int:
        return len(self.x)

    def bit(self, col: int) -> int:
        return self.x[col] if col < self.n else self.z[col - self.n]

    @property
    def is_zero(self) -> bool:
        return not any(self.x) and not any(self.z)


def row_mul(a: SymplecticRow, b: SymplecticRow) -> SymplecticRow:
    """Exact product a*b at the bit level; mirrors ``pauli.string_mul``."""
    if a.n != b.n:
        raise ArityError(f"cannot multiply rows of width {a.n} and {b.n}")
    k = a.phase_k + b.phase_k
    xs = []
    zs = []
    for x1, z1, x2, z2 in zip(a.x, a.z, b.x, b.z):
        x3, z3 = x1 ^ x2, z1 ^ z2
        k += x1 * z1 + x2 * z2 + 2 * z1 * x2 - x3 * z3
        xs.append(x3)
        zs.append(z3)
    return SymplecticRow(tuple(xs), tuple(zs), k % 4)


@dataclass(frozen=True)
class CanonicalTableau:
    """Independent generators in row-reduced echelon form."""

    arity: int
    rows: tuple[SymplecticRow, ...]
    pivots: tuple[int, ...]

    def generators(self) -> tuple[PauliString, ...]:
        return tuple(r.to_string() for r in self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)


def _coerce(source) -> tuple[tuple[PauliString, ...], int]:
    gens = tuple(getattr(source, "generators", source))
    arity = getattr(source, "arity", None)
    if arity is None:
        if not gens:
            raise ArityError("an empty generating set needs an explicit arity")
        arity = gens[0].arity
    return gens, arity


def _echelon(
    arity: int, rows: list[SymplecticRow]
) -> tuple[list[SymplecticRow], list[int], int]:
    """Full row reduction; returns (rows, pivot columns, row-op count).

    Raises IllFormedTypeError when a nontrivial product of the input rows
    is a phased identity, i.e. the generated group contains -I (or +-iI).
    The error names the combination of 1-based input rows responsible.
    """
    work = list(rows)
    origin = [frozenset([i + 1]) for i in range(len(work))]
    ops = 0
    pivots: list[int] = []
    r = 0
    for col in range(2 * arity):
        piv = None
        for j in range(r, len(work)):
            if work[j].bit(col):
                piv = j
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        origin[r], origin[piv] = origin[piv], origin[r]
        for j in range(len(work)):
            if j != r and work[j].bit(col):
                work[j] = row_mul(work[r], work[j])
                origin[j] = origin[j] ^ origin[r]
                ops += 1
        pivots.append(col)
        r += 1
    for j in range(r, len(work)):
        if work[j].phase_k != 0:
            which = ", ".join(str(i) for i in sorted(origin[j]))
            raise IllFormedTypeError(
                f"group contains {Phase(work[j].phase_k)} * identity"
                f" (product of generators {which})"
            )
    for j in range(r):
        # An element with phase +-i squares to -I, so the group is bad
        # even though its bits never cancel out.
        if work[j].phase_k % 2 == 1:
            which = ", ".join(str(i) for i in sorted(origin[j]))
            raise IllFormedTypeError(
                f"group contains -identity: element built from generators"
                f" {which} has phase {Phase(work[j].phase_k)} and squares to -I"
            )
    return work[:r], pivots, ops


def canonicalize(source) -> CanonicalTableau:
    """Row-reduce a generating set, with exact phase bookkeeping.

    Deterministic pivot order: x-bit columns 1..n, then z-bit columns.
    Dependent and identity generators drop out; a dependent generator
    whose phase disagrees with the group raises IllFormedTypeError.
    """
    gens, arity = _coerce(source)
    rows = [SymplecticRow.from_string(g) for g in gens]
    reduced, pivots, _ = _echelon(arity, rows)
    return CanonicalTableau(arity, tuple(reduced), tuple(pivots))


def member(tab: CanonicalTableau, p: PauliString) -> Optional[Phase]:
    """Membership with phase.

    If p's bit pattern lies in the row space, returns the phase q such
    that q*p is the exact group element; otherwise None.
    """
    if p.is_top:
        raise TopOperandError("Top strings are not group elements")
    if p.arity != tab.arity:
        raise ArityError(f"arity {p.arity} does not match tableau arity {tab.arity}")
    residual = SymplecticRow.from_string(PauliString(ONE, p.atoms))
    acc = SymplecticRow.identity(tab.arity)
    for row, col in zip(tab.rows, tab.pivots):
        if residual.bit(col):
            acc = row_mul(acc, row)
            residual = row_mul(row, residual)
    if not residual.is_zero:
        return None
    return Phase(acc.phase_k - p.phase.k)


def single_qubit_members(
    tab: CanonicalTableau,
) -> tuple[tuple[int, Phase, PauliAtom], ...]:
    """All (k, phase, U) with phase*U_k in the group, phases +-1 only.

    At most one basis U can appear per qubit: two different single-qubit
    members at the same position would anticommute.
    """
    found = []
    for k in range(1, tab.arity + 1):
        for atom in (PauliAtom.X, PauliAtom.Y, PauliAtom.Z):
            q = member(tab, embed(atom, ONE, k, tab.arity))
            if q is not None:
                assert q.is_real, "group elements square to I, so phases are real"
                found.append((k, q, atom))
    return tuple(found)


def _measure_rows(
    arity: int, gens: Sequence[PauliString], k: int
) -> tuple[list[PauliString], int]:
    if not 1 <= k <= arity:
        raise WireError(f"qubit {k} out of range for {arity} qubits")
    rows = [SymplecticRow.from_string(g) for g in gens]
    ops = 0
    idx = k - 1

    # Step 1: at most one generator may anticommute with Z_k, i.e. carry
    # an x-bit (X or Y) at k; fold the rest into it and drop it.
    carriers = [i for i, r in enumerate(rows) if r.x[idx]]
    if carriers:
        pivot = rows[carriers[0]]
        for i in carriers[1:]:
            rows[i] = row_mul(pivot, rows[i])
            ops += 1
        del rows[carriers[0]]
    else:
        # Step 2: otherwise at most one generator may have Z at k; fold
        # the rest into it and drop it.
        z_carriers = [i for i, r in enumerate(rows) if r.z[idx]]
        if z_carriers:
            pivot = rows[z_carriers[0]]
            for i in z_carriers[1:]:
                rows[i] = row_mul(pivot, rows[i])
                ops += 1
            del rows[z_carriers[0]]

    # Step 3: adjoin Z_k with phase +1 (outcome signs are not modeled).
    rows.append(SymplecticRow.from_string(embed(PauliAtom.Z, ONE, k, arity)))
    reduced, _, echelon_ops = _echelon(arity, rows)
    return [r.to_string() for r in reduced], ops + echelon_ops


def measure(source, k: int):
    """Z-basis measurement of qubit k as a type transformation.

    Returns the normalized post-measurement StabType; the total work is
    O(n^2) row operations.
    """
    new_type, _ = measure_with_cost(source, k)
    return new_type


def measure_with_cost(source, k: int):
    """Like :func:`measure` but also reports the row-operation count."""
    from .typesys import StabType

    gens, arity = _coerce(source)
    new_gens, ops = _measure_rows(arity, gens, k)
    return StabType(arity, tuple(new_gens)), ops
