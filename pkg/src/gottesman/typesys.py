"""Intersection and separability types over commuting Pauli strings.

A StabType is a finite generating set of commuting, Top-free Pauli strings
of one arity whose generated group avoids -I; its meaning is the joint
eigenspace structure of that group. A QType is a StabType with any
provably separable qubits peeled off into single-qubit factors. Both are
immutable and all operations are pure functions.

The textual syntax (shared with the circuit files) uses ``&`` for
intersection, ``x`` for the separability product, ``->`` for arrows, and
Pauli literals such as ``-iXZ``; see :func:`parse_qtype`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from . import stabilizer
from .errors import ArityError, IllFormedTypeError, ParseError, TopOperandError
from .pauli import PauliAtom, PauliString, Phase, commutes, embed, string_mul


@dataclass(frozen=True)
class StabType:
    """An intersection type: commuting Pauli generators of equal arity.

    Construction validates well-formedness and raises IllFormedTypeError
    otherwise; generators are kept as given (use :func:`normalize` for
    the canonical presentation). An empty generating set is the fully
    unconstrained type over ``arity`` qubits.
    """

    arity: int
    generators: tuple[PauliString, ...] = ()

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if self.arity < 1:
            raise ArityError("a type needs at least one qubit")
        for i, g in enumerate(gens, start=1):
            if g.is_top:
                raise IllFormedTypeError(
                    f"generator {i} is Top, which has no eigenspace to intersect"
                )
            if g.arity != self.arity:
                raise ArityError(
                    f"generator {i} has arity {g.arity}, expected {self.arity}"
                )
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not commutes(gens[i], gens[j]):
                    raise IllFormedTypeError(
                        f"generators {i + 1} and {j + 1} anticommute:"
                        f" {gens[i]} vs {gens[j]}"
                    )
        # Rejects -I (and +-iI) in the generated group.
        stabilizer.canonicalize(self)

    @classmethod
    def of(cls, *literals: str) -> "StabType":
        """Build from Pauli literals, e.g. ``StabType.of("XX", "ZZ")``."""
        gens = tuple(PauliString.parse(t) for t in literals)
        if not gens:
            raise ArityError("StabType.of needs at least one literal")
        return cls(gens[0].arity, gens)

    def __str__(self) -> str:
        if not self.generators:
            return "I" * self.arity
        return " & ".join(str(g) for g in self.generators)


def normalize(s: StabType) -> StabType:
    """Canonical presentation: echelon-form generators, duplicates and
    identities removed, deterministic order."""
    tab = stabilizer.canonicalize(s)
    return StabType(s.arity, tab.generators())


def intersect(s1: StabType, s2: StabType) -> StabType:
    """The intersection type: union of generators, normalized."""
    if s1.arity != s2.arity:
        raise ArityError(f"cannot intersect arity {s1.arity} with {s2.arity}")
    return normalize(StabType(s1.arity, s1.generators + s2.generators))


def type_equal(s1: StabType, s2: StabType) -> bool:
    """True iff both sets generate the same phased group."""
    if s1.arity != s2.arity:
        raise ArityError(f"cannot compare arity {s1.arity} with {s2.arity}")
    return stabilizer.canonicalize(s1).rows == stabilizer.canonicalize(s2).rows


@dataclass(frozen=True)
class QType:
    """A StabType with separable qubits factored into single-qubit bases.

    ``factors`` holds (qubit, phase, atom) triples with phase +-1 and atom
    in {X, Y, Z}; ``remainder`` covers exactly the qubits in
    ``remainder_support``. Factors and support together partition
    1..arity. ``top`` marks the whole-register Top type, which carries no
    other structure.
    """

    arity: int
    factors: tuple[tuple[int, Phase, PauliAtom], ...] = ()
    remainder: Optional[StabType] = None
    remainder_support: tuple[int, ...] = ()
    top: bool = False

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ArityError("a type needs at least one qubit")
        factors = tuple(sorted(self.factors, key=lambda f: f[0]))
        object.__setattr__(self, "factors", factors)
        support = tuple(self.remainder_support)
        object.__setattr__(self, "remainder_support", support)
        if self.top:
            if factors or support or self.remainder is not None:
                raise IllFormedTypeError("the Top type carries no structure")
            return
        seen: set[int] = set()
        for k, phase, atom in factors:
            if not 1 <= k <= self.arity or k in seen:
                raise IllFormedTypeError(
                    f"qubit {k} repeated or out of range for {self.arity} qubits"
                )
            seen.add(k)
            if atom not in (PauliAtom.X, PauliAtom.Y, PauliAtom.Z):
                raise IllFormedTypeError(f"factor basis must be X, Y or Z, got {atom}")
            if not phase.is_real:
                raise IllFormedTypeError(f"factor phase must be +-1, got {phase}")
        for k in support:
            if not 1 <= k <= self.arity or k in seen:
                raise IllFormedTypeError(
                    f"qubit {k} repeated or out of range for {self.arity} qubits"
                )
            seen.add(k)
        if seen != set(range(1, self.arity + 1)):
            raise IllFormedTypeError("factors and remainder must cover every qubit")
        if support:
            if self.remainder is None or self.remainder.arity != len(support):
                raise ArityError("remainder arity must match its support")
        elif self.remainder is not None:
            raise ArityError("a remainder needs a support")

    @classmethod
    def top_type(cls, n: int) -> "QType":
        return cls(n, top=True)

    @classmethod
    def from_stab(cls, s: StabType) -> "QType":
        """Wrap a StabType unfactored (everything in the remainder)."""
        return cls(s.arity, (), s, tuple(range(1, s.arity + 1)))

    def __str__(self) -> str:
        if self.top:
            return "T" * self.arity
        support = self.remainder_support
        if support and support[-1] - support[0] + 1 != len(support):
            # A remainder with a gap cannot be placed by position alone;
            # the padded intersection form is unambiguous.
            flat = flatten(self)
            return str(flat) if flat.generators else "I" * self.arity
        parts: list[tuple[int, str]] = []
        for k, phase, atom in self.factors:
            parts.append((k, phase.prefix + atom.letter))
        if support:
            gens = self.remainder.generators
            if not gens:
                text = "I" * len(support)
            else:
                text = " & ".join(str(g) for g in gens)
                if len(gens) > 1 and self.factors:
                    text = f"({text})"
            parts.append((support[0], text))
        parts.sort()
        if not parts:
            return "I" * self.arity
        return " x ".join(text for _, text in parts)


def flatten(q: QType) -> StabType:
    """Re-embed factors and remainder into a single StabType."""
    if q.top:
        raise TopOperandError("the Top type has no generating set")
    gens = [embed(atom, phase, k, q.arity) for k, phase, atom in q.factors]
    if q.remainder is not None:
        for g in q.remainder.generators:
            gens.append(_pad(g, q.remainder_support, q.arity))
    return StabType(q.arity, tuple(gens))


def _pad(g: PauliString, support: Sequence[int], n: int) -> PauliString:
    atoms = [PauliAtom.I] * n
    for pos, atom in zip(support, g.atoms):
        atoms[pos - 1] = atom
    return PauliString(g.phase, tuple(atoms))


def _restrict(g: PauliString, support: Sequence[int]) -> PauliString:
    atoms = tuple(g.atoms[pos - 1] for pos in support)
    return PauliString(g.phase, atoms)


def factor_separable(s: StabType) -> QType:
    """Peel every qubit witnessed separable by a single-qubit member.

    A qubit k separates exactly when some +-U_k lies in the generated
    group; the remainder is the group re-expressed on the unpeeled qubits.
    Flattening the result generates the same group as ``s``.
    """
    tab = stabilizer.canonicalize(s)
    singles = stabilizer.single_qubit_members(tab)
    if not singles:
        return QType.from_stab(StabType(s.arity, tab.generators()))
    witnesses = {k: embed(atom, phase, k, s.arity) for k, phase, atom in singles}
    work = list(tab.generators())
    for k, witness in witnesses.items():
        work = [
            string_mul(witness, g) if g.atoms[k - 1] is not PauliAtom.I else g
            for g in work
        ]
    support = tuple(o for o in range(1, s.arity + 1) if o not in witnesses)
    factors = tuple((k, phase, atom) for k, phase, atom in singles)
    if not support:
        return QType(s.arity, factors, None, ())
    rest = [
        _restrict(g, support)
        for g in work
        if any(a is not PauliAtom.I for a in g.atoms)
    ]
    remainder = normalize(StabType(len(support), tuple(rest)))
    return QType(s.arity, factors, remainder, support)


@dataclass(frozen=True)
class ArrowJudgment:
    """A circuit judgment ``input -> output`` over one register size."""

    input: QType
    output: QType

    def __post_init__(self) -> None:
        if self.input.arity != self.output.arity:
            raise ArityError("arrow input and output must have equal arity")

    def __str__(self) -> str:
        return f"{self.input} -> {self.output}"


# --- textual syntax ---------------------------------------------------------

_UNICODE_FOLD = {"⊤": "T", "∩": "&", "×": "x", "−": "-", "⊗": ""}

_TOKEN = re.compile(r"(->|&|x|\(|\)|[+-]?i?[IXYZT]+)")


def fold_unicode(text: str) -> str:
    """Map the accepted unicode aliases onto the ASCII surface syntax."""
    for src, dst in _UNICODE_FOLD.items():
        text = text.replace(src, dst)
    return text


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", col=pos + 1)
        tokens.append((m.group(0), pos + 1))
        pos = m.end()
    return tokens


class _TypeParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(fold_unicode(text))
        self.pos = 0

    def peek(self) -> Optional[str]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def next(self) -> tuple[str, int]:
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of type expression")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, want: str) -> None:
        tok, col = self.next()
        if tok != want:
            raise ParseError(f"expected {want!r}, got {tok!r}", col=col)

    def parse(self) -> QType:
        q = self.product()
        if self.pos < len(self.tokens):
            tok, col = self.tokens[self.pos]
            raise ParseError(f"unexpected {tok!r}", col=col)
        return q

    def product(self) -> QType:
        components = [self.component()]
        while self.peek() == "x":
            self.next()
            components.append(self.component())
        return _merge(components)

    def component(self) -> QType:
        units = [self.unit()]
        while self.peek() == "&":
            self.next()
            units.append(self.unit())
        if len(units) == 1:
            return units[0]
        return _intersect_units(units)

    def unit(self) -> QType:
        tok, col = self.next()
        if tok == "(":
            q = self.product()
            self.expect(")")
            return q
        try:
            lit = PauliString.parse(tok)
        except ValueError:
            raise ParseError(f"expected a Pauli literal, got {tok!r}", col=col) from None
        return _literal_qtype(lit)


def _literal_qtype(lit: PauliString) -> QType:
    if lit.is_top:
        return QType.top_type(lit.arity)
    if (
        lit.arity == 1
        and lit.phase.is_real
        and lit.atoms[0] in (PauliAtom.X, PauliAtom.Y, PauliAtom.Z)
    ):
        return QType(1, ((1, lit.phase, lit.atoms[0]),), None, ())
    if lit.is_identity:
        return QType(lit.arity, (), StabType(lit.arity, ()), tuple(range(1, lit.arity + 1)))
    return QType(
        lit.arity, (), StabType(lit.arity, (lit,)), tuple(range(1, lit.arity + 1))
    )


def _intersect_units(units: list[QType]) -> QType:
    gens: list[PauliString] = []
    arity = units[0].arity
    for u in units:
        if u.top:
            raise ParseError("Top cannot appear inside an intersection")
        if u.arity != arity:
            raise ParseError("mismatched arities in intersection")
        gens.extend(flatten(u).generators)
    return QType.from_stab(StabType(arity, tuple(gens)))


def _merge(components: list[QType]) -> QType:
    total = sum(c.arity for c in components)
    if any(c.top for c in components):
        return QType.top_type(total)
    factors: list[tuple[int, Phase, PauliAtom]] = []
    placed_gens: list[tuple[tuple[int, ...], PauliString]] = []
    support: list[int] = []
    offset = 0
    for comp in components:
        for k, phase, atom in comp.factors:
            factors.append((k + offset, phase, atom))
        if comp.remainder is not None:
            positions = tuple(p + offset for p in comp.remainder_support)
            support.extend(positions)
            for g in comp.remainder.generators:
                placed_gens.append((positions, g))
        offset += comp.arity
    support_sorted = tuple(sorted(support))
    if not support_sorted:
        return QType(total, tuple(factors), None, ())
    index = {pos: i for i, pos in enumerate(support_sorted)}
    gens = []
    for positions, g in placed_gens:
        atoms = [PauliAtom.I] * len(support_sorted)
        for pos, atom in zip(positions, g.atoms):
            atoms[index[pos]] = atom
        gens.append(PauliString(g.phase, tuple(atoms)))
    remainder = StabType(len(support_sorted), tuple(gens))
    return QType(total, tuple(factors), remainder, support_sorted)


def parse_qtype(text: str) -> QType:
    """Parse the type syntax, e.g. ``Z x (XX & ZZ)`` or ``-Y x Z``."""
    return _TypeParser(text).parse()
