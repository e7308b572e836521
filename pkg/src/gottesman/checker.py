"""Whole-circuit type inference.

Two views of the same transport: ``infer_tableau`` gives a circuit's
conjugation action on every X_k/Z_k generator (the gate view), while
``check`` threads the generators of a state type through the instruction
sequence, folds in measurements, and factors the result for separability
(the state view). Both are pure; transport is defined on generators and
extends multiplicatively, so the arrow rules for products, phases and
sequencing hold by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import stabilizer
from .errors import ArityError, MeasurementError, TopOperandError, WireError
from .gates import GateApp, apply_gate
from .pauli import ONE, PauliAtom, PauliString, embed
from .typesys import QType, StabType, factor_separable, flatten, normalize


@dataclass(frozen=True)
class Measure:
    """Z-basis measurement of one qubit (1-based)."""

    qubit: int

    def __str__(self) -> str:
        return f"MEAS {self.qubit}"


Instruction = Union[GateApp, Measure]


@dataclass(frozen=True)
class Circuit:
    """A register size plus an ordered list of instructions."""

    n_qubits: int
    instructions: tuple[Instruction, ...] = ()

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ArityError("a circuit needs at least one qubit")
        object.__setattr__(self, "instructions", tuple(self.instructions))
        for pos, ins in enumerate(self.instructions, start=1):
            if isinstance(ins, Measure):
                if not 1 <= ins.qubit <= self.n_qubits:
                    raise WireError(
                        f"instruction {pos}: qubit {ins.qubit} out of range"
                        f" for {self.n_qubits} qubits"
                    )
            else:
                for w in ins.wires:
                    if w > self.n_qubits:
                        raise WireError(
                            f"instruction {pos}: wire {w} out of range"
                            f" for {self.n_qubits} qubits"
                        )

    @property
    def has_measurement(self) -> bool:
        return any(isinstance(ins, Measure) for ins in self.instructions)

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.n_qubits != other.n_qubits:
            raise ArityError("cannot sequence circuits of different sizes")
        return Circuit(self.n_qubits, self.instructions + other.instructions)


@dataclass(frozen=True)
class Tableau:
    """Images of every X_k and Z_k generator under a circuit."""

    n_qubits: int
    x_images: tuple[PauliString, ...]
    z_images: tuple[PauliString, ...]


def infer_tableau(circuit: Circuit) -> Tableau:
    """Conjugation images of all 2n generators; measurement-free only."""
    if circuit.has_measurement:
        raise MeasurementError("tableau inference needs a measurement-free circuit")

    def thread(atom: PauliAtom, k: int) -> PauliString:
        cur = embed(atom, ONE, k, circuit.n_qubits)
        for ins in circuit.instructions:
            cur = apply_gate(ins, cur)
        return cur

    n = circuit.n_qubits
    return Tableau(
        n,
        tuple(thread(PauliAtom.X, k) for k in range(1, n + 1)),
        tuple(thread(PauliAtom.Z, k) for k in range(1, n + 1)),
    )


def _states(circuit: Circuit, input_type: QType):
    """Yield the generator set (or None once Top) after each instruction."""
    if input_type.arity != circuit.n_qubits:
        raise ArityError(
            f"input arity {input_type.arity} does not match"
            f" {circuit.n_qubits}-qubit circuit"
        )
    cur = None if input_type.top else list(flatten(input_type).generators)
    yield cur
    for ins in circuit.instructions:
        if isinstance(ins, Measure):
            if cur is None:
                raise TopOperandError("cannot measure a Top-typed register")
            measured = stabilizer.measure(
                StabType(circuit.n_qubits, tuple(cur)), ins.qubit
            )
            cur = list(measured.generators)
        else:
            if cur is not None:
                cur = [apply_gate(ins, g) for g in cur]
                if any(g.is_top for g in cur):
                    cur = None
        yield cur


def check(circuit: Circuit, input_type: QType) -> QType:
    """Transport a state type through the circuit, factored for output."""
    cur = None
    for cur in _states(circuit, input_type):
        pass
    if cur is None:
        return QType.top_type(circuit.n_qubits)
    final = normalize(StabType(circuit.n_qubits, tuple(cur)))
    return factor_separable(final)


def annotate(circuit: Circuit, input_type: QType) -> list[QType]:
    """The intermediate type before the first and after every instruction.

    Entries are reported unfactored (the transported generators as they
    stand), which is the per-line shape a hand derivation produces;
    ``check`` applies the separability factoring to the final state.
    """
    out = []
    for state in _states(circuit, input_type):
        if state is None:
            out.append(QType.top_type(circuit.n_qubits))
        else:
            out.append(QType.from_stab(StabType(circuit.n_qubits, tuple(state))))
    return out
