"""Shared test utilities: independent matrix oracles, brute-force group
enumeration, random circuits, and hypothesis strategies."""

import itertools
import random

import numpy as np
from hypothesis import strategies as st

from gottesman.checker import Circuit
from gottesman.gates import GateApp, apply_gate, standard_gates
from gottesman.pauli import ONE, PauliAtom, PauliString, Phase, embed, string_mul
from gottesman.typesys import StabType

# Independent single-qubit matrices; deliberately not imported from the
# package so matrix-level assertions do not share code with what they test.
MAT = {
    PauliAtom.I: np.eye(2, dtype=complex),
    PauliAtom.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAtom.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliAtom.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def string_matrix(p: PauliString) -> np.ndarray:
    m = np.array([[p.phase.to_complex()]])
    for atom in p.atoms:
        m = np.kron(m, MAT[atom])
    return m


def brute_force_group(gens) -> dict[tuple, int]:
    """Every element of the generated group as bits -> phase exponent."""
    gens = list(gens)
    if not gens:
        return {}
    n = gens[0].arity
    elements = {}
    for picks in itertools.product([0, 1], repeat=len(gens)):
        acc = PauliString.identity(n)
        for take, g in zip(picks, gens):
            if take:
                acc = string_mul(acc, g)
        elements[(acc.x_bits, acc.z_bits)] = acc.phase.k
    return elements


ALL_ATOMS = (PauliAtom.I, PauliAtom.X, PauliAtom.Y, PauliAtom.Z)

CLIFFORD_1Q = ("H", "S", "Sdg", "X", "Y", "Z")
CLIFFORD_2Q = ("CNOT", "CZ", "SWAP", "NOTC")


def random_clifford_circuit(n, n_gates, rng: random.Random) -> Circuit:
    gates = standard_gates()
    apps = []
    for _ in range(n_gates):
        if n >= 2 and rng.random() < 0.5:
            name = rng.choice(CLIFFORD_2Q)
            a, b = rng.sample(range(1, n + 1), 2)
            apps.append(GateApp(gates[name], (a, b)))
        else:
            name = rng.choice(CLIFFORD_1Q)
            apps.append(GateApp(gates[name], (rng.randrange(1, n + 1),)))
    return Circuit(n, tuple(apps))


def random_stab_type(n, rng: random.Random, rank=None, depth=20) -> StabType:
    """A well-formed StabType: Z generators pushed through a random circuit."""
    if rank is None:
        rank = rng.randrange(1, n + 1)
    qubits = rng.sample(range(1, n + 1), rank)
    circuit = random_clifford_circuit(n, depth, rng)
    gens = []
    for k in qubits:
        cur = embed(PauliAtom.Z, ONE, k, n)
        for app in circuit.instructions:
            cur = apply_gate(app, cur)
        gens.append(cur)
    return StabType(n, tuple(gens))


# hypothesis strategies

atoms = st.sampled_from(ALL_ATOMS)
phases = st.builds(Phase, st.integers(0, 3))


def strings(n: int):
    return st.builds(PauliString, phases, st.tuples(*([atoms] * n)))


string_pairs = st.integers(1, 4).flatmap(
    lambda n: st.tuples(strings(n), strings(n))
)
string_triples = st.integers(1, 4).flatmap(
    lambda n: st.tuples(strings(n), strings(n), strings(n))
)
