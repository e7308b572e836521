"""Brute-force dense-matrix verification.

Builds the 2^n unitary of a circuit and the 2^n x 2^n matrix of a Pauli
string, then checks the symbolic layer's claims directly: conjugation
images, eigenstate transport, and separability of factored qubits via
reduced-state purity. This layer only corroborates; exactness lives in
the symbolic modules, so floating point with a 1e-9 tolerance is fine at
the hard cap of 10 qubits.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .checker import Circuit
from .errors import (
    ArityError,
    EmptyEigenspaceError,
    MeasurementError,
    OracleError,
    TopOperandError,
)
from .gates import GateSpec
from .pauli import PauliAtom, PauliString
from .stabilizer import canonicalize
from .typesys import StabType

TOLERANCE = 1e-9
MAX_QUBITS = 10
DEFAULT_SEED = 7
DEFAULT_SAMPLES = 16

_ATOM_MATRICES = {
    PauliAtom.I: np.eye(2, dtype=complex),
    PauliAtom.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAtom.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliAtom.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}

_BASE_UNITARIES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.diag([1, 1j]).astype(complex),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex),
    # Control is wire 1, the most significant bit of the block.
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}


def _toffoli_direct() -> np.ndarray:
    u = np.eye(8, dtype=complex)
    u[[6, 7]] = u[[7, 6]]
    return u


def matrix_of(p: PauliString) -> np.ndarray:
    """Phase times the Kronecker product of the standard Pauli matrices."""
    if p.is_top:
        raise TopOperandError("Top strings have no matrix")
    if p.arity > MAX_QUBITS:
        raise OracleError(f"{p.arity} qubits exceeds the dense cap of {MAX_QUBITS}")
    m = np.array([[p.phase.to_complex()]])
    for atom in p.atoms:
        m = np.kron(m, _ATOM_MATRICES[atom])
    return m


@lru_cache(maxsize=None)
def gate_unitary(spec: GateSpec) -> np.ndarray:
    """The gate's dense unitary, rebuilt from its decomposition if derived.

    The Toffoli decomposition must reproduce the direct 8x8 definition to
    within tolerance; disagreement means the gate table is broken.
    """
    if spec.name in _BASE_UNITARIES:
        u = _BASE_UNITARIES[spec.name]
    elif spec.decomposition is not None:
        u = np.eye(2**spec.arity, dtype=complex)
        for app in spec.decomposition:
            u = _embed_unitary(gate_unitary(app.gate), app.wires, spec.arity) @ u
    else:
        raise OracleError(f"no unitary known for gate {spec.name}")
    if spec.name == "TOFFOLI":
        if np.max(np.abs(u - _toffoli_direct())) >= TOLERANCE:
            raise OracleError("TOFFOLI decomposition disagrees with its matrix")
    u = u.copy()
    u.setflags(write=False)
    return u


def _embed_unitary(u: np.ndarray, wires: Sequence[int], n: int) -> np.ndarray:
    """Lift a 2^g unitary acting on ``wires`` (1-based) to 2^n.

    Qubit 1 is the most significant bit, matching the Kronecker order of
    :func:`matrix_of`.
    """
    g = len(wires)
    shifts = [n - w for w in wires]
    full = np.zeros((2**n, 2**n), dtype=complex)
    for col in range(2**n):
        local_col = 0
        for s in shifts:
            local_col = (local_col << 1) | ((col >> s) & 1)
        base = col
        for s in shifts:
            base &= ~(1 << s)
        for local_row in range(2**g):
            amp = u[local_row, local_col]
            if amp == 0:
                continue
            row = base
            for pos, s in enumerate(shifts):
                if (local_row >> (g - 1 - pos)) & 1:
                    row |= 1 << s
            full[row, col] += amp
    return full


def unitary_of(circuit: Circuit) -> np.ndarray:
    """Ordered product of the embedded gate matrices."""
    if circuit.n_qubits > MAX_QUBITS:
        raise OracleError(
            f"{circuit.n_qubits} qubits exceeds the dense cap of {MAX_QUBITS}"
        )
    if circuit.has_measurement:
        raise MeasurementError("no unitary for a circuit with measurements")
    return _unitary_cached(circuit)


@lru_cache(maxsize=64)
def _unitary_cached(circuit: Circuit) -> np.ndarray:
    u = np.eye(2**circuit.n_qubits, dtype=complex)
    for app in circuit.instructions:
        u = _embed_unitary(gate_unitary(app.gate), app.wires, circuit.n_qubits) @ u
    u.setflags(write=False)
    return u


def verify_conjugation(circuit: Circuit, p: PauliString, q: PauliString) -> bool:
    """True iff U M(p) U+ equals M(q) entrywise within tolerance."""
    if p.arity != circuit.n_qubits or q.arity != circuit.n_qubits:
        raise ArityError("operands must match the circuit's register size")
    u = unitary_of(circuit)
    conjugated = u @ matrix_of(p) @ u.conj().T
    return bool(np.max(np.abs(conjugated - matrix_of(q))) < TOLERANCE)


def eigenspace_projector(s: StabType) -> np.ndarray:
    """Projector onto the joint +1 eigenspace of the generated group."""
    if s.arity > MAX_QUBITS:
        raise OracleError(f"{s.arity} qubits exceeds the dense cap of {MAX_QUBITS}")
    proj = np.eye(2**s.arity, dtype=complex)
    for g in canonicalize(s).generators():
        proj = proj @ (np.eye(2**s.arity, dtype=complex) + matrix_of(g)) / 2
    return proj


def _sample_states(
    proj: np.ndarray, count: int, rng: np.random.Generator
) -> list[np.ndarray]:
    dim = proj.shape[0]
    states = []
    for _ in range(count):
        vec = None
        for _ in range(8):
            raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            vec = proj @ raw
            norm = np.linalg.norm(vec)
            if norm > 1e-12:
                vec = vec / norm
                break
            vec = None
        if vec is None:
            raise EmptyEigenspaceError("projector annihilates every sample")
        states.append(vec)
    return states


def sample_eigenstates(
    s: StabType, count: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED
) -> list[np.ndarray]:
    """Pseudorandom unit vectors in the joint +1 eigenspace of ``s``."""
    rng = np.random.default_rng(seed)
    return _sample_states(eigenspace_projector(s), count, rng)


def reduced_purity(state: np.ndarray, k: int, n: int) -> float:
    """tr(rho^2) of the reduced single-qubit state at qubit k (1-based)."""
    tensor = state.reshape((2,) * n)
    local = np.moveaxis(tensor, k - 1, 0).reshape(2, -1)
    rho = local @ local.conj().T
    return float(np.real(np.trace(rho @ rho)))


def verify_separability(
    s: StabType,
    k: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> bool:
    """True iff every sampled joint eigenstate is pure at qubit k."""
    states = sample_eigenstates(s, samples, seed)
    return all(
        reduced_purity(state, k, s.arity) >= 1 - TOLERANCE for state in states
    )


def transport_residual(
    circuit: Circuit,
    input_type: StabType,
    transported: Sequence[PauliString],
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> float:
    """Worst-case eigenstate-transport defect.

    Samples joint +1 eigenstates of the input type, pushes them through
    the circuit's unitary, and measures how far they sit from the +1
    eigenspace of each transported generator. Zero (up to tolerance) is
    the claim the type system makes.
    """
    u = unitary_of(circuit)
    worst = 0.0
    for state in sample_eigenstates(input_type, samples, seed):
        evolved = u @ state
        for q in transported:
            if q.is_top:
                continue
            residual = float(np.linalg.norm(matrix_of(q) @ evolved - evolved))
            worst = max(worst, residual)
    return worst
