"""Heisenberg semantics of gates: conjugation images of X_w and Z_w.

A GateSpec records, per wire, where the gate sends the X and Z generators
under conjugation. That fixes its action on every Pauli string: restrict
the string to the gate's wires, decompose the restriction into X/Z
generator factors in a fixed normal order (all X factors before all Z
factors, ascending wire, with the reordering phase computed exactly), map
each factor through its image, and splice the product back over the wires.

Non-Clifford gates carry all-Top images for the generators they cannot
track; any use of such an image collapses the result to the all-Top
string. The standard gate table is built once at first use and is
read-only afterwards; ``apply_gate`` is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

from .errors import IllFormedTypeError, WireError
from .pauli import ONE, PauliAtom, PauliString, Phase, commutes, embed, string_mul


@dataclass(frozen=True)
class GateSpec:
    """A gate's arity plus the image of each X_w and Z_w generator.

    Clifford gates (no Top images) must preserve the commutation
    relations of the generators, which is checked at construction.
    Derived gates remember their decomposition so the dense-matrix layer
    can rebuild their unitaries.
    """

    name: str
    arity: int
    x_images: tuple[PauliString, ...]
    z_images: tuple[PauliString, ...]
    decomposition: Optional[tuple["GateApp", ...]] = None

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise IllFormedTypeError("gate arity must be at least 1")
        if len(self.x_images) != self.arity or len(self.z_images) != self.arity:
            raise IllFormedTypeError(f"{self.name}: need one X and one Z image per wire")
        images = list(self.x_images) + list(self.z_images)
        for img in images:
            if img.arity != self.arity:
                raise IllFormedTypeError(f"{self.name}: image arity mismatch")
        # Commutation preservation, skipping pairs with a Top side.
        for i in range(self.arity):
            xi, zi = self.x_images[i], self.z_images[i]
            if not xi.is_top and not zi.is_top and commutes(xi, zi):
                raise IllFormedTypeError(
                    f"{self.name}: images of X_{i + 1} and Z_{i + 1} must anticommute"
                )
        for i, a in enumerate(images):
            for j in range(i + 1, len(images)):
                b = images[j]
                if a.is_top or b.is_top:
                    continue
                if j == i + self.arity:
                    continue  # the X_w/Z_w pair on one wire, checked above
                if not commutes(a, b):
                    raise IllFormedTypeError(
                        f"{self.name}: generator images must commute pairwise"
                    )

    @property
    def is_clifford(self) -> bool:
        return not any(img.is_top for img in self.x_images + self.z_images)


@dataclass(frozen=True)
class GateApp:
    """A gate bound to distinct wires of some register (1-based)."""

    gate: GateSpec
    wires: tuple[int, ...]

    def __post_init__(self) -> None:
        wires = tuple(self.wires)
        object.__setattr__(self, "wires", wires)
        if len(wires) != self.gate.arity:
            raise WireError(
                f"{self.gate.name} needs {self.gate.arity} wires, got {len(wires)}"
            )
        if len(set(wires)) != len(wires):
            raise WireError(f"{self.gate.name}: wires must be distinct, got {wires}")
        if any(w < 1 for w in wires):
            raise WireError(f"{self.gate.name}: wires are 1-based, got {wires}")

    def __str__(self) -> str:
        return " ".join([self.gate.name, *map(str, self.wires)])


def apply_gate(app: GateApp, p: PauliString) -> PauliString:
    """Conjugate the string ``p`` by the gate at ``app.wires``.

    Positions off the gate's wires pass through untouched. If the
    restriction needs an image the gate cannot provide (a Top image), or
    ``p`` is already all-Top, the result is the all-Top string.
    """
    n = p.arity
    for w in app.wires:
        if w > n:
            raise WireError(f"wire {w} out of range for {n} qubits")
    if p.is_top:
        return p
    gate = app.gate
    xs = [p.atoms[w - 1].x_bit for w in app.wires]
    zs = [p.atoms[w - 1].z_bit for w in app.wires]
    # Each Y in the restriction contributes one factor of i when split
    # into X*Z; the normal order itself costs nothing extra because
    # factors on distinct wires commute.
    split_phase = Phase(sum(x & z for x, z in zip(xs, zs)))
    image = PauliString.identity(gate.arity)
    for w0, x in enumerate(xs):
        if x:
            image = string_mul(image, gate.x_images[w0])
    for w0, z in enumerate(zs):
        if z:
            image = string_mul(image, gate.z_images[w0])
    if image.is_top:
        return PauliString.top(n)
    atoms = list(p.atoms)
    for w, atom in zip(app.wires, image.atoms):
        atoms[w - 1] = atom
    return PauliString(p.phase * split_phase * image.phase, tuple(atoms))


def derive_gate(name: str, arity: int, steps: Sequence[GateApp]) -> GateSpec:
    """Build a GateSpec from a decomposition over wires 1..arity."""
    steps = tuple(steps)

    def image_of(atom: PauliAtom, w: int) -> PauliString:
        cur = embed(atom, ONE, w, arity)
        for step in steps:
            cur = apply_gate(step, cur)
        return cur

    x_images = tuple(image_of(PauliAtom.X, w) for w in range(1, arity + 1))
    z_images = tuple(image_of(PauliAtom.Z, w) for w in range(1, arity + 1))
    return GateSpec(name, arity, x_images, z_images, decomposition=steps)


def _lit(text: str) -> PauliString:
    return PauliString.parse(text)


@lru_cache(maxsize=1)
def standard_gates() -> Mapping[str, GateSpec]:
    """The built-in gate table, in listing order; built once, read-only.

    H, S, CNOT and T are primitive; everything else is derived from its
    decomposition, so the derived tables are computed, not transcribed.
    """
    h = GateSpec("H", 1, (_lit("Z"),), (_lit("X"),))
    s = GateSpec("S", 1, (_lit("Y"),), (_lit("Z"),))
    cnot = GateSpec(
        "CNOT", 2, (_lit("XX"), _lit("IX")), (_lit("ZI"), _lit("ZZ"))
    )
    t = GateSpec("T", 1, (PauliString.top(1),), (_lit("Z"),))

    def app1(gate: GateSpec) -> GateApp:
        return GateApp(gate, (1,))

    sdg = derive_gate("Sdg", 1, [app1(s)] * 3)
    tdg = derive_gate("Tdg", 1, [app1(t)] * 7)
    z = derive_gate("Z", 1, [app1(s), app1(s)])
    x = derive_gate("X", 1, [app1(h), app1(z), app1(h)])
    y = derive_gate("Y", 1, [app1(s), app1(z), app1(x), app1(s)])
    cz = derive_gate(
        "CZ", 2, [GateApp(h, (2,)), GateApp(cnot, (1, 2)), GateApp(h, (2,))]
    )
    notc = derive_gate("NOTC", 2, [GateApp(cnot, (2, 1))])
    swap = derive_gate(
        "SWAP",
        2,
        [GateApp(cnot, (1, 2)), GateApp(notc, (1, 2)), GateApp(cnot, (1, 2))],
    )
    a, b, c = 1, 2, 3
    toffoli = derive_gate(
        "TOFFOLI",
        3,
        [
            GateApp(h, (c,)),
            GateApp(cnot, (b, c)),
            GateApp(tdg, (c,)),
            GateApp(cnot, (a, c)),
            GateApp(t, (c,)),
            GateApp(cnot, (b, c)),
            GateApp(tdg, (c,)),
            GateApp(cnot, (a, c)),
            GateApp(t, (b,)),
            GateApp(t, (c,)),
            GateApp(h, (c,)),
            GateApp(cnot, (a, b)),
            GateApp(t, (a,)),
            GateApp(tdg, (b,)),
            GateApp(cnot, (a, b)),
        ],
    )
    table = [h, s, sdg, t, tdg, x, y, z, cnot, notc, cz, swap, toffoli]
    return MappingProxyType({g.name: g for g in table})


def base_gates() -> dict[str, GateSpec]:
    """H, S, Sdg (as S;S;S), CNOT, T and Tdg (as seven T's)."""
    gates = standard_gates()
    return {name: gates[name] for name in ("H", "S", "Sdg", "CNOT", "T", "Tdg")}
