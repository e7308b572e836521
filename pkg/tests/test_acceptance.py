"""Acceptance suite: every criterion checked at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.
"""

import contextlib
import io
import pathlib
import random
import time

from gottesman import cli, oracle
from gottesman.checker import Circuit, annotate, check, infer_tableau
from gottesman.gates import GateApp, apply_gate, standard_gates
from gottesman.pauli import ONE, PauliAtom, PauliString, embed
from gottesman.stabilizer import canonicalize, measure, measure_with_cost
from gottesman.typesys import QType, StabType, factor_separable, flatten, parse_qtype, type_equal

from helpers import random_clifford_circuit, random_stab_type

CIRCUITS = pathlib.Path(__file__).resolve().parent.parent / "circuits"
GATES = standard_gates()


def P(text):
    return PauliString.parse(text)


def report(num, name, failures):
    status = "FAIL" if failures else "PASS"
    print(f"ACCEPTANCE {num} ({name}): {status}")
    assert not failures, f"criterion {num} ({name}): " + "; ".join(failures)


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        status = cli.run(argv)
    return status, buf.getvalue()


def test_criterion_1_derived_gate_tables():
    failures = []
    start = time.perf_counter()
    status, out = run_cli(["gates"])
    elapsed = time.perf_counter() - start
    lines = set(out.strip().splitlines())
    expected = [
        "Z: X -> -X",
        "Z: Z -> Z",
        "X: X -> X",
        "X: Z -> -Z",
        "Y: X -> -X",
        "Y: Z -> -Z",
        "CZ: XI -> XZ",
        "CZ: IX -> ZX",
        "CZ: ZI -> ZI",
        "CZ: IZ -> IZ",
        "SWAP: XI -> IX",
        "SWAP: IX -> XI",
        "SWAP: ZI -> IZ",
        "SWAP: IZ -> ZI",
    ]
    if status != 0:
        failures.append(f"gates exited {status}")
    for row in expected:
        if row not in lines:
            failures.append(f"missing row {row!r}")
    swapped = apply_gate(GateApp(GATES["SWAP"], (1, 2)), P("XY"))
    if swapped != P("YX"):
        failures.append(f"SWAP on XY gave {swapped}")
    if elapsed >= 1.0:
        failures.append(f"took {elapsed:.2f}s (limit 1s)")
    report(1, "derived gate tables", failures)


def test_criterion_2_superdense():
    failures = []
    start = time.perf_counter()
    status, out = run_cli(["check", str(CIRCUITS / "superdense.qc")])
    if status != 0 or out.strip() != "Z x Z x Z x Z -> Z x Z x Z x Z":
        failures.append(f"judgment was {out.strip()!r} (exit {status})")
    trace = annotate(
        cli.parse((CIRCUITS / "superdense.qc").read_text())[0],
        parse_qtype("IIZI"),
    )
    got = [str(q) for q in trace]
    want = ["IIZI", "IIXI", "IIXX", "ZIXX", "ZIXX", "ZIXI", "ZIZI"]
    if got != want:
        failures.append(f"Z3 trace was {got}")
    status, out = run_cli(["check", str(CIRCUITS / "superdense_z3.qc"), "--trace"])
    cli_types = [ln.split()[-1] for ln in out.strip().splitlines()[:-1]]
    if cli_types != want:
        failures.append(f"--trace printed {cli_types}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"took {elapsed:.2f}s (limit 1s)")
    report(2, "superdense coding", failures)


def test_criterion_3_ghz_suite():
    failures = []
    ghz, inp = cli.parse((CIRCUITS / "ghz.qc").read_text())
    tab = infer_tableau(ghz)
    if tab.z_images != (P("XXX"), P("ZZI"), P("IZZ")):
        failures.append(f"tableau Z rows were {[str(g) for g in tab.z_images]}")

    split, _ = cli.parse((CIRCUITS / "ghz_split.qc").read_text())
    out = check(split, inp)
    if str(out) != "Z x (XX & ZZ)":
        failures.append(f"split printed {out}")
    if not type_equal(flatten(out), StabType.of("ZII", "IXX", "IZZ")):
        failures.append("split type not equal to Z x (XX & ZZ)")

    untangled, _ = cli.parse((CIRCUITS / "ghz_untangle.qc").read_text())
    out = check(untangled, inp)
    if str(out) != "Z x Z x X":
        failures.append(f"untangle printed {out}")
    report(3, "GHZ creation and disentangling", failures)


def test_criterion_4_toffoli():
    failures = []
    tof = GATES["TOFFOLI"]
    top = PauliString.top(3)
    table = {
        ("X", 1): top,
        ("X", 2): top,
        ("X", 3): P("IIX"),
        ("Z", 1): P("ZII"),
        ("Z", 2): P("IZI"),
        ("Z", 3): top,
    }
    for (kind, w), want in table.items():
        got = (tof.x_images if kind == "X" else tof.z_images)[w - 1]
        if got != want:
            failures.append(f"{kind}{w} -> {got}, wanted {want}")
    out = check(Circuit(3, (GateApp(tof, (1, 2, 3)),)), parse_qtype("Z x Z x X"))
    if str(out) != "Z x Z x X":
        failures.append(f"separable judgment printed {out}")
    report(4, "Toffoli typing", failures)


def test_criterion_5_measurement():
    failures = []
    ghz_codomain = StabType.of("XXX", "ZZI", "IZZ")
    measured = measure(ghz_codomain, 1)
    if not type_equal(measured, flatten(parse_qtype("Z x Z x Z"))):
        failures.append(f"measured cat state gave {measured}")
    rewired, inp = cli.parse((CIRCUITS / "ghz_rewire.qc").read_text())
    out = check(rewired, inp)
    if str(out) != "(XX & ZZ) x Z":
        failures.append(f"rewired cat state printed {out}")
    if not type_equal(flatten(out), StabType.of("XXI", "ZZI", "ZZZ")):
        failures.append("rewired type does not match the stabilizer rewrite")
    report(5, "measurement and stabilizer rewriting", failures)


def test_criterion_6_oracle_equivalence_1000_circuits():
    failures = []
    rng = random.Random(20250808)
    start = time.perf_counter()
    checked = 0
    for trial in range(1000):
        n = rng.randrange(1, 6)
        c = random_clifford_circuit(n, rng.randrange(1, 31), rng)
        tab = infer_tableau(c)
        for k in range(1, n + 1):
            for atom, img in (
                (PauliAtom.X, tab.x_images[k - 1]),
                (PauliAtom.Z, tab.z_images[k - 1]),
            ):
                checked += 1
                if not oracle.verify_conjugation(c, embed(atom, ONE, k, n), img):
                    failures.append(f"trial {trial}: {atom.letter}{k} image wrong")
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        failures.append(f"took {elapsed:.1f}s (limit 120s)")
    print(f"  [criterion 6] {checked} conjugations over 1000 circuits in {elapsed:.1f}s")
    report(6, "oracle equivalence on random circuits", failures)


def test_criterion_7_eigenstate_transport_and_separability():
    failures = []
    rng = random.Random(424242)

    # Eigenstate transport: 200 random (circuit, eigenstate) pairs.
    worst = 0.0
    for trial in range(200):
        n = rng.randrange(2, 6)
        circuit = random_clifford_circuit(n, rng.randrange(1, 20), rng)
        input_type = random_stab_type(n, rng)
        out = check(circuit, QType.from_stab(input_type))
        residual = oracle.transport_residual(
            circuit, input_type, flatten(out).generators, samples=1, seed=trial
        )
        worst = max(worst, residual)
        if residual >= 1e-9:
            failures.append(f"trial {trial}: transport residual {residual:.2e}")
    print(f"  [criterion 7] worst transport residual {worst:.2e}")

    # Separability: peeled qubits must be pure, and some entangled
    # non-peeled qubit must show an impure sample.
    cases = 0
    while cases < 25:
        n = rng.randrange(2, 6)
        s = random_stab_type(n, rng)
        q = factor_separable(s)
        peeled = {k for k, _, _ in q.factors}
        for k in peeled:
            if not oracle.verify_separability(s, k, samples=16, seed=cases):
                failures.append(f"case {cases}: peeled qubit {k} not pure")
        acted = {
            k
            for g in canonicalize(s).generators()
            for k in range(1, n + 1)
            if g.atoms[k - 1] is not PauliAtom.I
        }
        entangled_candidates = [k for k in acted if k not in peeled]
        if not entangled_candidates:
            continue
        cases += 1
        states = oracle.sample_eigenstates(s, count=16, seed=1000 + cases)
        witnessed = any(
            min(oracle.reduced_purity(v, k, n) for v in states) < 1 - 1e-3
            for k in entangled_candidates
        )
        if not witnessed:
            failures.append(f"case {cases}: no entanglement witness found")
    report(7, "eigenstate transport and separability", failures)


def test_criterion_8_complexity():
    failures = []

    # Tableau inference should scale linearly with gate count at fixed n.
    rng = random.Random(7)
    n = 6
    base = random_clifford_circuit(n, 1000, rng)
    big = Circuit(n, base.instructions * 10)

    def best_time(circuit):
        best = float("inf")
        for _ in range(5):
            start = time.perf_counter()
            infer_tableau(circuit)
            best = min(best, time.perf_counter() - start)
        return best

    t_small = best_time(base)
    t_big = best_time(big)
    ratio = t_big / t_small
    print(f"  [criterion 8] 10x gates -> {ratio:.2f}x time")
    if not 10 / 1.15 <= ratio <= 10 * 1.15:
        failures.append(f"time ratio {ratio:.2f} outside 10 +- 15%")

    # Measurement must stay within c * n^2 row operations, fixed c = 4.
    # Deep scrambling circuits make the generators dense, so elimination
    # does real work instead of finding ready-made pivots.
    bound_c = 4
    for size in (4, 8, 16, 32):
        worst = 0
        for _ in range(10):
            s = random_stab_type(size, rng, rank=size, depth=6 * size)
            _, ops = measure_with_cost(s, rng.randrange(1, size + 1))
            worst = max(worst, ops)
        print(f"  [criterion 8] n={size}: worst {worst} row ops (bound {bound_c * size * size})")
        if worst > bound_c * size * size:
            failures.append(f"n={size}: {worst} row ops > {bound_c}*n^2")
    report(8, "complexity bounds", failures)
