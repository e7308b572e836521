"""Circuit-file parsing, pretty-printing, and the command-line driver.

Circuit files (``.qc``) look like:

    qubits 3
    input Z x Z x Z
    -- build the three-qubit cat state
    H 1; CNOT 1 2
    CNOT 2 3
    MEAS 1

``--`` starts a comment, instructions separate on ``;`` or newlines, and
``def NAME a b := H a; CNOT a b`` registers a derived gate over formal
wires. Wire indices are 1-based. Unicode type operators are accepted on
input; all output is ASCII.

Exit statuses: 0 success, 1 type error, 2 parse error, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import oracle
from .checker import Circuit, Measure, annotate, check, infer_tableau
from .errors import GottesmanError, ParseError
from .gates import GateApp, GateSpec, derive_gate, standard_gates
from .pauli import ONE, PauliAtom, embed
from .typesys import QType, flatten, fold_unicode, parse_qtype

EXIT_OK = 0
EXIT_TYPE_ERROR = 1
EXIT_PARSE_ERROR = 2
EXIT_ORACLE_MISMATCH = 3

_WORD = re.compile(r"\S+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_FORMALS = "abcdefghijklmnop"


def _words(text: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in _WORD.finditer(text)]


class _FileParser:
    def __init__(self, source: str):
        self.lines: list[tuple[int, str]] = []
        for ln, raw in enumerate(source.splitlines(), start=1):
            code = fold_unicode(raw.split("--", 1)[0])
            if code.strip():
                self.lines.append((ln, code))
        self.gates: dict[str, GateSpec] = dict(standard_gates())
        self.defs: dict[str, GateSpec] = {}

    def parse(self) -> tuple[Circuit, QType | None]:
        if not self.lines:
            raise ParseError("missing 'qubits' header", line=1)
        n_qubits = self._header(*self.lines[0])
        rest = self.lines[1:]
        input_type = None
        if rest and rest[0][1].split()[0] == "input":
            input_type = self._input_line(*rest[0], n_qubits)
            rest = rest[1:]
        instructions: list = []
        for ln, code in rest:
            stripped = code.strip()
            if stripped.startswith("def ") or stripped == "def":
                self._def_line(ln, code)
                continue
            for chunk_text, chunk_col in _split_chunks(code):
                instructions.append(
                    self._instruction(ln, chunk_text, chunk_col, n_qubits)
                )
        return Circuit(n_qubits, tuple(instructions)), input_type

    def _header(self, ln: int, code: str) -> int:
        words = _words(code)
        if words[0][0] != "qubits":
            raise ParseError("expected 'qubits N' header", line=ln, col=words[0][1])
        if len(words) != 2 or not words[1][0].isdigit() or int(words[1][0]) < 1:
            raise ParseError("expected 'qubits N' with N >= 1", line=ln)
        return int(words[1][0])

    def _input_line(self, ln: int, code: str, n_qubits: int) -> QType:
        text = code.strip()[len("input") :]
        offset = code.index("input") + len("input")
        try:
            q = parse_qtype(text)
        except ParseError as err:
            col = offset + err.col if err.col is not None else None
            raise ParseError(err.message, line=ln, col=col) from None
        if q.arity != n_qubits:
            raise ParseError(
                f"input type covers {q.arity} qubits, circuit has {n_qubits}",
                line=ln,
            )
        return q

    def _def_line(self, ln: int, code: str) -> None:
        if ":=" not in code:
            raise ParseError("a 'def' needs ':=' before its body", line=ln)
        head, body = code.split(":=", 1)
        head_words = _words(head)
        if len(head_words) < 3:
            raise ParseError("expected 'def NAME wires... := body'", line=ln)
        name = head_words[1][0]
        if not _NAME.match(name):
            raise ParseError(f"bad gate name {name!r}", line=ln, col=head_words[1][1])
        if name in self.gates:
            raise ParseError(f"gate {name!r} already defined", line=ln)
        formals = [w for w, _ in head_words[2:]]
        if len(set(formals)) != len(formals):
            raise ParseError("formal wires must be distinct", line=ln)
        wire_of = {f: i + 1 for i, f in enumerate(formals)}
        body_col = code.index(":=") + 3
        steps = []
        for chunk_text, chunk_col in _split_chunks(body):
            words = _words(chunk_text)
            gname, gcol = words[0]
            spec = self.gates.get(gname)
            if spec is None:
                raise ParseError(
                    f"unknown gate {gname!r}", line=ln, col=body_col + gcol - 1
                )
            args = words[1:]
            if len(args) != spec.arity:
                raise ParseError(
                    f"{gname} needs {spec.arity} wires, got {len(args)}", line=ln
                )
            wires = []
            for arg, acol in args:
                if arg not in wire_of:
                    raise ParseError(
                        f"unknown formal wire {arg!r} in def body",
                        line=ln,
                        col=body_col + acol - 1,
                    )
                wires.append(wire_of[arg])
            steps.append(GateApp(spec, tuple(wires)))
        derived = derive_gate(name, len(formals), steps)
        self.gates[name] = derived
        self.defs[name] = derived

    def _instruction(self, ln: int, text: str, col: int, n_qubits: int):
        words = _words(text)
        name, ncol = words[0]
        args = words[1:]
        wires = []
        for arg, acol in args:
            if not arg.isdigit():
                raise ParseError(
                    f"expected a wire number, got {arg!r}", line=ln, col=col + acol - 1
                )
            w = int(arg)
            if not 1 <= w <= n_qubits:
                raise ParseError(
                    f"wire {w} out of range for {n_qubits} qubits",
                    line=ln,
                    col=col + acol - 1,
                )
            wires.append(w)
        if name == "MEAS":
            if len(wires) != 1:
                raise ParseError("MEAS takes exactly one qubit", line=ln, col=col)
            return Measure(wires[0])
        spec = self.gates.get(name)
        if spec is None:
            raise ParseError(
                f"unknown gate {name!r}", line=ln, col=col + ncol - 1
            )
        if len(wires) != spec.arity:
            raise ParseError(
                f"{name} needs {spec.arity} wires, got {len(wires)}", line=ln, col=col
            )
        if len(set(wires)) != len(wires):
            raise ParseError(f"{name}: wires must be distinct", line=ln, col=col)
        return GateApp(spec, tuple(wires))


def _split_chunks(code: str) -> list[tuple[str, int]]:
    chunks = []
    start = 0
    for part in code.split(";"):
        if part.strip():
            col = start + (len(part) - len(part.lstrip())) + 1
            chunks.append((part.strip(), col))
        start += len(part) + 1
    return chunks


def parse(source: str) -> tuple[Circuit, QType | None]:
    """Parse circuit-file text into a Circuit and its optional input type."""
    return _FileParser(source).parse()


def format_source(circuit: Circuit, input_type: QType | None = None) -> str:
    """Canonical source text; reparsing yields an identical AST."""
    lines = [f"qubits {circuit.n_qubits}"]
    if input_type is not None:
        lines.append(f"input {input_type}")
    std = standard_gates()
    emitted: dict[str, GateSpec] = {}

    def emit_defs(spec: GateSpec) -> None:
        if spec.name in std or spec.name in emitted:
            return
        for app in spec.decomposition or ():
            emit_defs(app.gate)
        formals = _FORMALS[: spec.arity]
        body = "; ".join(
            " ".join([app.gate.name, *(_FORMALS[w - 1] for w in app.wires)])
            for app in spec.decomposition or ()
        )
        lines.append(f"def {spec.name} {' '.join(formals)} := {body}")
        emitted[spec.name] = spec

    for ins in circuit.instructions:
        if isinstance(ins, GateApp):
            emit_defs(ins.gate)
    for ins in circuit.instructions:
        lines.append(str(ins))
    return "\n".join(lines) + "\n"


def _default_input(n: int) -> QType:
    return QType(n, tuple((k, ONE, PauliAtom.Z) for k in range(1, n + 1)), None, ())


def _qtype_record(q: QType) -> dict:
    if q.top:
        return {"top": True, "text": str(q)}
    return {
        "top": False,
        "text": str(q),
        "factors": [
            {"qubit": k, "sign": phase.sign, "basis": atom.letter}
            for k, phase, atom in q.factors
        ],
        "remainder": {
            "support": list(q.remainder_support),
            "generators": [str(g) for g in q.remainder.generators]
            if q.remainder is not None
            else [],
        },
    }


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None


def _cmd_check(args) -> int:
    circuit, input_type = parse(_read(args.file))
    if input_type is None:
        input_type = _default_input(circuit.n_qubits)
    output = check(circuit, input_type)
    trace = None
    if args.trace:
        states = annotate(circuit, input_type)
        labels = ["init"] + [str(ins) for ins in circuit.instructions]
        trace = list(zip(labels, (str(s) for s in states)))
    if args.json:
        record = {
            "command": "check",
            "qubits": circuit.n_qubits,
            "input": str(input_type),
            "output": _qtype_record(output),
        }
        if trace is not None:
            record["trace"] = [
                {"instruction": label, "type": text} for label, text in trace
            ]
        print(json.dumps(record, indent=2))
    else:
        if trace is not None:
            width = max(len(label) for label, _ in trace) + 2
            for label, text in trace:
                print(f"{label:<{width}}{text}")
        print(f"{input_type} -> {output}")
    return EXIT_OK


def _cmd_tableau(args) -> int:
    circuit, _ = parse(_read(args.file))
    tab = infer_tableau(circuit)
    rows = []
    for prefix, images in (("X", tab.x_images), ("Z", tab.z_images)):
        for k, img in enumerate(images, start=1):
            rows.append((f"{prefix}{k}", str(img)))
    if args.json:
        print(
            json.dumps(
                {
                    "command": "tableau",
                    "qubits": circuit.n_qubits,
                    "rows": [{"generator": g, "image": i} for g, i in rows],
                },
                indent=2,
            )
        )
    else:
        for gen, img in rows:
            print(f"{gen} -> {img}")
    return EXIT_OK


def _cmd_gates(args) -> int:
    records = []
    for spec in standard_gates().values():
        rows = []
        for atom in (PauliAtom.X, PauliAtom.Z):
            images = spec.x_images if atom is PauliAtom.X else spec.z_images
            for w in range(1, spec.arity + 1):
                source = embed(atom, ONE, w, spec.arity)
                rows.append((str(source), str(images[w - 1])))
        records.append({"name": spec.name, "arity": spec.arity, "rows": rows})
    if args.json:
        print(
            json.dumps(
                {
                    "command": "gates",
                    "gates": [
                        {
                            "name": rec["name"],
                            "arity": rec["arity"],
                            "rows": [
                                {"input": src, "output": dst}
                                for src, dst in rec["rows"]
                            ],
                        }
                        for rec in records
                    ],
                },
                indent=2,
            )
        )
    else:
        for rec in records:
            for src, dst in rec["rows"]:
                print(f"{rec['name']}: {src} -> {dst}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    circuit, input_type = parse(_read(args.file))
    if circuit.has_measurement:
        raise GottesmanError("verify requires a measurement-free circuit")
    tab = infer_tableau(circuit)
    checks = 0
    failures: list[str] = []
    for prefix, atom, images in (
        ("X", PauliAtom.X, tab.x_images),
        ("Z", PauliAtom.Z, tab.z_images),
    ):
        for k, img in enumerate(images, start=1):
            if img.is_top:
                continue
            checks += 1
            source = embed(atom, ONE, k, circuit.n_qubits)
            if not oracle.verify_conjugation(circuit, source, img):
                failures.append(f"conjugation mismatch: {prefix}{k} -> {img}")
    if input_type is not None and not input_type.top:
        output = check(circuit, input_type)
        if not output.top:
            flat_in = flatten(input_type)
            flat_out = flatten(output)
            checks += 1
            residual = oracle.transport_residual(
                circuit,
                flat_in,
                flat_out.generators,
                samples=args.samples,
                seed=args.seed,
            )
            if residual >= oracle.TOLERANCE:
                failures.append(f"eigenstate transport residual {residual:.3e}")
            for k, _, _ in output.factors:
                checks += 1
                if not oracle.verify_separability(
                    flat_out, k, samples=args.samples, seed=args.seed
                ):
                    failures.append(f"separability not confirmed at qubit {k}")
    if args.json:
        print(
            json.dumps(
                {
                    "command": "verify",
                    "qubits": circuit.n_qubits,
                    "checks": checks,
                    "seed": args.seed,
                    "samples": args.samples,
                    "failures": failures,
                },
                indent=2,
            )
        )
    else:
        for failure in failures:
            print(f"FAIL {failure}")
        status = "ok" if not failures else "MISMATCH"
        print(
            f"{status}: {checks - len(failures)}/{checks} oracle checks passed"
            f" (seed={args.seed}, samples={args.samples})"
        )
    return EXIT_OK if not failures else EXIT_ORACLE_MISMATCH


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gottesman",
        description="Pauli-based type checking for Clifford circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="infer and factor a circuit's output type")
    p_check.add_argument("file")
    p_check.add_argument("--trace", action="store_true", help="print per-line types")
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(func=_cmd_check)

    p_tab = sub.add_parser("tableau", help="print generator images")
    p_tab.add_argument("file")
    p_tab.add_argument("--json", action="store_true")
    p_tab.set_defaults(func=_cmd_tableau)

    p_verify = sub.add_parser("verify", help="cross-check against the dense oracle")
    p_verify.add_argument("file")
    p_verify.add_argument("--seed", type=int, default=oracle.DEFAULT_SEED)
    p_verify.add_argument("--samples", type=int, default=oracle.DEFAULT_SAMPLES)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    p_gates = sub.add_parser("gates", help="list the known gate tables")
    p_gates.add_argument("--json", action="store_true")
    p_gates.set_defaults(func=_cmd_gates)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Run one command; returns the exit status instead of exiting."""
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except GottesmanError as err:
        print(f"type error: {err}", file=sys.stderr)
        return EXIT_TYPE_ERROR


def main() -> None:
    sys.exit(run())
