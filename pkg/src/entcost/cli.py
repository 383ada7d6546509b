"""Command-line front end.

    entcost vector   --state "w(3)*ghz(3)" [--kmax K] [--format json|csv]
    entcost table1   [--n 6]
    entcost wscaling [--nmax 1024]
    entcost circuit  [--n 4 --gates 1 --trials 100 --seed 0] [--witness]

Exit codes: 0 success, 1 usage or parse error, 2 IO error, 3 a scientific
check failed (a violation was found; not a crash).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass


from . import __version__
from .bipartite import RoofBudget
from .errors import EntcostError
from .loccsim import verify_result2, witness_report
from .multipartite import MAX_VECTOR_QUBITS, entanglement_vector, w_g_values
from .reference import deviation_note, reference_rows
from .states import build, flatten, format_spec, n_qubits, parse_spec

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_CHECK = 0, 1, 2, 3
WSCALING_DEGREES = (2, 3, 10, 50)
MAX_NMAX = 4096

log = logging.getLogger("entcost")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    state_spec: str | None = None
    k_max: int | None = None
    output_format: str = "json"
    output_path: str = "-"
    seed: int = 0
    tol: float | None = None
    n: int | None = None
    nmax: int = 1024
    gates: int = 1
    trials: int = 100
    witness: bool = False
    full_precision: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            state_spec=getattr(args, "state", None),
            k_max=getattr(args, "kmax", None),
            output_format=args.format or ("csv" if args.command in ("table1", "wscaling") else "json"),
            output_path=args.out,
            seed=args.seed,
            tol=args.tol,
            n=getattr(args, "n", None),
            nmax=getattr(args, "nmax", 1024),
            gates=getattr(args, "gates", 1),
            trials=getattr(args, "trials", 100),
            witness=getattr(args, "witness", False),
            full_precision=args.full_precision,
        )

    def num(self, x: float):
        if self.full_precision:
            return float(x)
        return round(float(x), 6) + 0.0

    def fmt(self, x: float) -> str:
        if self.full_precision:
            return repr(float(x))
        return f"{round(float(x), 6) + 0.0:.6f}"


# -- output helpers ----------------------------------------------------------

def _write(cfg: RunConfig, text: str) -> None:
    if cfg.output_path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- commands ----------------------------------------------------------------

def cmd_vector(cfg: RunConfig) -> int:
    if not cfg.state_spec:
        raise UsageError("--state is required")
    spec = flatten(parse_spec(cfg.state_spec))
    n = n_qubits(spec)
    if n < 2:
        raise UsageError("the state needs at least two qubits")
    if n > MAX_VECTOR_QUBITS:
        raise UsageError(f"{n} qubits exceeds the maximization cap of {MAX_VECTOR_QUBITS}")
    if cfg.k_max is not None and not (2 <= cfg.k_max <= n):
        raise UsageError(f"--kmax must lie in 2..{n}")
    state = build(spec)
    vec = entanglement_vector(state, k_max=cfg.k_max, budget=RoofBudget(seed=cfg.seed))
    canonical = format_spec(spec)
    note = deviation_note(canonical)
    if note:
        vec.notes.append(note)
    if cfg.output_format == "csv":
        rows = [[k, cfg.fmt(vec.per_degree[k]), cfg.fmt(vec.cumulative[k]), str(vec.argmax_sequences[k])]
                for k in sorted(vec.per_degree)]
        _write(cfg, _csv_text(["k", "E_k", "E_2_to_k", "argmax_sequence"], rows))
        return EXIT_OK
    payload = {"state": canonical}
    payload.update(vec.to_dict(digits=None if cfg.full_precision else 6))
    _write(cfg, _json_text(payload))
    return EXIT_OK


def table1_rows(cfg: RunConfig) -> tuple[list[str], list[list]]:
    n = cfg.n or 6
    header = ["row", "state", "spec", "n"] + [f"E{k}" for k in range(2, n + 1)]
    header += ["total", "published", "delta", "status", "note"]
    rows = []
    for ref in reference_rows(n):
        vec = entanglement_vector(build(parse_spec(ref.spec)), budget=RoofBudget(seed=cfg.seed))
        computed = vec.as_list()
        published = ref.published_vector(n)
        delta = max(
            max(abs(c - p) for c, p in zip(computed, published)),
            abs(vec.total - ref.published_total),
        )
        status = "match" if delta <= ref.precision else "rule-discrepancy"
        pub_text = ";".join(cfg.fmt(p) for p in published + [ref.published_total])
        rows.append(
            [ref.row, ref.label, ref.spec, n]
            + [cfg.fmt(c) for c in computed]
            + [cfg.fmt(vec.total), pub_text, cfg.fmt(delta), status, ref.note]
        )
    return header, rows


def cmd_table1(cfg: RunConfig) -> int:
    header, rows = table1_rows(cfg)
    if cfg.output_format == "json":
        _write(cfg, _json_text([dict(zip(header, r)) for r in rows]))
    else:
        _write(cfg, _csv_text(header, rows))
    return EXIT_OK


def wscaling_rows(cfg: RunConfig) -> list[list]:
    if not (2 <= cfg.nmax <= MAX_NMAX):
        raise UsageError(f"--nmax must lie in 2..{MAX_NMAX}")
    rows = []
    for n in range(2, cfg.nmax + 1):
        gv = w_g_values(n)
        total = float(gv[2:].sum())
        for k in sorted({k for k in WSCALING_DEGREES if k <= n} | {n}):
            ek = (n - k + 1) * (gv[k] - gv[k - 1])
            rows.append([n, k, cfg.fmt(ek), cfg.fmt(total), cfg.fmt(math.log2(n))])
    return rows


def cmd_wscaling(cfg: RunConfig) -> int:
    rows = wscaling_rows(cfg)
    header = ["N", "k", "E_F^k", "total", "log2N"]
    if cfg.output_format == "json":
        _write(cfg, _json_text([dict(zip(header, r)) for r in rows]))
    else:
        _write(cfg, _csv_text(header, rows))
    return EXIT_OK


def cmd_circuit(cfg: RunConfig) -> int:
    n = cfg.n or 4
    if cfg.witness:
        report = witness_report(n)
        report["passed"] = report["degree"] <= report["entangling_gates"] + 1
        report["per_degree"] = {k: cfg.num(v) for k, v in report["per_degree"].items()}
        _write(cfg, _json_text({"mode": "witness", **report}))
        return EXIT_OK if report["passed"] else EXIT_CHECK
    report = verify_result2(n, cfg.gates, cfg.trials, seed=cfg.seed, tol=cfg.tol)
    payload = {"mode": "random", **report.to_dict()}
    _write(cfg, _json_text(payload))
    return EXIT_OK if report.passed else EXIT_CHECK


COMMANDS = {
    "vector": cmd_vector,
    "table1": cmd_table1,
    "wscaling": cmd_wscaling,
    "circuit": cmd_circuit,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default="-", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--full-precision", action="store_true")

    parser = _Parser(prog="entcost", description="Degree-resolved multipartite entanglement of formation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("vector", parents=[common], help="entanglement vector of a state")
    p.add_argument("--state", required=True, help='state spec, e.g. "w(3)*ghz(3)*zero(2)"')
    p.add_argument("--kmax", type=int, default=None)

    p = sub.add_parser("table1", parents=[common], help="reference table with published values")
    p.add_argument("--n", type=int, default=6)

    p = sub.add_parser("wscaling", parents=[common], help="closed-form W_N scaling data")
    p.add_argument("--nmax", type=int, default=1024)

    p = sub.add_parser("circuit", parents=[common], help="random-circuit entangling-gate check")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--gates", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--witness", action="store_true", help="run the CNOT-ladder GHZ witness instead")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, EntcostError) as exc:
        print(f"entcost {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"entcost {cfg.command}: io error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
