"""
transprob command line. JSON in, JSON out.

    python -m cli.main tp --input pair_ab
    python -m cli.main tp --input pair_ab --path oracle
    python -m cli.main classify --input pair.json
    python -m cli.main decompose --input '{"p": {...}, "q": {...}}'
    python -m cli.main gen --K C --m 2 --n 3 --s 0.25 --seed 42 > pair.json
    python -m cli.main gen --input construction_H
    python -m cli.main omp validate --input boolean_2x3
    python -m cli.main omp tp --input h2r_sublogic --p a --q b
    python -m cli.main omp strong --input greechie_chain
    python -m cli.main omp morphism --input morphism_boolean
    python -m cli.main noclone --m 2 --n 2 --s 0.5 --trials 10000 --seed 42
    python -m cli.main selftest

--input takes a file path, a bundled fixture name (core/data/fixtures, or
TRANSPROB_FIXTURES) or inline JSON. A `gen` report carries "p" and "q", so it
feeds tp / oracle / classify / decompose unchanged.

Exit status: 0 success; 2 bad arguments or a malformed input document;
1 a domain error from the engine, reported on stdout as
{"error": {"type": ..., "message": ...}}. Reports are rendered with sorted
keys and SIG_DIGITS significant digits, so identical requests give
byte-identical output.
"""

import argparse
import json
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if _ROOT not in sys.path:
    sys.path.insert(0, _ROOT)

import core  # noqa: E402,F401  (puts the engine directories on sys.path)
from pydantic import ValidationError  # noqa: E402

from cli.config import DEFAULT_SEED, DEFAULT_TRIALS  # noqa: E402
from cli.schemas import (  # noqa: E402
    OMP_VERBS,
    SUBCOMMANDS,
    CommandRequest,
    ConstructionDocument,
    LogicDocument,
    MorphismDocument,
    PairDocument,
    load_input,
)
from cloning import TensorModel, cloner_search  # noqa: E402
from division_rings import parse_scalar  # noqa: E402
from example_gen import build_pair, spec_from_json  # noqa: E402
from omp import OMPMorphism, check_morphism, from_json as omp_from_json  # noqa: E402
from omp import strong_report, transition_probability_lp, validate  # noqa: E402
from paths import PATHS, run as run_path  # noqa: E402
from projection_logic import projection_from_json, rank_one_projection  # noqa: E402
from report import dumps  # noqa: E402
from selftest import run_suite  # noqa: E402
from transition import case_tag, classify_pair, decompose, transition_probability  # noqa: E402


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------

def _pair(req: CommandRequest):
    doc = PairDocument.model_validate(load_input(req.input))
    p, q = projection_from_json(doc.p), projection_from_json(doc.q)
    if req.floating:
        p, q = p.to_float(), q.to_float()
    return p, q


def _logic(doc: Dict[str, Any]):
    return omp_from_json(LogicDocument.model_validate(doc).model_dump(exclude_none=True))


# ---------------------------------------------------------------------------
# Subcommands: each returns the report dict
# ---------------------------------------------------------------------------

def cmd_tp(req: CommandRequest) -> Dict[str, Any]:
    p, q = _pair(req)
    result = run_path(req.path, p, q)
    report = result.to_json()
    report["path"] = req.path
    if result.exists:
        report["case"] = case_tag(result.s)
    return report


def cmd_oracle(req: CommandRequest) -> Dict[str, Any]:
    p, q = _pair(req)
    oracle = run_path("oracle", p, q)
    algebraic = transition_probability(p, q)
    agree = oracle.exists == algebraic.exists and (
        not oracle.exists or abs(float(oracle.s) - float(algebraic.s)) <= 1e-9)
    return {"oracle": oracle, "algebraic": algebraic, "agree": agree}


def cmd_classify(req: CommandRequest) -> Dict[str, Any]:
    p, q = _pair(req)
    return classify_pair(p, q).to_json()


def cmd_decompose(req: CommandRequest) -> Dict[str, Any]:
    p, q = _pair(req)
    return decompose(p, q).to_json()


def cmd_gen(req: CommandRequest) -> Dict[str, Any]:
    if req.input is not None:
        doc = ConstructionDocument.model_validate(load_input(req.input)).to_spec_doc()
    else:
        doc = {"K": req.K, "m": req.m, "n": req.n, "s": req.s, "seed": req.seed,
               "exact": req.exact, "conjugate": req.conjugate}
    spec = spec_from_json(doc)
    p, q = build_pair(spec)
    return {
        "spec": spec,
        "p": p,
        "q": q,
        "forward": transition_probability(p, q),
        "backward": transition_probability(q, p),
    }


def cmd_omp(req: CommandRequest) -> Dict[str, Any]:
    doc = load_input(req.input)
    if req.verb == "morphism":
        mdoc = MorphismDocument.model_validate(doc)
        src = omp_from_json(mdoc.source.model_dump(exclude_none=True))
        tgt = omp_from_json(mdoc.target.model_dump(exclude_none=True))
        return check_morphism(OMPMorphism(src, tgt, dict(mdoc.mapping)),
                              mdoc.source_states, mdoc.target_states)
    logic = _logic(doc)
    if req.verb == "validate":
        return validate(logic)
    if req.verb == "strong":
        return strong_report(logic)
    report = transition_probability_lp(logic, req.p, req.q).to_json()
    report.update({"p": req.p, "q": req.q, "declared_states": logic.states is not None})
    return report


def _qubit_pair(n: int, s: float):
    """p_1 = |0><0| and p_2 = |psi><psi| in H_n(C) with |<0|psi>|^2 = s."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    e0 = [1.0] + [0.0] * (n - 1)
    psi = [s ** 0.5, (1.0 - s) ** 0.5] + [0.0] * (n - 2)
    return rank_one_projection(e0, "C"), rank_one_projection(psi, "C")


def cmd_noclone(req: CommandRequest) -> Dict[str, Any]:
    m, n = req.m or 2, req.n or 2
    s = float(parse_scalar(req.s)) if req.s is not None else 0.5
    if n < 2:
        raise ValueError("noclone needs n >= 2")
    model = TensorModel(m, n)
    p_1, p_2 = _qubit_pair(n, s)

    def progress(msg: str) -> None:
        print(f"[noclone] {msg}", file=sys.stderr, flush=True)

    trials = req.trials if req.trials is not None else DEFAULT_TRIALS
    return cloner_search(model, p_1, p_2, p_1, trials=trials, seed=req.seed,
                         refine_rounds=req.refine_rounds, progress=progress)


def cmd_selftest(req: CommandRequest) -> Dict[str, Any]:
    return run_suite(req.seed, req.trials if req.trials is not None else 200)


COMMANDS = {
    "tp": cmd_tp,
    "oracle": cmd_oracle,
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "gen": cmd_gen,
    "omp": cmd_omp,
    "noclone": cmd_noclone,
    "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="file path, fixture name, or inline JSON")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"(default: {DEFAULT_SEED})")
    common.add_argument("--float", dest="floating", action="store_true",
                        help="run exact-rational inputs in floating mode")

    ap = argparse.ArgumentParser(
        prog="transprob",
        description="Transition probabilities on Jordan projection lattices and finite orthomodular posets.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Start with: omp validate --input boolean_2x3, or tp --input pair_ab.",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True, metavar="|".join(SUBCOMMANDS))

    tp = sub.add_parser("tp", parents=[common], help="P(q|p) of a projection pair")
    tp.add_argument("--path", default="algebraic", choices=sorted(PATHS))
    sub.add_parser("oracle", parents=[common], help="spectral oracle, cross-checked with the algebraic path")
    sub.add_parser("classify", parents=[common], help="structure of the subalgebra generated by p, q")
    sub.add_parser("decompose", parents=[common], help="q = q_o + q_1 with q_o isoclinic, q_1 orthogonal to p")

    gen = sub.add_parser("gen", parents=[common], help="a projection pair with known P(q|p)")
    gen.add_argument("--K", choices=["R", "C", "H", "O"])
    gen.add_argument("--m", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--s", help='"p/q" or decimal')
    gen.add_argument("--exact", action="store_true", help="exact-rational mode (needs sqrt(s(1-s)) rational)")
    gen.add_argument("--conjugate", action="store_true", help="conjugate the pair by a unitary")

    omp = sub.add_parser("omp", parents=[common], help="finite orthomodular posets")
    omp.add_argument("verb", choices=OMP_VERBS)
    omp.add_argument("--p")
    omp.add_argument("--q")

    nc = sub.add_parser("noclone", parents=[common], help="search for a cloning unitary on H_m(C) (x) H_n(C)")
    nc.add_argument("--m", type=int, default=2)
    nc.add_argument("--n", type=int, default=2)
    nc.add_argument("--s", default="0.5", help="|<p_1|p_2>|^2 of the two pure states")
    nc.add_argument("--trials", type=int, default=None, help=f"(default: {DEFAULT_TRIALS})")
    nc.add_argument("--refine-rounds", type=int, default=200)

    st = sub.add_parser("selftest", parents=[common], help="seeded invariant suite")
    st.add_argument("--trials", type=int, default=None, help="samples per randomized stage (default: 200)")
    return ap


def _request(args: argparse.Namespace) -> CommandRequest:
    fields = {k: v for k, v in vars(args).items() if v is not None}
    return CommandRequest.model_validate(fields)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def _error(e: BaseException) -> Dict[str, Any]:
    return {"error": {"type": type(e).__name__, "message": str(e)}}


def run(req: CommandRequest) -> Tuple[int, Dict[str, Any]]:
    """Execute one validated request. Returns the exit status and the report,
    which is an {"error": ...} object for status 2 and for domain errors."""
    try:
        report = COMMANDS[req.subcommand](req)
    except (json.JSONDecodeError, ValidationError) as e:
        return 2, _error(e)
    except (ValueError, ZeroDivisionError) as e:
        return 1, _error(e)
    if req.subcommand == "selftest" and not report["ok"]:
        return 1, report
    return 0, report


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        req = _request(args)
    except ValidationError as e:
        print(dumps(_error(e)), file=sys.stderr)
        return 2
    status, report = run(req)
    if status == 2:
        print(dumps(report), file=sys.stderr)
    elif "error" in report:
        print(dumps(report))
    else:
        _emit(dumps(report), req.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
