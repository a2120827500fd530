"""
Command-line entry point: ``simonlearn <subcommand> ...``.

Exit codes: 0 success, 1 no consistent parameters (or a failed check),
2 usage or data errors.
"""
import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import orjson
from loguru import logger

from src.automata.compiler import compile_formula
from src.automata.consistency import build_consistency_dfa
from src.baselines.existential import exist_learn_unary
from src.baselines.hypothesis import QfClass
from src.baselines.oracle import oracle_learn
from src.baselines.quantifier_free import qf_learn_general, qf_learn_unary
from src.config import settings
from src.corpus.adversarial import ADVERSARIAL_FORMULA, AdversarialSpec, gen_adversarial, gen_all_blocks
from src.corpus.manifest import params_text, write_corpus
from src.corpus.random_gen import gen_random_consistent, random_word
from src.errors import SimonLearnError
from src.fforest.verify import verify_tree
from src.formula.ast import FormulaAST
from src.formula.parser import parse_formula
from src.formula.word import WordStructure, normalize_alphabet
from src.harness.bench import run_indexing_bench, run_learning_bench
from src.harness.persistence import read_index, write_index
from src.learner.algorithm import QueryStats, check_consistent, learn_parameters
from src.learner.index import build_index
from src.learner.training import TrainingSet
from src.utils.logging import configure_logging

EXIT_OK, EXIT_NONE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    """Bad argument combination detected after argparse."""


# ==================== Input helpers ====================

def _split(value: Optional[str]) -> Optional[List[str]]:
    if value is None:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


def _load_formula(path: Path, alphabet: Optional[str]) -> FormulaAST:
    phi = parse_formula(Path(path).read_text(encoding="utf-8"))
    letters = _split(alphabet)
    return phi.with_alphabet(letters) if letters else phi


def _load_word(path: Path, phi: Optional[FormulaAST], alphabet: Optional[str]) -> WordStructure:
    """Read B.txt (raw symbols, trailing newline ignored)."""
    text = Path(path).read_text(encoding="utf-8").rstrip("\r\n")
    letters = _split(alphabet)
    if not letters and phi is not None and phi.alphabet:
        letters = list(phi.alphabet)
    if not letters:
        extra = phi.letters() if phi is not None else frozenset()
        letters = sorted(set(text) | extra)
    return WordStructure.from_text(text, normalize_alphabet(letters))


def _load_training(path: Path) -> TrainingSet:
    return TrainingSet.from_tsv(Path(path).read_text(encoding="utf-8"))


def _parse_params(text: str) -> Dict[str, int]:
    """``y1=25,y2=30`` or the contents of a params.txt file."""
    values: Dict[str, int] = {}
    for item in text.replace("\n", ",").split(","):
        if not item.strip():
            continue
        name, sep, position = item.partition("=")
        if not sep:
            raise UsageError(f"expected name=position, got {item.strip()!r}")
        values[name.strip()] = int(position)
    return values


def _parse_sizes(text: str) -> List[int]:
    return [int(float(item)) for item in _split(text) or []]


def _emit(record: dict, destination: Optional[Path]) -> None:
    data = orjson.dumps(record, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2)
    if destination is None:
        sys.stdout.write(data.decode() + "\n")
    else:
        Path(destination).write_bytes(data + b"\n")


# ==================== Subcommands ====================

def cmd_compile(args: argparse.Namespace) -> int:
    phi = _load_formula(args.formula, args.alphabet)
    if args.kind == "formula":
        dfa = compile_formula(phi, state_cap=settings.dfa_state_cap)
    else:
        dfa = build_consistency_dfa(phi, state_cap=settings.dfa_state_cap)
    if args.out is None:
        sys.stdout.write(dfa.to_text())
    else:
        Path(args.out).write_text(dfa.to_text(), encoding="utf-8")
        _emit({"kind": args.kind, **dfa.summary()}, args.record)
    return EXIT_OK


def cmd_index(args: argparse.Namespace) -> int:
    phi = _load_formula(args.formula, args.alphabet)
    word = _load_word(args.input, phi, args.alphabet)
    index = build_index(word, phi, verify=not args.no_verify)
    size = write_index(args.out, index)
    _emit({**index.summary(), "index_bytes": size, "path": str(args.out)}, args.record)
    return EXIT_OK


def cmd_learn(args: argparse.Namespace) -> int:
    index = read_index(args.index)
    training = _load_training(args.train)
    stats = QueryStats()
    params = learn_parameters(index, training, stats)
    names = index.alphabet.params
    if params is not None:
        sys.stdout.write(params_text(params, names))
    if args.record is not None or args.json:
        _emit({
            "consistent": params is not None,
            "params": None if params is None else dict(zip(names, params)),
            "t": len(training),
            "stats": stats.as_dict(),
        }, args.record)
    return EXIT_OK if params is not None else EXIT_NONE


def cmd_check(args: argparse.Namespace) -> int:
    index = read_index(args.index)
    training = _load_training(args.train)
    given = args.params
    if Path(given).is_file():
        given = Path(given).read_text(encoding="utf-8")
    named = _parse_params(given)
    missing = [name for name in index.alphabet.params if name not in named]
    if missing:
        raise UsageError(f"missing parameters {missing}")
    params = [named[name] for name in index.alphabet.params]
    ok = check_consistent(index, params, training)
    _emit({"consistent": ok, "params": dict(zip(index.alphabet.params, params))}, args.record)
    return EXIT_OK if ok else EXIT_NONE


def cmd_oracle(args: argparse.Namespace) -> int:
    training = _load_training(args.train)
    if args.learner == "brute":
        if args.formula is None:
            raise UsageError("the brute-force oracle needs --formula")
        phi = _load_formula(args.formula, args.alphabet)
        word = _load_word(args.input, phi, args.alphabet)
        params = oracle_learn(word, phi, training)
        if params is not None:
            sys.stdout.write(params_text(params, phi.param_vars))
        if args.record is not None:
            _emit({"learner": "brute", "consistent": params is not None,
                   "params": None if params is None else dict(zip(phi.param_vars, params))}, args.record)
        return EXIT_OK if params is not None else EXIT_NONE

    word = _load_word(args.input, None, args.alphabet)
    if args.learner == "qf":
        if training.arity == 1:
            hypothesis = qf_learn_unary(word, training, QfClass(args.ell, word.alphabet))
        else:
            hypothesis = qf_learn_general(word, training, training.arity, args.ell)
    else:
        hypothesis = exist_learn_unary(word, training)
    if hypothesis is None:
        _emit({"learner": args.learner, "consistent": False}, args.record)
        return EXIT_NONE
    _emit({**hypothesis.record(), "consistent": True}, args.record)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    out = Path(args.out)
    if args.generator == "adversarial":
        spec = AdversarialSpec(ell=args.ell, s=args.s, r=args.r, i=args.i)
        if args.all_blocks:
            for i, generated in enumerate(gen_all_blocks(args.ell, args.s, args.r)):
                write_corpus(out, generated, "adversarial", spec.model_dump(exclude={"i"}), prefix=f"i{i}_")
        else:
            write_corpus(out, gen_adversarial(spec), "adversarial", spec.model_dump())
        (out / "formula.mso").write_text(ADVERSARIAL_FORMULA, encoding="utf-8")
        return EXIT_OK

    if args.formula is None or args.n is None:
        raise UsageError("random generation needs --formula and --n")
    phi = _load_formula(args.formula, args.alphabet)
    letters = _split(args.alphabet) or list(phi.alphabet or sorted(phi.letters()))
    word = random_word(args.n, letters, args.seed)
    generated = gen_random_consistent(word, phi, args.t, args.seed)
    spec = {"n": args.n, "t": args.t, "alphabet": list(word.alphabet), "formula": phi.text()}
    write_corpus(out, generated, "random", spec, seed=args.seed, param_names=phi.param_vars)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    phi = _load_formula(args.formula, args.alphabet)
    sizes = _parse_sizes(args.sizes)
    letters = _split(args.alphabet)
    if args.suite == "indexing":
        report = run_indexing_bench(phi, sizes, letters, repeats=args.repeats, seed=args.seed,
                                    show_progress=not args.quiet)
    else:
        report = run_learning_bench(phi, sizes, letters, t=args.t, queries=args.queries, workers=args.workers,
                                    seed=args.seed, show_progress=not args.quiet)
    sys.stderr.write(report.render() + "\n")
    if args.record is None:
        sys.stdout.write(report.to_json().decode() + "\n")
    else:
        Path(args.record).write_bytes(report.to_json() + b"\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    index = read_index(args.index)
    report = verify_tree(index.tree, index.power, expected=index.power.symbols[index.word.codes].tolist())
    laws = index.mhat.check_laws()
    ok = bool(report) and not laws
    _emit({
        "ok": ok,
        "tree_errors": report.errors,
        "monoid_errors": laws,
        "leaves": report.leaves,
        "height": report.height,
    }, args.record)
    return EXIT_OK if ok else EXIT_ERROR


# ==================== Parser ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simonlearn", description="Indexed parameter learning for MSO over strings")
    parser.add_argument("--log-level", default=None, help="Override SIMONLEARN_LOG_LEVEL")
    parser.add_argument("--state-cap", type=int, default=None, help="Override SIMONLEARN_DFA_STATE_CAP")
    parser.add_argument("--monoid-cap", type=int, default=None, help="Override SIMONLEARN_MONOID_CAP")
    parser.add_argument("--power-cap", type=int, default=None, help="Override SIMONLEARN_POWER_MONOID_CAP")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="Compile a formula to a DFA table")
    p.add_argument("--formula", type=Path, required=True)
    p.add_argument("--alphabet")
    p.add_argument("--kind", choices=["consistency", "formula"], default="consistency")
    p.add_argument("--out", type=Path)
    p.add_argument("--record", type=Path)
    p.set_defaults(handler=cmd_compile, command_help=p.format_help)

    p = sub.add_parser("index", help="Build and store the index of B for a formula")
    p.add_argument("--formula", type=Path, required=True)
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--alphabet")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--record", type=Path)
    p.set_defaults(handler=cmd_index, command_help=p.format_help)

    p = sub.add_parser("learn", help="Learn consistent parameters from a stored index")
    p.add_argument("--index", type=Path, required=True)
    p.add_argument("--train", type=Path, required=True)
    p.add_argument("--json", action="store_true", help="Also print the JSON record")
    p.add_argument("--record", type=Path)
    p.set_defaults(handler=cmd_learn, command_help=p.format_help)

    p = sub.add_parser("check", help="Check parameters against a training set")
    p.add_argument("--index", type=Path, required=True)
    p.add_argument("--train", type=Path, required=True)
    p.add_argument("--params", required=True, help="y1=25,... or a params.txt file")
    p.add_argument("--record", type=Path)
    p.set_defaults(handler=cmd_check, command_help=p.format_help)

    p = sub.add_parser("oracle", help="Brute-force oracle and baseline learners")
    p.add_argument("--learner", choices=["brute", "qf", "exist"], default="brute")
    p.add_argument("--formula", type=Path)
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--train", type=Path, required=True)
    p.add_argument("--alphabet")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--record", type=Path)
    p.set_defaults(handler=cmd_oracle, command_help=p.format_help)

    p = sub.add_parser("gen", help="Generate a corpus")
    p.add_argument("generator", choices=["adversarial", "random"])
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--all-blocks", action="store_true")
    p.add_argument("--formula", type=Path)
    p.add_argument("--alphabet")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_gen, command_help=p.format_help)

    p = sub.add_parser("bench", help="Indexing and learning benchmarks")
    p.add_argument("--suite", choices=["indexing", "learning"], required=True)
    p.add_argument("--formula", type=Path, required=True)
    p.add_argument("--sizes", default="1e3,1e4")
    p.add_argument("--alphabet")
    p.add_argument("--repeats", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--queries", type=int, default=8)
    p.add_argument("--workers", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true", help="No progress bar")
    p.add_argument("--record", type=Path)
    p.set_defaults(handler=cmd_bench, command_help=p.format_help)

    p = sub.add_parser("verify", help="Re-check a stored index")
    p.add_argument("--index", type=Path, required=True)
    p.add_argument("--record", type=Path)
    p.set_defaults(handler=cmd_verify, command_help=p.format_help)
    return parser


def _apply_overrides(args: argparse.Namespace) -> None:
    if args.state_cap is not None:
        settings.dfa_state_cap = args.state_cap
    if args.monoid_cap is not None:
        settings.monoid_cap = args.monoid_cap
    if args.power_cap is not None:
        settings.power_monoid_cap = args.power_cap


def cli_run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    configure_logging(args.log_level or settings.log_level)
    _apply_overrides(args)
    try:
        return args.handler(args)
    except UsageError as exc:
        logger.error(f"{args.command}: {exc}")
        sys.stderr.write(args.command_help())
        return EXIT_ERROR
    except (SimonLearnError, ValueError, OSError) as exc:
        logger.error(f"{args.command} failed: {exc}")
        return EXIT_ERROR


def main() -> None:
    sys.exit(cli_run())
