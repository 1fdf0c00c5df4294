"""Click CLI entry point. One subcommand per operation; exit codes 0/1/2/3."""

from __future__ import annotations

import functools
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

import xduce.config as _cfg
from xduce import __version__
from xduce.analysis import (
    co_reachable,
    find_trailing_witness,
    find_variation_witness,
    max_ambiguity,
    max_valuedness,
    output_speed,
    shortcut_guarantee,
    trailing_profile,
)
from xduce.determinize import determinize, render_phase_rows
from xduce.errors import BudgetExceeded, MachineValidationError, XduceError
from xduce.harness.corpus import default_corpus
from xduce.harness.oracle import Domain, check_equivalence
from xduce.harness.randgen import random_nft
from xduce.machines import Machine, Nft, Tdfa, TuringMachine, read_machine, serialize_machine
from xduce.reduction import Mode, build_reduction_input, expected_output, format_reduction_word, tm_to_nft
from xduce.report import (
    AnalyzeReport,
    CorpusEntryReport,
    CorpusReport,
    CountReport,
    DeterminizeReport,
    EquivalenceReport,
    MembershipReport,
    OutputsReport,
    TmRunReport,
    TraceReport,
    TrailingProfileReport,
    WitnessReport,
    WordReport,
    counterexample_fields,
    render_block,
    trailing_fields,
    variation_fields,
)
from xduce.semantics import format_trace, nft_find_run, nft_membership, nft_outputs, tdfa_accepts, tdfa_run, tm_run
from xduce.semantics.tm import TmStatus
from xduce.words import format_word, parse_word

console = Console(soft_wrap=True)
err_console = Console(stderr=True, soft_wrap=True)
log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

ANNOTATION_SUFFIX = ".ann.json"


def _error(message: str) -> None:
    err_console.print(f"[bold red]Error:[/bold red] {escape(message)}")


def handles_errors(func: Callable[..., int | None]) -> Callable[..., None]:
    """Run a command body and turn its result or failure into the process exit code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> None:
        ctx = click.get_current_context()
        try:
            code = func(*args, **kwargs)
        except BudgetExceeded as e:
            _error(str(e))
            ctx.exit(EXIT_BUDGET)
        except (XduceError, OSError, KeyError, ValueError) as e:
            _error(str(e))
            ctx.exit(EXIT_USAGE)
        ctx.exit(code or EXIT_OK)

    return wrapper


def _emit(report, as_json: bool, text: str | None = None) -> None:
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    elif text is not None:
        click.echo(text)


def _load(path_or_name: str) -> Machine:
    return read_machine(default_corpus().resolve(path_or_name))


def _load_kind(path_or_name: str, kind: type, label: str):
    m = _load(path_or_name)
    if not isinstance(m, kind):
        raise MachineValidationError(f"{path_or_name} is not {label}")
    return m


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ANNOTATION_SUFFIX)


# ── Group ─────────────────────────────────────────────────────────────────────

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("-v", "--verbose", count=True, help="-v for INFO logging, -vv for DEBUG")
@click.version_option(__version__, prog_name="xduce")
def cli(verbose: int) -> None:
    """xduce: transducers, two-tape automata and bounded-trailing determinization."""
    level = {0: None, 1: "INFO"}.get(verbose, "DEBUG")
    cfg = _cfg.load(log_level=level)
    _cfg.set_active(cfg)
    logging.basicConfig(level=cfg.log_level, format="%(levelname)s %(name)s: %(message)s")


# ── Machines and runs ─────────────────────────────────────────────────────────

@cli.command()
@click.argument("machine")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def analyze(machine: str, as_json: bool) -> int:
    """Output speed, shortcut guarantee and co-reachable states of an NFT."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    alive = co_reachable(T)
    report = AnalyzeReport(
        verdict="ok",
        states=len(T.states),
        transitions=T.entry_count(),
        output_speed=output_speed(T),
        shortcut_guarantee=shortcut_guarantee(T),
        co_reachable=[q for q in T.states if q in alive],
    )
    if as_json:
        _emit(report, True)
        return EXIT_OK
    table = Table(title=escape(machine), show_header=False)
    table.add_row("states", str(report.states))
    table.add_row("transition options", str(report.transitions))
    table.add_row("output speed s", str(report.output_speed))
    table.add_row("shortcut guarantee g", str(report.shortcut_guarantee))
    table.add_row("co-reachable", escape(" ".join(report.co_reachable) or "(none)"))
    console.print(table)
    return EXIT_OK


@cli.command()
@click.argument("machine")
@click.argument("input_word", metavar="INPUT")
@click.argument("output_word", metavar="OUTPUT")
@click.option("--run", "show_run", is_flag=True, help="Show one accepting NFT run")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def member(machine: str, input_word: str, output_word: str, show_run: bool, as_json: bool) -> int:
    """Is (INPUT, OUTPUT) in the machine's relation?"""
    m = _load(machine)
    if isinstance(m, TuringMachine):
        raise MachineValidationError("membership needs an NFT or a 2DFA")
    a = parse_word(input_word, m.input_alphabet)
    u = parse_word(output_word, m.output_alphabet)
    run_lines = None
    if isinstance(m, Nft):
        ok = nft_membership(m, a, u)
        if ok and show_run:
            run = nft_find_run(m, m.initial, a, u, m.accepting)
            run_lines = [
                f"{s.state} -{s.symbol}/{format_word(s.output, m.output_alphabet)}-> {s.target}"
                for s in run.steps
            ]
    else:
        ok = tdfa_accepts(m, a, u)
    verdict = "accept" if ok else "reject"
    report = MembershipReport(verdict=verdict, input=input_word, output=output_word, run=run_lines)
    _emit(report, as_json, "\n".join([verdict] + (run_lines or [])))
    return EXIT_OK if ok else EXIT_NEGATIVE


@cli.command()
@click.argument("machine")
@click.argument("input_word", metavar="INPUT")
@click.option("--cap", type=int, default=None, help="Stop after this many distinct outputs")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def outputs(machine: str, input_word: str, cap: int | None, as_json: bool) -> int:
    """List the outputs an NFT accepts together with INPUT."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    a = parse_word(input_word, T.input_alphabet)
    result = nft_outputs(T, a, cap if cap is not None else _cfg.get().output_cap)
    words = [format_word(w, T.output_alphabet) for w in result.words]
    report = OutputsReport(verdict="ok", input=input_word, outputs=words, overflow=result.overflow)
    _emit(report, as_json, "\n".join(words) if words else None)
    if result.overflow and not as_json:
        err_console.print(f"[yellow]truncated at {len(words)} outputs[/yellow]")
    return EXIT_OK


@cli.command("run-tdfa")
@click.argument("machine")
@click.argument("input_word", metavar="INPUT")
@click.argument("output_word", metavar="OUTPUT")
@click.option("--trace", "show_trace", is_flag=True, help="Print every step")
@click.option("--phases", is_flag=True, help="Print the macro-states where the run changes tape")
@click.option("--annotations", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Annotation file (default: MACHINE.ann.json when present)")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def run_tdfa(machine: str, input_word: str, output_word: str, show_trace: bool, phases: bool,
             annotations: str | None, as_json: bool) -> int:
    """Run a 2DFA on (INPUT, OUTPUT)."""
    path = default_corpus().resolve(machine)
    A = read_machine(path)
    if not isinstance(A, Tdfa):
        raise MachineValidationError(f"{machine} is not a 2DFA")
    trace = tdfa_run(A, parse_word(input_word, A.input_alphabet), parse_word(output_word, A.output_alphabet))

    side = Path(annotations) if annotations else _sidecar(path)
    info = DeterminizeReport.model_validate_json(side.read_text(encoding="utf-8")) if side.exists() else None
    notes = info.annotations if info else {}
    verdict = "accept" if trace.accepted else "reject"

    if as_json:
        report = TraceReport(verdict=verdict, steps=format_trace(trace)[:-1], final_state=trace.final_state,
                             annotations=notes)
        _emit(report, True)
    elif phases:
        if info is None:
            raise MachineValidationError("--phases needs the annotation file written by determinize")
        click.echo(render_phase_rows(trace, notes, info.s, info.t), nl=False)
    elif show_trace:
        click.echo("\n".join(format_trace(trace, notes)))
    else:
        click.echo(verdict)
    return EXIT_OK if trace.accepted else EXIT_NEGATIVE


@cli.command("determinize")
@click.argument("machine")
@click.option("--trailing-bound", "-t", "bound", type=int, required=True, help="Trailing bound t")
@click.option("-o", "--output", "out", type=click.Path(dir_okay=False), default=None,
              help="Write the 2DFA here (and annotations next to it)")
@click.option("--state-budget", type=int, default=None, help="Macro-state limit")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def determinize_cmd(machine: str, bound: int, out: str | None, state_budget: int | None, as_json: bool) -> int:
    """Compile an NFT with trailing bound t into a 2DFA."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    result = determinize(T, bound, state_budget)
    report = DeterminizeReport(
        verdict="ok" if result.overflow_drops == 0 else "overflow",
        s=result.speed,
        t=bound,
        r=result.capacity,
        states=len(result.automaton.states),
        overflow_drops=result.overflow_drops,
        annotations=result.annotations,
    )
    summary = f"s={report.s} t={report.t} r={report.r} states={report.states}\noverflow_drops={report.overflow_drops}"
    text = serialize_machine(result.automaton, [f"determinized from {Path(machine).name} with t={bound}"])
    if out:
        Path(out).write_text(text, encoding="utf-8")
        _sidecar(Path(out)).write_text(report.model_dump_json(indent=2), encoding="utf-8")
        _emit(report, as_json, summary)
    elif as_json:
        _emit(report, True)
    else:
        click.echo(text, nl=False)
        err_console.print(escape(summary))
    return EXIT_OK


@cli.command("check-equiv")
@click.argument("first")
@click.argument("second")
@click.option("--max-input", type=int, required=True, help="Longest input in the domain")
@click.option("--max-output", type=int, required=True, help="Longest output in the domain")
@click.option("--jobs", type=int, default=None, help="Worker processes")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def check_equiv(first: str, second: str, max_input: int, max_output: int, jobs: int | None, as_json: bool) -> int:
    """Compare two NFTs/2DFAs on every pair of a bounded domain."""
    m1, m2 = _load(first), _load(second)
    if isinstance(m1, TuringMachine) or isinstance(m2, TuringMachine):
        raise MachineValidationError("check-equiv compares NFTs and 2DFAs")
    found = check_equivalence(m1, m2, Domain(max_input, max_output), jobs if jobs is not None else _cfg.get().jobs)
    fields = counterexample_fields(found, m1.input_alphabet, m1.output_alphabet) if found else None
    report = EquivalenceReport(
        verdict="different" if found else "equivalent",
        max_input=max_input,
        max_output=max_output,
        counterexample=fields,
    )
    text = render_block(fields) if fields else f"equivalent on |a| <= {max_input}, |u| <= {max_output}"
    _emit(report, as_json, text)
    return EXIT_NEGATIVE if found else EXIT_OK


# ── Bounded searches ──────────────────────────────────────────────────────────

def _search_options(func: Callable) -> Callable:
    func = click.option("--json", "as_json", is_flag=True, help="Emit JSON")(func)
    func = click.option("--node-budget", type=int, default=None, help="Search node limit")(func)
    func = click.option("--max-input", type=int, required=True, help="Longest input searched")(func)
    func = click.option("--bound", "-t", type=int, required=True, help="Bound t to test")(func)
    return click.argument("machine")(func)


@cli.command("find-trailing")
@_search_options
@handles_errors
def find_trailing(machine: str, bound: int, max_input: int, node_budget: int | None, as_json: bool) -> int:
    """Search for two computations whose trailing exceeds the bound."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    witness = find_trailing_witness(T, bound, max_input, node_budget)
    fields = trailing_fields(witness, T.input_alphabet, T.output_alphabet) if witness else None
    report = WitnessReport(verdict="witness" if witness else "none", kind="trailing", bound=bound,
                           max_input=max_input, witness=fields)
    text = render_block(fields) if fields else f"no trailing witness with |v| > {bound} and |a| <= {max_input}"
    _emit(report, as_json, text)
    return EXIT_NEGATIVE if witness else EXIT_OK


@cli.command("find-variation")
@_search_options
@handles_errors
def find_variation(machine: str, bound: int, max_input: int, node_budget: int | None, as_json: bool) -> int:
    """Search for two useful computations on one input whose outputs are far apart."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    witness = find_variation_witness(T, bound, max_input, node_budget)
    fields = variation_fields(witness, T.input_alphabet, T.output_alphabet) if witness else None
    report = WitnessReport(verdict="witness" if witness else "none", kind="variation", bound=bound,
                           max_input=max_input, witness=fields)
    text = render_block(fields) if fields else f"no variation witness with d > {bound} and |a| <= {max_input}"
    _emit(report, as_json, text)
    return EXIT_NEGATIVE if witness else EXIT_OK


@cli.command("trailing-profile")
@click.argument("machine")
@click.option("--max-input", type=int, required=True, help="Longest input searched")
@click.option("--node-budget", type=int, default=None, help="Search node limit")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def trailing_profile_cmd(machine: str, max_input: int, node_budget: int | None, as_json: bool) -> int:
    """Longest trailing over all inputs up to --max-input."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    profile = trailing_profile(T, max_input, node_budget)
    fields = trailing_fields(profile.witness, T.input_alphabet, T.output_alphabet) if profile.witness else None
    report = TrailingProfileReport(verdict="ok", max_input=max_input, longest=profile.longest, witness=fields)
    lines = [f"longest={profile.longest}"] + ([render_block(fields)] if fields else [])
    _emit(report, as_json, "\n".join(lines))
    return EXIT_OK


@cli.command()
@click.argument("machine")
@click.option("--max-input", type=int, required=True, help="Longest input checked")
@click.option("--cap", type=int, default=None, help="Count outputs up to this many")
@click.option("--at-most", type=int, default=None, help="Exit 1 when more outputs are found")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def valuedness(machine: str, max_input: int, cap: int | None, at_most: int | None, as_json: bool) -> int:
    """Most distinct outputs on a single input."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    result = max_valuedness(T, max_input, cap if cap is not None else _cfg.get().output_cap)
    exceeded = at_most is not None and result.k > at_most
    report = CountReport(
        verdict="exceeded" if exceeded else "ok",
        k=result.k,
        overflow=result.overflow,
        input=format_word(result.witness_input, T.input_alphabet) if result.witness_input is not None else None,
    )
    lines = [f"k={result.k}"] + ([f"input={report.input}"] if report.input is not None else [])
    _emit(report, as_json, "\n".join(lines))
    return EXIT_NEGATIVE if exceeded else EXIT_OK


@cli.command()
@click.argument("machine")
@click.option("--max-input", type=int, required=True, help="Longest input checked")
@click.option("--max-output", type=int, required=True, help="Longest output checked")
@click.option("--cap", type=int, default=None, help="Count runs up to this many")
@click.option("--at-most", type=int, default=None, help="Exit 1 when more runs are found")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def ambiguity(machine: str, max_input: int, max_output: int, cap: int | None, at_most: int | None,
              as_json: bool) -> int:
    """Most accepting runs on a single input/output pair."""
    T: Nft = _load_kind(machine, Nft, "an NFT")
    result = max_ambiguity(T, max_input, max_output, cap if cap is not None else _cfg.get().output_cap)
    exceeded = at_most is not None and result.k > at_most
    report = CountReport(
        verdict="exceeded" if exceeded else "ok",
        k=result.k,
        overflow=result.overflow,
        input=format_word(result.witness_input, T.input_alphabet) if result.witness_input is not None else None,
        output=format_word(result.witness_output, T.output_alphabet) if result.witness_output is not None else None,
    )
    lines = [f"k={result.k}"]
    if report.input is not None:
        lines += [f"input={report.input}", f"output={report.output}"]
    _emit(report, as_json, "\n".join(lines))
    return EXIT_NEGATIVE if exceeded else EXIT_OK


# ── Turing machines and the reduction ─────────────────────────────────────────

@cli.command("tm-run")
@click.argument("machine")
@click.option("--max-steps", type=int, required=True, help="Step limit")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def tm_run_cmd(machine: str, max_steps: int, as_json: bool) -> int:
    """Run a Turing machine on the empty tape."""
    M: TuringMachine = _load_kind(machine, TuringMachine, "a Turing machine")
    run = tm_run(M, max_steps)
    configs = [c.render() for c in run.configs]
    report = TmRunReport(verdict=run.status.value, status=run.status.value, steps=len(configs) - 1,
                         configurations=configs)
    _emit(report, as_json, "\n".join(configs + [f"status: {run.status.value}"]))
    return EXIT_OK if run.status is TmStatus.HALTED else EXIT_NEGATIVE


@cli.command("tm-to-nft")
@click.argument("machine")
@click.option("-o", "--output", "out", type=click.Path(dir_okay=False), default=None, help="Write the NFT here")
@handles_errors
def tm_to_nft_cmd(machine: str, out: str | None) -> int:
    """Compile a Turing machine into the copy/step reduction NFT."""
    M: TuringMachine = _load_kind(machine, TuringMachine, "a Turing machine")
    text = tm_to_nft(M).serialize()
    if out:
        Path(out).write_text(text, encoding="utf-8")
        console.print(f"[green]✓[/green] wrote {escape(out)}")
    else:
        click.echo(text, nl=False)
    return EXIT_OK


@cli.command("gen-input")
@click.argument("machine")
@click.option("--steps", "-k", type=int, required=True, help="Number of machine steps k")
@click.option("--mode", type=click.Choice([m.value for m in Mode]), required=True)
@click.option("--with-output", is_flag=True, help="Also print the matching reduction output")
@click.option("--spaced", is_flag=True, help="Print tokens separated by spaces")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def gen_input(machine: str, steps: int, mode: str, with_output: bool, spaced: bool, as_json: bool) -> int:
    """Build the reduction input enc(c0) ;; ... ;; enc(ck) ;; MODE from the machine's run."""
    M: TuringMachine = _load_kind(machine, TuringMachine, "a Turing machine")
    word = format_reduction_word(build_reduction_input(M, steps, mode), spaced)
    output = format_reduction_word(expected_output(M, steps, mode), spaced) if with_output else None
    report = WordReport(verdict="ok", word=word, output=output)
    _emit(report, as_json, "\n".join([word] + ([output] if output else [])))
    return EXIT_OK


@cli.command("random-nft")
@click.option("--seed", type=int, required=True)
@click.option("--states", "n_states", type=int, required=True)
@click.option("--symbols", "n_symbols", type=int, required=True)
@click.option("--max-out", type=int, required=True, help="Longest transition output")
@click.option("--density", type=float, required=True, help="Probability of each option, in [0, 1]")
@click.option("-o", "--output", "out", type=click.Path(dir_okay=False), default=None)
@handles_errors
def random_nft_cmd(seed: int, n_states: int, n_symbols: int, max_out: int, density: float, out: str | None) -> int:
    """Generate a seeded random NFT."""
    text = serialize_machine(random_nft(seed, n_states, n_symbols, max_out, density),
                             [f"random-nft seed={seed} states={n_states} symbols={n_symbols} "
                              f"max_out={max_out} density={density}"])
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)
    return EXIT_OK


# ── Housekeeping ──────────────────────────────────────────────────────────────

@cli.command("corpus")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handles_errors
def corpus_cmd(as_json: bool) -> int:
    """List the bundled machines."""
    entries = default_corpus().list_all()
    if as_json:
        _emit(CorpusReport(verdict="ok", entries=[
            CorpusEntryReport(name=e.name, kind=e.kind, summary=e.summary, relation=e.relation,
                              trailing_bound=e.trailing_bound)
            for e in entries
        ]), True)
        return EXIT_OK
    table = Table(title="corpus")
    table.add_column("name")
    table.add_column("kind")
    table.add_column("summary")
    for e in entries:
        table.add_row(escape(e.name), e.kind, escape(e.summary))
    console.print(table)
    return EXIT_OK


@cli.command("config")
@click.option("--save", type=click.Choice(["local", "global"]), default=None, help="Persist the effective config")
@handles_errors
def config_cmd(save: str | None) -> int:
    """Show the effective configuration."""
    cfg = _cfg.get()
    for key, value in vars(cfg).items():
        console.print(f"{key} = {escape(str(value))}")
    if save:
        path = _cfg.save_toml(cfg, save)
        console.print(f"[green]✓[/green] saved to {escape(str(path))}")
    return EXIT_OK


def dispatch(argv: Sequence[str] | None = None) -> int:
    """Run the CLI on argv and return the exit code instead of exiting."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="xduce", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(dispatch())
