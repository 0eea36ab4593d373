import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from prompt_toolkit import PromptSession
from prompt_toolkit.completion import WordCompleter
from prompt_toolkit.formatted_text import HTML
from prompt_toolkit.history import FileHistory
from prompt_toolkit.styles import Style

from src.bound_engine import BoundViolatedError, TooLargeForFallbackError, construct_bound_triple
from src.generators import GeneratorError, family_suite, generate, parse_family
from src.graph_core import EdgeListParseError, Graph, GraphError, read_edge_list
from src.helpers import colors_enabled, format_fraction, fraction_from_dict, print_h_bar
from src.oracle import OracleError, differential_exact, gamma_r_exact
from src.reports import ExactSummary, RunReport, Timer, digest_text, input_digest
from src.routes import RouteManager
from src.settings import Settings, SettingsError, load_settings
from src.structure import check_hypotheses

EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 64

logger = logging.getLogger("cli")


def _configure_logging(verbose: bool = False) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format='%(message)s')


###################
# Shared pipeline
###################

def exact_summary(g: Graph, limit: int) -> ExactSummary:
    gamma = gamma_r_exact(g, limit)
    differential = differential_exact(g, limit)
    if g.n and all(g.adjacency[v] for v in g.vertices()) and gamma.value + differential.value != g.n:
        logger.error(f"❌ gamma_R + differential = {gamma.value + differential.value}, expected {g.n}")
    return ExactSummary(gamma.value, differential.value, gamma.witness.values)


def analyze_graph(g: Graph, k: int) -> Tuple[RunReport, int]:
    timer = Timer()
    with timer.phase("hypothesis"):
        hypothesis = check_hypotheses(g, k)
    report = RunReport(input_digest(g), "analyze", hypothesis=hypothesis, timing=timer.phases)
    return report, EXIT_OK if hypothesis.passes and g.is_connected() else EXIT_HYPOTHESIS


def certify_graph(g: Graph, k: int, settings: Settings, command: str, with_oracle: bool = False) -> Tuple[RunReport, int]:
    """Hypotheses, optional exact values, then the certified bound for one connected graph"""
    timer = Timer()
    with timer.phase("hypothesis"):
        hypothesis = check_hypotheses(g, k)
    digest = input_digest(g)
    if not hypothesis.passes:
        return RunReport(digest, command, hypothesis=hypothesis, timing=timer.phases), EXIT_HYPOTHESIS

    exact = None
    if with_oracle:
        with timer.phase("exact"):
            exact = exact_summary(g, settings.oracle_limit)
    try:
        with timer.phase("bound"):
            cert = construct_bound_triple(g, k, settings)
    except BoundViolatedError as e:
        logger.error(f"❌ Counterexample: {e}")
        return RunReport(digest, command, hypothesis=hypothesis, exact=exact, timing=timer.phases,
                         counterexample=e.graph_dump), EXIT_VIOLATION

    report = RunReport(digest, command, hypothesis=hypothesis, exact=exact,
                       certificate=cert.to_dict(), timing=timer.phases)
    if exact is not None and exact.gamma_r > cert.witness_weight:
        logger.error(f"❌ Witness weight {cert.witness_weight} is below the exact optimum {exact.gamma_r}")
        return report, EXIT_VIOLATION
    return report, EXIT_OK


def certify_components(g: Graph, k: int, settings: Settings, command: str, with_oracle: bool = False) -> Tuple[RunReport, int]:
    if g.is_connected():
        return certify_graph(g, k, settings, command, with_oracle)

    logger.warning(f"⚠️ Graph has {len(g.components())} components, certifying each on its own")
    reports, codes = [], []
    for vertices in g.components():
        sub, _ = g.induced_subgraph(vertices)
        report, code = certify_graph(sub, k, settings, command, with_oracle)
        reports.append(report)
        codes.append(code)
    code = EXIT_VIOLATION if EXIT_VIOLATION in codes else max(codes)
    return RunReport(input_digest(g), command, components=tuple(reports)), code


###################
# Human output
###################

def _status(ok: bool) -> str:
    return "✅" if ok else "❌"


def print_report(report: RunReport, g: Optional[Graph] = None) -> None:
    print_h_bar()
    if g is not None:
        print(f"Graph: n = {g.n}, m = {g.m}, min degree = {g.min_degree() if g.n else 0}")
    hypothesis = report.hypothesis
    if hypothesis is not None:
        print(f"Hypotheses for k = {hypothesis.k}: {_status(hypothesis.passes)}")
        print(f"  n >= {6 * hypothesis.k + 9}: {_status(hypothesis.n_ok)}")
        print(f"  min degree >= 2: {_status(hypothesis.delta_ok)}")
        print(f"  forbidden induced cycles: {len(hypothesis.forbidden_found)}")
        for cycle in hypothesis.forbidden_found[:10]:
            print(f"    C{len(cycle)}: {' '.join(map(str, cycle))}")
    if report.exact is not None:
        print(f"gamma_R = {report.exact.gamma_r}, differential = {report.exact.differential}")
    cert = report.certificate
    if cert is not None:
        bound = format_fraction(fraction_from_dict(cert["bound"]))
        print(f"Route: {cert['route']}")
        print(f"Witness weight {cert['witness_weight']} <= bound {bound}: {_status(cert['checks']['bound_ok'])}")
        print(f"Differential >= {format_fraction(fraction_from_dict(cert['differential_lower']))}: "
              f"{_status(cert['checks']['gallai_ok'])}")
        print(f"tight = {str(cert['tight']).lower()}")
    if report.counterexample is not None:
        print("Counterexample graph:")
        print(report.counterexample, end="")
    for index, component in enumerate(report.components):
        print(f"Component {index + 1}:")
        print_report(component)


###################
# One-shot mode
###################

class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report to stdout")
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--config", help="path of the JSON config file")

    parser = _ArgumentParser(prog="romanpy", description="Roman domination bounds for graphs without short induced cycles")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", parents=[common], help="check the hypotheses for k")
    analyze.add_argument("--k", type=int)
    analyze.add_argument("file")

    exact = sub.add_parser("exact", parents=[common], help="exact gamma_R and differential")
    exact.add_argument("--limit", type=int)
    exact.add_argument("file")

    bound = sub.add_parser("bound", parents=[common], help="certified upper bound")
    bound.add_argument("--k", type=int)
    bound.add_argument("--emit-witness", action="store_true",
                       help="print each witness on its own line, one per component; --json always carries them")
    bound.add_argument("file")

    verify = sub.add_parser("verify", parents=[common], help="bound plus exact comparison")
    verify.add_argument("--k", type=int)
    verify.add_argument("--oracle", action="store_true")
    verify.add_argument("file")

    gen = sub.add_parser("gen", parents=[common], help="print a family graph as an edge list")
    gen.add_argument("family")
    gen.add_argument("params", nargs="*")
    gen.add_argument("--seed", type=int, default=0)

    batch = sub.add_parser("batch", parents=[common], help="certify the family suite")
    batch.add_argument("--k", type=int)
    batch.add_argument("--cap", type=int, required=True)
    batch.add_argument("--seed", type=int, default=0)
    batch.add_argument("--oracle", action="store_true")
    batch.add_argument("--random", type=int, default=2, help="random graphs added to the suite")
    return parser


def _emit(report: RunReport, args: argparse.Namespace, g: Optional[Graph] = None) -> None:
    if args.json:
        print(report.to_json())
    else:
        print_report(report, g)


def _cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    g = read_edge_list(args.file)
    report, code = analyze_graph(g, settings.default_k if args.k is None else args.k)
    _emit(report, args, g)
    return code


def _cmd_exact(args: argparse.Namespace, settings: Settings) -> int:
    g = read_edge_list(args.file)
    timer = Timer()
    with timer.phase("exact"):
        exact = exact_summary(g, args.limit or settings.oracle_limit)
    _emit(RunReport(input_digest(g), "exact", exact=exact, timing=timer.phases), args, g)
    return EXIT_OK


def _cmd_bound(args: argparse.Namespace, settings: Settings) -> int:
    g = read_edge_list(args.file)
    k = settings.default_k if args.k is None else args.k
    report, code = certify_components(g, k, settings, "bound")
    _emit(report, args, g)
    if args.emit_witness and not args.json:
        reports = report.components or (report,)
        for part in reports:
            if part.certificate is not None:
                print(" ".join(map(str, part.certificate["witness"])))
    return code


def _cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    g = read_edge_list(args.file)
    k = settings.default_k if args.k is None else args.k
    report, code = certify_components(g, k, settings, "verify", with_oracle=args.oracle)
    _emit(report, args, g)
    return code


def _cmd_gen(args: argparse.Namespace, settings: Settings) -> int:
    spec = parse_family(args.family, args.params, args.seed)
    print(generate(spec, settings.generator_retries).to_edge_list(), end="")
    return EXIT_OK


def _cmd_batch(args: argparse.Namespace, settings: Settings) -> int:
    k = settings.default_k if args.k is None else args.k
    suite = family_suite(k, args.cap, args.seed, random_count=args.random, retries=settings.generator_retries)
    reports, violations, unresolved, skipped = [], 0, 0, 0
    for g, spec in suite:
        if not g.is_connected() or not check_hypotheses(g, k).passes:
            skipped += 1
            continue
        try:
            report, code = certify_graph(g, k, settings, "batch", args.oracle and g.n <= settings.oracle_limit)
        except TooLargeForFallbackError as e:
            logger.error(f"❌ {spec.describe()}: {e}")
            unresolved += 1
            continue
        reports.append(report)
        if code == EXIT_VIOLATION:
            violations += 1
        if not args.json and report.certificate is not None:
            cert = report.certificate
            print(f"{spec.describe():<48} n={g.n:<3} weight {cert['witness_weight']:<3} "
                  f"{cert['route']:<18} {_status(code == EXIT_OK)}")

    digest = digest_text("".join(g.to_edge_list() for g, _ in suite))
    report = RunReport(digest, "batch", components=tuple(reports))
    if args.json:
        print(report.to_json())
    logger.info(f"\n{len(reports)} certified, {skipped} skipped, {violations} violation(s), {unresolved} unresolved")
    if violations:
        return EXIT_VIOLATION
    return EXIT_USAGE if unresolved else EXIT_OK


_HANDLERS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "analyze": _cmd_analyze,
    "exact": _cmd_exact,
    "bound": _cmd_bound,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "batch": _cmd_batch,
}


def run(argv: Sequence[str]) -> int:
    """Run one subcommand and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    _configure_logging(args.verbose)
    try:
        settings = load_settings(args.config)
        return _HANDLERS[args.command](args, settings)
    except FileNotFoundError as e:
        logger.error(f"File not found: {e.filename or e}")
    except EdgeListParseError as e:
        logger.error(f"Parse error on line {e.line}: {e}")
    except (GraphError, GeneratorError, SettingsError) as e:
        logger.error(f"Error: {e}")
    except (OracleError, TooLargeForFallbackError) as e:
        logger.error(f"Too large for the exact search: {e}")
    return EXIT_USAGE


###################
# Interactive mode
###################

@dataclass
class Command:
    """Dataclass to represent a CLI command"""
    name: str
    description: str
    tips: List[str]
    handler: Callable
    aliases: List[str] = field(default_factory=list)


class RomanPyCLI:
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or load_settings()
        self.graph: Optional[Graph] = None
        self.graph_name: Optional[str] = None

        # Create config directory if it doesn't exist
        self.config_dir = Path.home() / '.romanpy'
        self.config_dir.mkdir(exist_ok=True)

        self._initialize_commands()
        self._setup_prompt_toolkit()

    def _initialize_commands(self) -> None:
        """Initialize all CLI commands"""
        self.commands: Dict[str, Command] = {}

        self._register_command(
            Command(
                name="help",
                description="Displays a list of all available commands, or help for a specific command.",
                tips=["Try 'help' to see available commands.",
                      "Try 'help {command}' to get more information about a specific command."],
                handler=self.help,
                aliases=['h', '?']
            )
        )

        ################## GRAPHS ##################
        self._register_command(
            Command(
                name="load-graph",
                description="Loads a graph from an edge-list file.",
                tips=["Format: load-graph {file}",
                      "The first line holds 'n m', then one 'u v' pair per line"],
                handler=self.load_graph,
                aliases=['load']
            )
        )

        self._register_command(
            Command(
                name="gen-graph",
                description="Generates a graph from one of the families.",
                tips=["Format: gen-graph {family} {params}",
                      "Families: cycle, tailed, f02, f22, f3, brs, random",
                      "Example: gen-graph brs 5:1 5 5"],
                handler=self.gen_graph,
                aliases=['gen']
            )
        )

        self._register_command(
            Command(
                name="show-graph",
                description="Prints the loaded graph as an edge list.",
                tips=["Use 'load-graph' or 'gen-graph' first"],
                handler=self.show_graph,
                aliases=['show']
            )
        )

        ################## ANALYSIS ##################
        self._register_command(
            Command(
                name="analyze",
                description="Checks the forbidden-cycle hypotheses.",
                tips=["Format: analyze {k}", "k defaults to default_k from config/general.json"],
                handler=self.analyze,
                aliases=['check']
            )
        )

        self._register_command(
            Command(
                name="exact",
                description="Computes gamma_R and the differential exactly.",
                tips=[f"Only for graphs up to oracle_limit vertices ({self.settings.oracle_limit})"],
                handler=self.exact,
                aliases=['solve']
            )
        )

        self._register_command(
            Command(
                name="bound",
                description="Builds a certified Roman dominating function within the bound.",
                tips=["Format: bound {k}"],
                handler=self.bound,
                aliases=['certify']
            )
        )

        self._register_command(
            Command(
                name="verify",
                description="Certifies the bound and compares with the exact values.",
                tips=["Format: verify {k}"],
                handler=self.verify,
                aliases=[]
            )
        )

        self._register_command(
            Command(
                name="list-routes",
                description="Lists the configured construction routes.",
                tips=["Routes are configured in config/general.json"],
                handler=self.list_routes,
                aliases=['routes']
            )
        )

        ################## MISC ##################
        self._register_command(
            Command(
                name="exit",
                description="Exits the RomanPy CLI.",
                tips=["You can also use Ctrl+D to exit"],
                handler=self.exit,
                aliases=['quit', 'q']
            )
        )

    def _setup_prompt_toolkit(self) -> None:
        """Setup prompt toolkit components"""
        self.style = Style.from_dict({
            'prompt': 'ansicyan bold',
            'command': 'ansigreen',
            'error': 'ansired bold',
            'success': 'ansigreen bold',
            'warning': 'ansiyellow',
        } if colors_enabled() else {})

        history_file = self.config_dir / 'history.txt'

        self.completer = WordCompleter(
            list(self.commands.keys()),
            ignore_case=True,
            sentence=True
        )

        self.session = PromptSession(
            completer=self.completer,
            style=self.style,
            history=FileHistory(str(history_file))
        )

    ###################
    # Helper Functions
    ###################
    def _register_command(self, command: Command) -> None:
        """Register a command and its aliases"""
        self.commands[command.name] = command
        for alias in command.aliases:
            self.commands[alias] = command

    def _get_prompt_message(self) -> HTML:
        status = f"({self.graph_name})" if self.graph else "(no graph)"
        return HTML(f'<prompt>RomanPy-CLI</prompt> {status} > ')

    def _handle_command(self, input_string: str) -> None:
        """Parse and handle a command input"""
        input_list = input_string.split()
        command_string = input_list[0].lower()

        try:
            command = self.commands.get(command_string)
            if command:
                command.handler(input_list)
            else:
                self._handle_unknown_command(command_string)
        except Exception as e:
            logger.error(f"Error executing command: {e}")

    def _handle_unknown_command(self, command: str) -> None:
        """Handle unknown command with suggestions"""
        logger.warning(f"Unknown command: '{command}'")

        suggestions = self._get_command_suggestions(command)
        if suggestions:
            logger.info("Did you mean one of these?")
            for suggestion in suggestions:
                logger.info(f"  - {suggestion}")
        logger.info("Use 'help' to see all available commands.")

    def _get_command_suggestions(self, command: str, max_suggestions: int = 3) -> List[str]:
        """Get command suggestions based on string similarity"""
        from difflib import get_close_matches
        return get_close_matches(command, self.commands.keys(), n=max_suggestions, cutoff=0.6)

    def _print_welcome_message(self) -> None:
        print_h_bar()
        logger.info("👋 Welcome to the RomanPy CLI!")
        logger.info("Type 'help' for a list of commands.")
        print_h_bar()

    def _show_command_help(self, command_name: str) -> None:
        """Show help for a specific command"""
        command = self.commands.get(command_name)
        if not command:
            self._handle_unknown_command(command_name)
            return

        logger.info(f"\nHelp for '{command.name}':")
        logger.info(f"Description: {command.description}")

        if command.aliases:
            logger.info(f"Aliases: {', '.join(command.aliases)}")

        if command.tips:
            logger.info("\nTips:")
            for tip in command.tips:
                logger.info(f"  - {tip}")

    def _show_general_help(self) -> None:
        logger.info("\nAvailable Commands:")
        for name, command in sorted(self.commands.items()):
            # aliases share the Command object
            if name == command.name:
                logger.info(f"  {command.name:<15} - {command.description}")

    def _require_graph(self) -> bool:
        if self.graph is None:
            logger.info("No graph is loaded. Use 'load-graph' or 'gen-graph' first.")
            return False
        return True

    def _k(self, input_list: List[str]) -> int:
        return int(input_list[1]) if len(input_list) > 1 else self.settings.default_k

    ###################
    # Command functions
    ###################
    def help(self, input_list: List[str]) -> None:
        """List all commands supported by the CLI"""
        if len(input_list) > 1:
            self._show_command_help(input_list[1])
        else:
            self._show_general_help()

    def load_graph(self, input_list: List[str]) -> None:
        if len(input_list) < 2:
            logger.info("Please specify a file.")
            logger.info("Format: load-graph {file}")
            return
        try:
            self.graph = read_edge_list(input_list[1])
            self.graph_name = Path(input_list[1]).stem
            logger.info(f"\n✅ Loaded {self.graph_name}: n = {self.graph.n}, m = {self.graph.m}")
        except FileNotFoundError:
            logger.error(f"Graph file not found: {input_list[1]}")
        except EdgeListParseError as e:
            logger.error(f"Parse error on line {e.line}: {e}")

    def gen_graph(self, input_list: List[str]) -> None:
        if len(input_list) < 2:
            logger.info("Please specify a family.")
            logger.info("Format: gen-graph {family} {params}")
            return
        spec = parse_family(input_list[1], input_list[2:])
        self.graph = generate(spec, self.settings.generator_retries)
        self.graph_name = spec.describe()
        logger.info(f"\n✅ Generated {self.graph_name}: n = {self.graph.n}, m = {self.graph.m}")

    def show_graph(self, input_list: List[str]) -> None:
        if self._require_graph():
            print(self.graph.to_edge_list(), end="")

    def analyze(self, input_list: List[str]) -> None:
        if self._require_graph():
            report, _ = analyze_graph(self.graph, self._k(input_list))
            print_report(report, self.graph)

    def exact(self, input_list: List[str]) -> None:
        if not self._require_graph():
            return
        try:
            summary = exact_summary(self.graph, self.settings.oracle_limit)
        except OracleError as e:
            logger.error(f"Too large for the exact search: {e}")
            return
        print_report(RunReport(input_digest(self.graph), "exact", exact=summary), self.graph)

    def bound(self, input_list: List[str], with_oracle: bool = False) -> None:
        if not self._require_graph():
            return
        command = "verify" if with_oracle else "bound"
        try:
            report, _ = certify_components(self.graph, self._k(input_list), self.settings, command, with_oracle)
        except (OracleError, TooLargeForFallbackError) as e:
            logger.error(f"Too large for the exact search: {e}")
            return
        print_report(report, self.graph)

    def verify(self, input_list: List[str]) -> None:
        self.bound(input_list, with_oracle=True)

    def list_routes(self, input_list: List[str]) -> None:
        RouteManager(self.settings).list_routes()

    def exit(self, input_list: List[str]) -> None:
        """Exit the CLI gracefully"""
        logger.info("\nGoodbye! 👋")
        sys.exit(0)

    ###################
    # Main CLI Loop
    ###################
    def main_loop(self) -> None:
        """Main CLI loop"""
        _configure_logging()
        self._print_welcome_message()

        while True:
            try:
                input_string = self.session.prompt(
                    self._get_prompt_message(),
                    style=self.style
                ).strip()

                if not input_string:
                    continue

                self._handle_command(input_string)
                print_h_bar()

            except KeyboardInterrupt:
                continue
            except EOFError:
                self.exit([])
            except Exception as e:
                logger.exception(f"Unexpected error: {e}")
