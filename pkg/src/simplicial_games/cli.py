"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 verification mismatch.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .emperor import (
    EmperorMove,
    brute_engine,
    emperor_moves,
    emperor_outcome_fast,
    emperor_winning_move,
    is_legal,
    move_to,
)
from .errors import GameError, IllegalMove, SizeLimitExceeded
from .game_core import Outcome
from .instance import InstanceDocument, _complex_from, _load_json, parse_instance
from .simplicial import NimTable

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


@dataclass
class SolveReport:
    outcome: Outcome
    component_outcomes: list
    pl_vector: list
    engine: str
    winning_move: str = None
    winning_move_detail: dict = None
    agreement: bool = None

    def to_dict(self):
        d = {
            "outcome": str(self.outcome),
            "component_outcomes": [str(o) for o in self.component_outcomes],
            "pl_vector": list(self.pl_vector),
            "engine": self.engine,
        }
        if self.winning_move is not None:
            d["winning_move"] = self.winning_move_detail
            d["winning_move_text"] = self.winning_move
        if self.agreement is not None:
            d["agreement"] = self.agreement
        return d

    def render(self):
        lines = [
            f"outcome: {self.outcome}",
            f"engine: {self.engine}",
            "component outcomes: " + " ".join(map(str, self.component_outcomes)),
            "pl vector: " + ",".join(map(str, self.pl_vector)),
        ]
        if self.agreement is not None:
            lines.append(f"agreement: {'yes' if self.agreement else 'NO'}")
        if self.winning_move is not None:
            lines.append(f"winning move: {self.winning_move}")
        return "\n".join(lines)


def _brute_winning_move(inst, p):
    brute = brute_engine(inst)
    for q in sorted(emperor_moves(inst, p)):
        if brute.is_p(q):
            return move_to(inst, p, q)
    return None


def cmd_solve(instance, engine="fast", move=True):
    """Decide the start position of an instance and optionally find a winning move."""
    inst = instance.build() if isinstance(instance, InstanceDocument) else instance
    p = inst.start()
    comps = inst.components
    fast = brute = None
    if engine in ("fast", "both"):
        fast = emperor_outcome_fast(inst, p)
    if engine in ("brute", "both"):
        try:
            brute = brute_engine(inst).outcome(p)
        except SizeLimitExceeded as exc:
            raise SizeLimitExceeded(f"{exc}; the brute engine cannot handle this instance, use --engine fast") from None
    report = SolveReport(
        outcome=fast if fast is not None else brute,
        component_outcomes=[g.outcome(x) for g, x in zip(comps, p)],
        pl_vector=list(inst.pl_vector(p)),
        engine=engine,
    )
    if engine == "both":
        report.agreement = fast == brute
    if move and report.outcome == Outcome.N:
        best = emperor_winning_move(inst, p) if engine != "brute" else _brute_winning_move(inst, p)
        if best is not None:
            report.winning_move = best.render(inst)
            report.winning_move_detail = best.to_dict(inst)
    return report


def cmd_pset(cx, bound):
    table = NimTable(cx, bound)
    return table, table.pset()


def _parse_bound(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bound must look like 3,3,2; got {text!r}") from None


def _load_complex(path):
    doc = _load_json(Path(path).read_text())
    if isinstance(doc, dict) and "complex" in doc:
        doc = doc["complex"]
    return _complex_from(doc, "complex")


def _vertex_index(inst, key):
    names = [str(v) for v in inst.complex.vertices]
    if key in names:
        return names.index(key)
    try:
        i = int(key)
    except ValueError:
        raise GameError(f"unknown vertex {key!r}") from None
    if not 1 <= i <= len(names):
        raise GameError(f"vertex number {i} out of range 1..{len(names)}")
    return i - 1


def cmd_verify(max_vertices=3, max_size=2, fast=None, jobs=1, random_instances=100,
               selfplay_games=100, report_dir=None, out=None):
    """Run every sweep, print one line per check. Returns (results, exit code)."""
    from .verify import run_all, sweep_instance_count

    out = out or sys.stdout
    results = run_all(
        max_vertices,
        max_size,
        fast=fast or emperor_outcome_fast,
        jobs=jobs,
        random_instances=random_instances,
        selfplay_games=selfplay_games,
    )
    for r in results:
        print(r.line(), file=out)
    bad = sum(r.mismatches for r in results)
    print(f"{sweep_instance_count(max_vertices, max_size)} instances checked, {bad} mismatches", file=out)
    if report_dir:
        from .report import plot_results, write_results_csv

        d = Path(report_dir)
        d.mkdir(parents=True, exist_ok=True)
        write_results_csv(results, d / "summary.csv")
        plot_results(results, d / "summary.png")
    return results, EXIT_MISMATCH if bad else EXIT_OK


# ---------------------------------------------------------------- play


PLAY_HELP = """\
Enter a move as   FACE : VERTEX=PATH VERTEX=PATH ...
  FACE     comma-separated vertices of the chosen face, e.g. v1,v2
  PATH     positions joined by '>', e.g. 3>1>0 (the current position may be omitted)
  vertices not listed stay put; off-face vertices may make at most one move
Other commands: moves, help, quit"""


def parse_human_move(inst, p, line):
    if ":" not in line:
        raise IllegalMove("expected 'FACE : VERTEX=PATH ...'; type help for the format")
    face_part, _, rest = line.partition(":")
    cx = inst.complex
    try:
        face = cx.mask_of([v.strip() for v in face_part.split(",") if v.strip()])
    except GameError as exc:
        raise IllegalMove(str(exc)) from None
    paths = [[x] for x in p]
    for token in rest.split():
        if "=" not in token:
            raise IllegalMove(f"cannot read {token!r}; expected VERTEX=PATH")
        name, _, path_text = token.partition("=")
        try:
            i = cx.vertex_index(name)
            game = inst.components[i]
            steps = [game.position(t) for t in path_text.split(">") if t]
        except GameError as exc:
            raise IllegalMove(str(exc)) from None
        if steps and steps[0] == p[i]:
            steps = steps[1:]
        paths[i] = [p[i]] + steps
    move = EmperorMove(face, tuple(map(tuple, paths)))
    is_legal(inst, move)
    return move


def _engine_move(inst, p):
    move = emperor_winning_move(inst, p)
    if move is None:
        move = move_to(inst, p, min(emperor_moves(inst, p)))
    return move


def cmd_play(instance, engine_first=False, stdin=None, stdout=None):
    """Human against engine from the instance's start position. Returns 'human' or 'engine'."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    inst = instance.build() if isinstance(instance, InstanceDocument) else instance
    p = inst.start()
    brute_engine(inst).outcome(p)  # enforces the size cap up front
    say = lambda text: print(text, file=stdout, flush=True)
    say(PLAY_HELP)
    human_turn = not engine_first
    last = None
    while True:
        moves = emperor_moves(inst, p)
        say(f"\nposition: {inst.format_position(p)}")
        if not moves:
            winner = last
            say("no moves left: " + ("you win" if winner == "human" else "the engine wins"))
            return winner
        if not human_turn:
            move = _engine_move(inst, p)
            say(f"engine plays {move.render(inst)}")
            p = move.result()
            last = "engine"
            human_turn = True
            continue
        stdout.write("your move> ")
        stdout.flush()
        line = stdin.readline()
        if not line:
            say("\nend of input")
            return None
        line = line.strip()
        if not line:
            continue
        if line in ("quit", "exit"):
            return None
        if line == "help":
            say(PLAY_HELP)
            continue
        if line == "moves":
            for q in sorted(moves):
                say("  " + move_to(inst, p, q).render(inst))
            continue
        try:
            move = parse_human_move(inst, p, line)
        except IllegalMove as exc:
            say(f"illegal: {exc}")
            continue
        p = move.result()
        last = "human"
        human_turn = False


# ---------------------------------------------------------------- argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="simplicial-games", description="Impartial games summed over simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decide an instance's start position")
    p.add_argument("file")
    p.add_argument("--engine", choices=("fast", "brute", "both"), default="fast")
    p.add_argument("--move", action="store_true", help="also print a winning move")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("pset", help="list P-positions of nim on a complex")
    p.add_argument("file", help="complex document (or an instance document)")
    p.add_argument("--bound", type=_parse_bound, required=True)
    p.add_argument("--plot", metavar="PNG", help="also draw the P-set to this file")

    p = sub.add_parser("pl", help="P-position length data for one component")
    p.add_argument("file")
    p.add_argument("--vertex", required=True, help="vertex name, or its 1-based number")

    p = sub.add_parser("verify", help="run the exhaustive verification sweeps")
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--max-size", type=int, default=2, help="largest heap in the component menu")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--random-instances", type=int, default=100)
    p.add_argument("--selfplay", type=int, default=100)
    p.add_argument("--report", metavar="DIR", help="write summary.csv and summary.png here")

    p = sub.add_parser("play", help="play against the engine")
    p.add_argument("file")
    p.add_argument("--engine-first", action="store_true")
    return parser


def _run(args, out):
    if args.command == "solve":
        report = cmd_solve(parse_instance(Path(args.file).read_text()), args.engine, args.move)
        print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) if args.json else report.render(), file=out)
        return EXIT_MISMATCH if report.agreement is False else EXIT_OK

    if args.command == "pset":
        cx = _load_complex(args.file)
        table, pset = cmd_pset(cx, args.bound)
        for s in pset:
            print(",".join(map(str, s)), file=out)
        if args.plot:
            from .report import plot_pset

            plot_pset(table, args.plot)
        return EXIT_OK

    if args.command == "pl":
        inst = parse_instance(Path(args.file).read_text()).build()
        i = _vertex_index(inst, args.vertex)
        g = inst.components[i]
        x = g.start
        print(f"vertex: {inst.complex.vertices[i]}", file=out)
        print(f"position: {g.labels[x]}", file=out)
        print(f"outcome: {g.outcome(x)}", file=out)
        print(f"grundy: {g.grundy(x)}", file=out)
        print(f"pl: {g.pl(x)}", file=out)
        for m in range(g.pl(x)):
            w, path = g.pl_witness(x, m)
            print(f"witness pl={m}: {g.labels[w]} via " + "→".join(g.labels[y] for y in path), file=out)
        return EXIT_OK

    if args.command == "verify":
        _, code = cmd_verify(
            args.max_vertices,
            args.max_size,
            jobs=args.jobs,
            random_instances=args.random_instances,
            selfplay_games=args.selfplay,
            report_dir=args.report,
            out=out,
        )
        return code

    if args.command == "play":
        cmd_play(parse_instance(Path(args.file).read_text()), engine_first=args.engine_first)
        return EXIT_OK
    raise AssertionError(args.command)


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return _run(args, out)
    except (GameError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
