"""
Describing-Sentence Toolkit
Command-line entry point: synthesis, model checking, automorphisms and benches
"""
import argparse
import glob
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from aut_lab import automorphisms, centre_bound_report, normalizer_report
from artifact_store import (dump_json, load_group, load_job, load_sentence,
                            save_group, save_sentence, write_json)
from bench import bench_family
from catalog import build_catalog, catalog_frame, find_entry
from config import Config
from exceptions import (ArtifactError, CatalogError, DescribeError,
                        DiameterExceeded, FormulaSyntaxError,
                        InvariantViolation, NotSimple, PresentationFails)
from fo_syntax import length
from group_kernel import (Group, Permutation, PermGroup, as_table, bfs_words,
                          cayley_diameter, express_three_cycle,
                          alternating_generators, generating_sequence)
from model_check import check_sentence, describes_uniquely
from sentence_synth import (SYNTH_CONSTANTS, delta_formula,
                            describing_sentence, psl_row_reduction_check,
                            verify_presentation)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Errors meaning "the claim did not verify" rather than "bad input"
VERIFICATION_ERRORS = (PresentationFails, NotSimple, DiameterExceeded, InvariantViolation)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="main.py", description="Describing-sentence toolkit for finite groups")
    parser.add_argument("--budget", type=int, help="node budget for model checking")
    parser.add_argument("--jobs", type=int, help="worker processes")
    parser.add_argument("--seed", type=int, help="seed for sampled checks")
    parser.add_argument("--format", choices=["json", "csv", "text"], default="json")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--show-config", action="store_true", help="print the effective configuration")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("synth-delta", help="write delta_{v,k}")
    p.add_argument("v", type=int)
    p.add_argument("k", type=int)
    p.add_argument("-o", "--output")

    p = sub.add_parser("synth-describe", help="synthesize psi from a job file")
    p.add_argument("job")
    p.add_argument("-o", "--output")
    p.add_argument("--report")

    p = sub.add_parser("verify-pres", help="check a job's presentation premises")
    p.add_argument("job")

    p = sub.add_parser("check", help="model-check a sentence in a group")
    p.add_argument("sentence")
    p.add_argument("group")

    p = sub.add_parser("sweep", help="uniqueness of a sentence over a catalog")
    p.add_argument("sentence")
    p.add_argument("catalog", help="directory of group files, or 'default'")
    p.add_argument("--target", help="intended model (group file or catalog name)")
    p.add_argument("--max-order", type=int)

    p = sub.add_parser("diameter", help="Cayley diameter over a group's generators")
    p.add_argument("group")

    p = sub.add_parser("three-cycles", help="3-cycle words and diameter for A_k")
    p.add_argument("k", type=int)

    for name in ("aut", "out"):
        p = sub.add_parser(name, help="automorphism group" if name == "aut" else "outer automorphism order")
        p.add_argument("group")
        p.add_argument("--large", action="store_true", help="allow up to the large size limit")

    p = sub.add_parser("normalizer", help="normaliser of the regular representation")
    p.add_argument("group")
    p.add_argument("--brute", action="store_true")

    p = sub.add_parser("centre-bound", help="centre order against the 2-orbit product")
    p.add_argument("group")

    p = sub.add_parser("catalog", help="list or export the group catalog")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("directory", nargs="?")

    p = sub.add_parser("bench", help="run describing-sentence jobs")
    p.add_argument("jobs_files", nargs="*", metavar="job")
    p.add_argument("-o", "--output")
    p.add_argument("--no-sweep", action="store_true")

    p = sub.add_parser("row-reduce", help="elementary factor counts in PSL_n(q)")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    return parser


class Toolkit:
    """Command dispatcher"""

    def __init__(self, args: argparse.Namespace):
        """
        Initialize the toolkit from parsed arguments

        Args:
            args: Parsed command line
        """
        if args.config:
            Config.load_json(args.config)
        Config.apply_overrides(budget=args.budget, jobs=args.jobs, seed=args.seed,
                               log_level=args.log_level)
        self._setup_logging()
        if not Config.validate():
            raise UsageError("invalid configuration")
        if args.show_config:
            Config.display()

        self.args = args
        self.format = args.format
        self._catalog = None

    def _setup_logging(self):
        """Setup logging configuration"""
        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if Config.LOG_FILE:
            handlers.append(logging.FileHandler(Config.LOG_FILE))
        logging.basicConfig(
            level=getattr(logging, Config.LOG_LEVEL.upper()),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers,
            force=True,
        )
        self.logger = logging.getLogger(__name__)

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    @property
    def catalog(self):
        if self._catalog is None:
            self._catalog = build_catalog()
        return self._catalog

    def resolve_group(self, name: str) -> Group:
        """A group file path, or the name of a catalog entry"""
        if os.path.exists(name):
            return load_group(name)
        return find_entry(self.catalog, name).group

    def emit(self, data: Dict[str, Any], rows: Optional[Sequence[Dict[str, Any]]] = None):
        """Print a result in the selected format; rows feed the CSV form"""
        if self.format == "json":
            sys.stdout.write(dump_json(data))
        elif self.format == "csv":
            frame = pd.DataFrame(rows if rows is not None else [_flat(data)])
            sys.stdout.write(frame.to_csv(index=False))
        else:
            for key, value in data.items():
                sys.stdout.write(f"{key}: {value}\n")

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def run(self) -> int:
        handler = getattr(self, "cmd_" + self.args.command.replace("-", "_"))
        return handler()

    def cmd_synth_delta(self) -> int:
        try:
            formula = delta_formula(self.args.v, self.args.k)
        except ValueError as e:
            raise UsageError(str(e))
        report = length(formula)
        if self.args.output:
            save_sentence(formula, self.args.output,
                          comments=[f"delta_{self.args.v},{self.args.k}(v0; v1..v{self.args.k})"])
        self.emit({"v": self.args.v, "k": self.args.k, **report.to_dict(),
                   "bound": SYNTH_CONSTANTS.delta_bound(self.args.v, self.args.k)})
        return EXIT_OK

    def cmd_synth_describe(self) -> int:
        job = load_job(self.args.job)
        sentence = describing_sentence(job)
        pres = verify_presentation(job)
        report = {
            "job": job.name,
            "length": length(sentence).to_dict(),
            "presentation": pres.to_dict(),
            "presentation_length": job.presentation.presentation_length,
            "constants": SYNTH_CONSTANTS.to_dict(),
        }
        if self.args.output:
            save_sentence(sentence, self.args.output, comments=[f"describing sentence for {job.name}"])
        if self.args.report:
            write_json(self.args.report, report)
        self.emit(report)
        return EXIT_OK

    def cmd_verify_pres(self) -> int:
        job = load_job(self.args.job)
        report = verify_presentation(job)
        self.emit({"job": job.name, **report.to_dict()})
        return EXIT_OK if report.ok else EXIT_FAILED

    def cmd_check(self) -> int:
        sentence = load_sentence(self.args.sentence)
        group = self.resolve_group(self.args.group)
        outcome = check_sentence(sentence, group)
        self.emit({"group": group.name, **outcome.to_dict()})
        return EXIT_OK

    def cmd_sweep(self) -> int:
        sentence = load_sentence(self.args.sentence)
        if self.args.catalog == "default":
            members = [(e.name, e.group) for e in self.catalog]
        else:
            paths = sorted(glob.glob(os.path.join(self.args.catalog, "*.json")))
            if not paths:
                raise ArtifactError(f"no group files in {self.args.catalog}")
            members = [(g.name, g) for g in (load_group(p) for p in paths)]
        target = self.resolve_group(self.args.target) if self.args.target else None
        report = describes_uniquely(sentence, target, members, max_order=self.args.max_order)
        data = report.to_dict()
        rows = [{"group": name, **o.to_dict()} for name, o in report.outcomes.items()]
        self.emit(data, rows)
        return EXIT_OK if report.unique else EXIT_FAILED

    def cmd_diameter(self) -> int:
        group = self.resolve_group(self.args.group)
        if isinstance(group, PermGroup):
            gens = group.generators
        else:
            gens = generating_sequence(group)
        if not gens:
            self.emit({"group": group.name, "order": group.order, "diameter": 0, "layers": [1]})
            return EXIT_OK
        diameter = cayley_diameter(group, gens)
        layers = [0] * (diameter + 1)
        for entry in bfs_words(group, gens).values():
            layers[entry.distance] += 1
        self.emit({"group": group.name, "order": group.order, "diameter": diameter, "layers": layers},
                  [{"distance": d, "count": c} for d, c in enumerate(layers)])
        return EXIT_OK

    def cmd_three_cycles(self) -> int:
        k = self.args.k
        try:
            gens = alternating_generators(k)
        except ValueError as e:
            raise UsageError(str(e))
        group = PermGroup(k, gens, name=f"A{k}")
        rows = []
        for cycle in _three_cycles(k):
            target = Permutation.from_cycles([cycle], k)
            word = express_three_cycle(target, gens)
            rows.append({"cycle": str(target), "length": len(word), "word": str(word)})
        longest = max(r["length"] for r in rows)
        diameter = cayley_diameter(group, gens)
        self.emit({
            "k": k, "three_cycles": len(rows), "max_word_length": longest,
            "c1": longest / k ** 3, "diameter": diameter, "c2": diameter / k ** 4,
        }, rows)
        return EXIT_OK

    def cmd_aut(self) -> int:
        aut = automorphisms(as_table(self.resolve_group(self.args.group)), allow_large=self.args.large)
        self.emit(aut.to_dict())
        return EXIT_OK

    def cmd_out(self) -> int:
        aut = automorphisms(as_table(self.resolve_group(self.args.group)), allow_large=self.args.large)
        self.emit({"group": aut.base.name, "out_order": aut.out_order})
        return EXIT_OK

    def cmd_normalizer(self) -> int:
        report = normalizer_report(as_table(self.resolve_group(self.args.group)), brute=self.args.brute)
        self.emit(report.to_dict())
        return EXIT_FAILED if report.agree is False else EXIT_OK

    def cmd_centre_bound(self) -> int:
        group = self.resolve_group(self.args.group)
        if not isinstance(group, PermGroup):
            raise ArtifactError("centre-bound needs a permutation group")
        report = centre_bound_report(group)
        self.emit({"group": group.name, **report.to_dict()})
        return EXIT_OK if report.holds else EXIT_FAILED

    def cmd_catalog(self) -> int:
        frame = catalog_frame(self.catalog)
        if self.args.action == "export":
            if not self.args.directory:
                raise UsageError("catalog export needs a directory")
            for entry in self.catalog:
                save_group(entry.group, os.path.join(self.args.directory, f"{entry.name}.json"))
            self.logger.info(f"Exported {len(self.catalog)} groups to {self.args.directory}")
        records = json.loads(frame.to_json(orient="records"))
        self.emit({"entries": records}, records)
        return EXIT_OK

    def cmd_bench(self) -> int:
        jobs = [load_job(path) for path in self.args.jobs_files]
        result = bench_family(jobs, catalog=None if self.args.no_sweep else self.catalog,
                              sweep=not self.args.no_sweep, out_dir=self.args.output)
        self.emit(result.to_dict(), [r.ledger_row() for r in result.records])
        failed = any(r.status != "ok" or r.unique is False or r.holds_on_target is False
                     for r in result.records)
        return EXIT_FAILED if failed else EXIT_OK

    def cmd_row_reduce(self) -> int:
        try:
            report = psl_row_reduction_check(self.args.n, self.args.q)
        except ValueError as e:
            raise UsageError(str(e))
        self.emit(report.to_dict())
        return EXIT_OK if report.holds else EXIT_FAILED


def _flat(data: Dict[str, Any]) -> Dict[str, Any]:
    return {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in data.items()}


def _three_cycles(k: int):
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if a < b and a < c and b != c:
                    yield (a, b, c)


def cli_dispatch(argv: Sequence[str]) -> int:
    """
    Run one command

    Args:
        argv: Arguments without the program name

    Returns:
        0 on success (a false check is still success), 1 when a verification
        fails, 2 on usage or input errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if not args.command:
            raise UsageError("a subcommand is required")
        toolkit = Toolkit(args)
        return toolkit.run()
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except VERIFICATION_ERRORS as e:
        logging.getLogger(__name__).error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED
    except (ArtifactError, FormulaSyntaxError, CatalogError, OSError) as e:
        logging.getLogger(__name__).error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except DescribeError as e:
        logging.getLogger(__name__).error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED


def main():
    """Entry point"""
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
