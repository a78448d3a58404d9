from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import vertexset as vs
from .complex import SimplicialComplex, add_face, connected_sum, join, remove_facet, wedge_sum
from .config import EngineConfig
from .errors import CapExceededError, HHCalcError
from .facet_reader import format_complex, read_complex
from .generators import (
    gen_augmented_icosahedron,
    gen_bicapped_antiprism,
    gen_cycle,
    gen_icosahedron,
    gen_octahedron,
    gen_simplex,
    gen_simplex_boundary,
    gen_sphere0,
)
from .linalg import FieldSpec
from .runner import HHRunner
from .search import Search, antiprism_family, connected_sum_family, facet_deletion_family, parse_range
from .verify import EXTRA_CHECKS, MAIN_CHECKS, needs_table, run_checks

logger = logging.getLogger("hhcalc")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CAP = 2
EXIT_VERIFY = 3


def _vertices(text: str) -> int:
    """``"1,2,3"`` or ``"1 2 3"`` as a VertexSet."""
    return vs.from_vertices(int(t) for t in text.replace(",", " ").split())


def _pairing(text: str | None) -> dict[int, int] | None:
    """``"4:1,5:2"`` maps K2 vertex -> K1 vertex."""
    if not text:
        return None
    out = {}
    for part in text.split(","):
        a, b = part.split(":")
        out[int(a)] = int(b)
    return out


# -- gen ---------------------------------------------------------------------


def _cmd_gen(args: argparse.Namespace, cfg: EngineConfig) -> int:
    kind, params = args.kind, args.params

    def need(n: int) -> list[str]:
        if len(params) != n:
            raise ValueError(f"gen {kind} takes {n} argument(s), got {len(params)}")
        return params

    def two_inputs() -> tuple[SimplicialComplex, SimplicialComplex]:
        a, b = need(2)
        return read_complex(a), read_complex(b)

    if kind == "cycle":
        K = gen_cycle(int(need(1)[0]))
    elif kind == "simplex":
        K = gen_simplex(int(need(1)[0]))
    elif kind == "simplex-boundary":
        K = gen_simplex_boundary(int(need(1)[0]))
    elif kind == "sphere0":
        need(0)
        K = gen_sphere0()
    elif kind == "octahedron":
        need(0)
        K = gen_octahedron()
    elif kind == "icosahedron":
        need(0)
        K = gen_icosahedron()
    elif kind == "bicapped-antiprism":
        n, h = need(2)
        K = gen_bicapped_antiprism(int(n), int(h))
    elif kind == "augmented-icosahedron":
        K = gen_augmented_icosahedron(read_complex(need(1)[0]).facet_lists())
    elif kind == "join":
        K = join(*two_inputs())
    elif kind in ("connected-sum", "wedge-sum"):
        K1, K2 = two_inputs()
        s1 = _vertices(args.sigma1) if args.sigma1 else K1.facets[0]
        s2 = _vertices(args.sigma2) if args.sigma2 else K2.facets[0]
        glue = connected_sum if kind == "connected-sum" else wedge_sum
        K = glue(K1, K2, s1, s2, _pairing(args.pairing))
    elif kind == "remove-facet":
        if not args.face:
            raise ValueError("gen remove-facet needs --face")
        K = remove_facet(read_complex(need(1)[0]), _vertices(args.face))
    elif kind == "add-face":
        if not args.face:
            raise ValueError("gen add-face needs --face")
        K = add_face(read_complex(need(1)[0]), _vertices(args.face))
    else:  # argparse restricts choices
        raise ValueError(f"unknown generator {kind!r}")
    sys.stdout.write(format_complex(K, header=args.header))
    return EXIT_OK


# -- hh ----------------------------------------------------------------------


def _cmd_hh(args: argparse.Namespace, cfg: EngineConfig) -> int:
    runner = HHRunner.from_config(cfg)
    doc = runner.run_file(args.input, with_timings=args.timings)
    if args.format == "json":
        sys.stdout.write(doc.to_json())
    elif args.format == "xml":
        from .result_xml import to_xml

        data = to_xml(doc)
        if args.validate:
            from .validator import validate_xml

            validate_xml(data, cfg.result_xsd)
            logger.info("validation: OK")
        sys.stdout.write(data.decode("utf-8"))
    else:
        sys.stdout.write(doc.to_text())
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace, cfg: EngineConfig) -> int:
    K = read_complex(args.input)
    runner = HHRunner.from_config(cfg)
    names = args.check or ["all"]
    table = runner.compute(K).hh if needs_table(names) else None
    reports = run_checks(K, runner.field, names, table=table, **cfg.engine_options())

    if args.format == "json":
        sys.stdout.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        for r in reports:
            line = f"{r.check:<15} {r.status.value}"
            if r.reason:
                line += f" ({r.reason})"
            print(line)
            for w in r.witness:
                print(f"    witness: {json.dumps(w)}")
            for key, value in r.details.items():
                if key != "facets":
                    print(f"    {key}: {value}")
            for e in r.details.get("facets", ()):
                facet = " ".join(map(str, e["facet"]))
                print(f"    facet {{{facet}}}: {e['rank_before']} -> {e['rank_after']} (delta {e['delta']:+d})")
    return EXIT_VERIFY if any(r.failed for r in reports) else EXIT_OK


# -- search ------------------------------------------------------------------


def _cmd_search(args: argparse.Namespace, cfg: EngineConfig) -> int:
    runner = HHRunner.from_config(cfg)
    search = Search(runner, emit_dir=args.emit_exotic)
    if args.family == "bicapped-antiprism":
        instances = antiprism_family(parse_range(args.n), parse_range(args.h))
    elif args.family == "facet-deletions":
        if len(args.inputs) != 1:
            raise ValueError("facet-deletions takes one input file")
        instances = facet_deletion_family(read_complex(args.inputs[0]))
    else:
        if len(args.inputs) != 2:
            raise ValueError("connected-sums takes two input files")
        instances = connected_sum_family(read_complex(args.inputs[0]), read_complex(args.inputs[1]))
    for result in search.run(args.family, instances):
        print(result.to_json() if args.format == "json" else result.to_text(), flush=True)
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def _engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--coeff", help="gf2 (default), gfp:<prime> or q")
    p.add_argument("--jobs", type=int, help="worker processes")
    p.add_argument("--cache", type=Path, help="cache directory")
    p.add_argument("--max-m", type=int, help="vertex cap for full enumeration")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hhcalc", description="Bigraded double homology of moment-angle complexes")
    p.add_argument("--config", type=Path, help="engine JSON config (default config/engine.json)")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a facet list to stdout")
    g.add_argument("kind", choices=[
        "cycle", "simplex", "simplex-boundary", "sphere0", "octahedron", "icosahedron",
        "bicapped-antiprism", "augmented-icosahedron", "join", "connected-sum", "wedge-sum",
        "remove-facet", "add-face",
    ])
    g.add_argument("params", nargs="*", help="integers or input files, depending on kind")
    g.add_argument("--sigma1", help="facet of the first complex, e.g. '1,2,3'")
    g.add_argument("--sigma2", help="facet of the second complex")
    g.add_argument("--pairing", help="explicit identification 'v2:v1,...' (second -> first)")
    g.add_argument("--face", help="face for remove-facet / add-face")
    g.add_argument("--header", action="store_true", help="emit an 'm <int>' header line")

    h = sub.add_parser("hh", help="compute Hochster and HH tables")
    h.add_argument("input", nargs="?", default="-", help="facet file (default stdin)")
    _engine_flags(h)
    h.add_argument("--format", choices=["table", "json", "xml"], default="table")
    h.add_argument("--validate", action="store_true", help="validate XML output against the result XSD")
    h.add_argument("--timings", action="store_true", help="include phase timings in the output")
    h.add_argument("--check-cochain", action="store_true", default=None, help="assert d∘d = 0 while computing")

    v = sub.add_parser("verify", help="run structural checks")
    v.add_argument("input", nargs="?", default="-")
    _engine_flags(v)
    v.add_argument("--check", action="append", choices=["all", *MAIN_CHECKS, *EXTRA_CHECKS])
    v.add_argument("--format", choices=["text", "json"], default="text")

    s = sub.add_parser("search", help="HH ranks over a family of complexes")
    s.add_argument("family", choices=["bicapped-antiprism", "facet-deletions", "connected-sums"])
    s.add_argument("inputs", nargs="*", help="input facet files for facet-deletions / connected-sums")
    s.add_argument("--n", default="4..8", help="antiprism n range, e.g. 4..8")
    s.add_argument("--h", default="1", help="antiprism tower height range")
    _engine_flags(s)
    s.add_argument("--emit-exotic", type=Path, help="directory for facet files of exotic-rank complexes")
    s.add_argument("--format", choices=["text", "json"], default="text")
    return p


COMMANDS = {"gen": _cmd_gen, "hh": _cmd_hh, "verify": _cmd_verify, "search": _cmd_search}


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(name)s:%(levelname)s:%(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = EngineConfig.load(args.config)
        cfg = cfg.override(
            coeff=getattr(args, "coeff", None),
            jobs=getattr(args, "jobs", None),
            cache_dir=getattr(args, "cache", None),
            max_m=getattr(args, "max_m", None),
            check_cochain=getattr(args, "check_cochain", None),
        )
        FieldSpec.parse(cfg.coeff)
        if cfg.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        return COMMANDS[args.command](args, cfg)
    except CapExceededError as exc:
        print(f"hhcalc: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (HHCalcError, OSError, ValueError, RuntimeError) as exc:
        print(f"hhcalc: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    raise SystemExit(run())
