"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 monoid budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from csfa import fileformat
from csfa.automata import AutomatonError, classify, is_minimal, normalize_csfa
from csfa.families import (
    ENUM_MAX,
    ENUM_MIN,
    FAMILIES,
    build,
    enumerate_two_bpi_binary,
)
from csfa.monoid import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    PreconditionError,
    basic_idempotents,
    generate_monoid,
    group_part,
    orbits,
    syntactic_complexity,
    two_bpi_profile,
)
from csfa.transformations import format_image, is_idempotent, rank
from csfa.verify import verify_paper

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit_json(data) -> None:
    json.dump(data, sys.stdout, indent=2, ensure_ascii=False)
    sys.stdout.write("\n")


def _load_input(args):
    if getattr(args, "family", None):
        return build(args.family, args.n, args.letters)
    if not args.path:
        raise AutomatonError("give an automaton file or --family")
    return fileformat.load(args.path)


# -- subcommands ------------------------------------------------------------

def cmd_analyze(args) -> int:
    aut = fileformat.load(args.path)
    report = classify(aut)
    if args.json:
        _emit_json(report.as_dict())
        return EXIT_OK
    print(report.summary())
    print(f"  states       {report.n}")
    print(f"  alphabet     {' '.join(report.alphabet)}")
    print(f"  trim         {report.is_trim}")
    print(f"  sfa          {report.is_sfa}")
    print(f"  circular     {' '.join(report.circular_letters) or '-'}")
    print(f"  bpis         {sorted(report.bpi_set)}")
    print(f"  bpi class    {report.bpi_class}")
    print(f"  csfa         {report.is_csfa}")
    print(f"  minimal      {report.is_minimal}")
    if report.offending_cycle:
        print(f"  cycle avoiding q0: {' -> '.join(map(str, report.offending_cycle))}")
    return EXIT_OK


def _idempotent_section(aut, mon):
    """Idempotents of ``mon`` plus kappa/tau/basic idempotents when applicable."""
    out = {"idempotents": [
        {"transform": list(e.transform), "witness": mon.word_str(e.witness),
         "rank": rank(e.transform)}
        for e in mon if is_idempotent(e.transform)]}
    info = classify(aut)
    if info.is_csfa and len(info.bpi_set) == 2 and len(aut.alphabet) == 2 and aut.n > 2:
        norm = normalize_csfa(aut)
        nmon = generate_monoid(norm, len(mon))
        prof = two_bpi_profile(norm)
        basics = basic_idempotents(norm, prof, nmon)
        out.update({
            "normalized": norm != aut,
            "m": prof.m,
            "kappa": prof.kappa,
            "tau": prof.tau,
            "nu_exists": basics.nu is not None,
            "basic_idempotents": [
                {"label": e.label, "transform": list(e.transform),
                 "word": norm.word_str(e.word)} for e in basics.members],
        })
    return out


def cmd_monoid(args) -> int:
    aut = fileformat.load(args.path)
    mon = generate_monoid(aut, args.budget)
    data = {
        "n": aut.n,
        "size": len(mon),
        "elements": [{"transform": list(e.transform), "witness": mon.word_str(e.witness),
                      "rank": rank(e.transform)} for e in mon],
    }
    if not is_minimal(aut):
        data["syntactic_complexity"] = syntactic_complexity(aut, args.budget)
    if args.orbits:
        try:
            part = orbits(mon, group_part(mon))
        except PreconditionError as exc:
            data["orbits_error"] = str(exc)
        else:
            data["orbits"] = [[list(t) for t in o] for o in part.orbits]
            data["orbit_sizes"] = part.sizes
    if args.idempotents:
        data.update(_idempotent_section(aut, mon))
    if args.json:
        _emit_json(data)
        return EXIT_OK

    print(f"|M| = {len(mon)}")
    if "syntactic_complexity" in data:
        print(f"automaton is not minimal; syntactic complexity = {data['syntactic_complexity']}")
    width = max(len(e["witness"]) for e in data["elements"])
    for e in mon:
        print(f"  {mon.word_str(e.witness).ljust(width)}  {format_image(e.transform)}"
              f"  rank {rank(e.transform)}")
    if "orbits_error" in data:
        print(f"orbits: {data['orbits_error']}")
    elif args.orbits:
        sizes = sorted(set(data["orbit_sizes"]))
        print(f"{len(data['orbits'])} orbits, sizes {sizes}")
        for o in data["orbits"]:
            print("  { " + ", ".join(format_image(t) for t in o) + " }")
    if args.idempotents:
        print(f"{len(data['idempotents'])} idempotents")
        for e in data["idempotents"]:
            print(f"  {e['witness'].ljust(width)}  {format_image(e['transform'])}  rank {e['rank']}")
        if "kappa" in data:
            note = " (states relabelled along the cycle)" if data["normalized"] else ""
            print(f"two-bpi profile{note}: m = {data['m']}, kappa = {data['kappa']}, "
                  f"tau = {data['tau'] if data['tau'] is not None else '-'}, "
                  f"nu {'exists' if data['nu_exists'] else 'absent'}")
            print(f"|B| = {len(data['basic_idempotents'])}")
            for e in data["basic_idempotents"]:
                print(f"  {format_image(e['transform'])}  {e['label']}  = {e['word']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    aut = _load_input(args)
    report = verify_paper(aut, args.budget)
    code = EXIT_OK if report.passed else EXIT_CHECK
    if args.json:
        _emit_json(report.as_dict())
        return code
    print(report.summary)
    print(f"class {report.cls}, n = {report.n}, |A| = {report.alphabet_size}, "
          f"complexity = {report.complexity}")
    if report.orbit_sizes:
        print(f"orbits: {len(report.orbit_sizes)} of sizes {sorted(set(report.orbit_sizes))}")
    if report.kappa is not None:
        tau = report.tau if report.tau is not None else "-"
        print(f"kappa = {report.kappa}, tau = {tau}, |B| = {report.basic_idempotent_count}, "
              f"nu {'exists' if report.nu_exists else 'absent'}")
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        print(f"  {mark}  {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    failed = report.first_failure
    if failed:
        print(f"FAILED: {failed.name}" + (f": {failed.detail}" if failed.detail else ""))
    else:
        print(f"all {len(report.checks)} checks passed")
    return code


def _write_csv(result, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "m", "b_row", "complexity", "kappa", "tau",
                         "basic_idempotents", "nu_exists", "checks_passed", "failed_checks"])
        for r in result.records:
            writer.writerow([result.n, r.m, " ".join(map(str, r.b_row)), r.complexity,
                             r.kappa, "" if r.tau is None else r.tau, r.basic_idempotents,
                             r.nu_exists, r.checks_passed, " ".join(r.failed_checks)])


def cmd_enumerate(args) -> int:
    if not ENUM_MIN <= args.n <= ENUM_MAX:
        raise AutomatonError(f"--n must be in [{ENUM_MIN}, {ENUM_MAX}], got {args.n}")
    result = enumerate_two_bpi_binary(args.n, args.workers)
    verdict = "MATCH" if result.matches_formula else "MISMATCH"
    witness = result.argmax_witness
    if args.dump_witness and witness is not None:
        fileformat.save(witness, args.dump_witness)
    if args.csv:
        _write_csv(result, args.csv)
    if args.plot:
        from csfa.plotting import complexity_histogram

        complexity_histogram(result, args.plot)
    data = {
        "n": result.n,
        "class": result.descriptor,
        "instance_count": result.instance_count,
        "max_complexity": result.max_complexity,
        "formula": result.bound,
        "verdict": verdict,
        "exceeding": len(result.exceeding),
        "failed_instances": len(result.failures),
        "argmax_count": len(result.argmax),
        "argmax_b_rows": [list(r.b_row) for r in result.argmax],
    }
    code = EXIT_OK if result.matches_formula and not result.failures else EXIT_CHECK
    if args.json:
        _emit_json(data)
        return code
    print(f"{result.descriptor}, n = {result.n}: {result.instance_count} instances")
    print(f"max {result.max_complexity} {'=' if verdict == 'MATCH' else '!='} "
          f"2n(n+1) = {result.bound}: {verdict}")
    print(f"instances exceeding the bound: {len(result.exceeding)}")
    print(f"instances failing a check: {len(result.failures)}")
    print(f"argmax witnesses: {len(result.argmax)}; first b-row {list(result.argmax[0].b_row)}")
    for r in result.failures[:10]:
        print(f"  failed m={r.m} b={list(r.b_row)}: {', '.join(r.failed_checks)}")
    if args.dump_witness:
        print(f"witness written to {args.dump_witness}")
    if args.csv:
        print(f"records written to {args.csv}")
    if args.plot:
        print(f"figure written to {args.plot}")
    return code


def cmd_witness(args) -> int:
    aut = build(args.family, args.n, args.letters)
    if args.output:
        fileformat.save(aut, args.output)
    else:
        sys.stdout.write(fileformat.dumps(aut))
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csfa", description="Transition monoids and syntactic complexity of CSFA")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify an automaton file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("monoid", help="list the transition monoid")
    p.add_argument("path")
    p.add_argument("--orbits", action="store_true", help="show the rotation-group orbits")
    p.add_argument("--idempotents", action="store_true",
                   help="show idempotents, kappa, tau and basic idempotents")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("verify", help="run every applicable structural check")
    p.add_argument("path", nargs="?")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--letters", type=int, default=2, help="alphabet size for one-bpi")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="sweep all two-bpi binary CSFA of one size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump-witness", metavar="PATH", help="write the first maximiser")
    p.add_argument("--csv", metavar="PATH", help="write per-instance records")
    p.add_argument("--plot", metavar="PATH", help="write a complexity histogram")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("witness", help="write a named automaton")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--letters", type=int, default=2, help="alphabet size for one-bpi")
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AutomatonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
