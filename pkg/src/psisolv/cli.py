"""Command-line entry point.

Exit codes: 0 success, 1 logical inconsistency or failed verification,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog_io as cat
from .criteria import DEFAULT_K_WINDOW, ORACLE_CAP, run_all
from .groups import DEFAULT_CAP, FiniteGroup, GroupError
from .metrics import claim_inequality_holds, is_prime, order_spectrum, psi_k
from .regression import FAIL, MANIFEST, WINDOW, Context, run_manifest

K_LIMITS = (1, 64)


class UsageError(Exception):
    pass


def parse_range(text: str, limits: tuple[int, int] | None = K_LIMITS) -> list[int]:
    """Parse ``a..b`` or a single integer into an inclusive list."""
    try:
        if ".." in text:
            a, b = (int(x) for x in text.split("..", 1))
        else:
            a = b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    if limits and (a < limits[0] or b > limits[1]):
        raise argparse.ArgumentTypeError(f"range {text!r} outside {limits[0]}..{limits[1]}")
    return list(range(a, b + 1))


def _prime_range(text: str) -> list[int]:
    return parse_range(text, limits=(2, 10**6))


def resolve_groups(names: list[str], defs: list[str], cap: int, lookup=cat.catalog) -> list[FiniteGroup]:
    """Load definition files and resolve group names, reporting every failure.

    With no names given, every group from the definition files is selected.
    """
    problems: list[str] = []
    defined: dict[str, FiniteGroup] = {}
    for path in defs:
        try:
            defined.update(cat.load_group_defs(path, cap=cap))
        except OSError as exc:
            problems.append(f"{path}: {exc.strerror or exc}")
        except cat.GroupDefError as exc:
            problems.append(f"{path}: {exc}")
    groups: list[FiniteGroup] = []
    for name in names:
        if name in defined:
            groups.append(defined[name])
            continue
        try:
            groups.append(lookup(name, cap=cap))
        except (cat.CatalogError, GroupError) as exc:
            problems.append(f"skipped group {name!r}: {exc}")
    if not names:
        groups.extend(defined.values())
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        raise UsageError("some groups could not be loaded")
    if not groups:
        raise UsageError("no groups selected (use --group or --defs)")
    return groups


def cmd_compute(args) -> int:
    ks = args.k or list(range(1, 9))
    for G in resolve_groups(args.group, args.defs, args.cap):
        s = order_spectrum(G)
        print(f"group\t{G.name}")
        print(f"order\t{G.order}")
        print(f"spectrum\t{s.summary()}")
        for k in ks:
            print(f"psi_{k}\t{psi_k(s, k)}")
    return 0


def cmd_spectrum(args) -> int:
    for G in resolve_groups(args.group, args.defs, args.cap):
        print(f"# {G.name} order {G.order}")
        print("element_order\tcount")
        for d, c in order_spectrum(G).counts.items():
            print(f"{d}\t{c}")
    return 0


def cmd_criteria(args) -> int:
    ks = args.k or list(DEFAULT_K_WINDOW)
    groups = resolve_groups(args.group, args.defs, args.cap)
    oracle = False if args.no_oracle else None
    reports = [run_all(G, ks, oracle=oracle, oracle_cap=args.oracle_cap) for G in groups]
    rows = cat.report_rows(reports)
    if args.report:
        cat.write_report(rows, args.report)
        for r in reports:
            certs = ",".join(c.value for c in r.certified_by) or "-"
            oracle_text = "unchecked" if r.oracle_solvable is None else str(r.oracle_solvable).lower()
            print(f"{r.group_name}\torder={r.order}\tcertified_by={certs}\toracle={oracle_text}\tconsistent={str(r.consistency).lower()}")
    else:
        cat.write_report(rows, sys.stdout)
    bad = [r.group_name for r in reports if not r.consistency]
    for name in bad:
        print(f"INCONSISTENT: {name} certified but not solvable", file=sys.stderr)
    return 1 if bad else 0


def claim_expected(p: int, k: int) -> bool | None:
    """Whether the claim is asserted to hold at (p, k); None outside the asserted region."""
    if (p > 7 and k >= 4) or (p == 7 and k >= 13):
        return True
    return None


def cmd_claim_check(args) -> int:
    primes = [p for p in (args.primes or list(range(2, 200))) if is_prime(p)]
    ks = args.k or list(range(1, 26))
    if not primes:
        raise UsageError("no primes in range")
    failures = 0
    print("p\tk\tresult\tasserted")
    for p in primes:
        for k in ks:
            holds = claim_inequality_holds(p, k)
            asserted = claim_expected(p, k)
            if asserted and not holds:
                failures += 1
            print(f"{p}\t{k}\t{'holds' if holds else 'fails'}\t{'yes' if asserted else 'no'}")
    print(f"# {len(primes) * len(ks)} points, {failures} contradict the asserted region")
    return 1 if failures else 0


def _corrupted_lookup(name: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    # test mode: swap in wrong groups so the harness must notice
    swap = {"A5": "S4", "H1": "D78", "H2": "Z156"}
    G = cat.catalog(swap.get(name, name), cap=cap)
    G.name = name
    return G


def cmd_verify_paper(args) -> int:
    lookup = _corrupted_lookup if args.corrupt_catalog else cat.catalog
    ctx = Context(lookup=lookup, k_window=args.k or list(DEFAULT_K_WINDOW))
    failed = 0
    for item, status, detail in run_manifest(ctx):
        label = {WINDOW: "WINDOW-LIMITED"}.get(status, status)
        print(f"{label}\t{item.id}\t[{item.provenance}] {item.claim}\t{detail}")
        failed += status == FAIL
    print(f"# {len(MANIFEST) - failed}/{len(MANIFEST)} items without failure")
    return 1 if failed else 0


def cmd_catalog(args) -> int:
    if not args.group:
        for name in cat.catalog_names():
            print(name)
        return 0
    for G in resolve_groups(args.group, [], args.cap):
        sys.stdout.write(cat.format_table_def(G))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psisolv", description="Element-order power sums and solvability criteria.")
    sub = parser.add_subparsers(dest="command", required=True)

    def groups_opts(p):
        p.add_argument("--group", action="append", default=[], help="built-in group name (repeatable)")
        p.add_argument("--defs", action="append", default=[], help="group-definition file (repeatable)")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum group order")

    p = sub.add_parser("compute", help="print psi_k for each k")
    groups_opts(p)
    p.add_argument("--k", type=parse_range, help="k range a..b (default 1..8)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("spectrum", help="print element-order counts")
    groups_opts(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("criteria", help="run every criterion and write a TSV report")
    groups_opts(p)
    p.add_argument("--k", type=parse_range, help="k window for the main criterion (default 4..32)")
    p.add_argument("--report", type=Path, help="TSV output path (default stdout)")
    p.add_argument("--no-oracle", action="store_true", help="skip the derived-series check")
    p.add_argument("--oracle-cap", type=int, default=ORACLE_CAP, help="largest order checked automatically")
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("claim-check", help="evaluate the d_k lower-bound inequality over a grid")
    p.add_argument("--primes", type=_prime_range, help="prime range a..b (default 2..199)")
    p.add_argument("--k", type=parse_range, help="k range a..b (default 1..25)")
    p.set_defaults(func=cmd_claim_check)

    p = sub.add_parser("verify-paper", help="run the regression manifest")
    p.add_argument("--k", type=parse_range, help="k window for the main criterion (default 4..32)")
    p.add_argument("--corrupt-catalog", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("catalog", help="list built-in groups or export them as table definitions")
    p.add_argument("--group", action="append", default=[])
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
