"""Named groups, the group-definition text format, and TSV reports.

Definition documents are line-oriented blocks::

    # Z13 : Z6 with the generator of Z6 acting as x -> 4x
    group Z13
    kind cyclic
    n 13
    end

    group Z6
    kind cyclic
    n 6
    end

    group F78
    kind semidirect
    normal Z13
    acting Z6
    actgens 1
    act 1 0 4 8 12 3 7 11 2 6 10 1 5 9
    end

Kinds and their keys:

* ``cyclic``: ``n``
* ``perm``: ``degree`` and one ``gen`` line of 0-based images per generator
* ``product``: ``factors A B``
* ``semidirect``: ``normal``, ``acting``, optional ``actgens``, and one
  ``act <h> <images>`` line per acting generator ``h`` (an element index of
  the acting group); the images give the right action on the normal group
* ``table``: one ``row`` line per element, identity first

References must name groups defined earlier in the same document.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, TextIO

from .criteria import CRITERION_ORDER, CriteriaReport
from .groups import (
    DEFAULT_CAP,
    ActionSpec,
    FiniteGroup,
    GroupError,
    Permutation,
    cyclic_group,
    direct_product,
    perm_group,
    semidirect_product,
)

__all__ = [
    "GroupDef",
    "GroupDefError",
    "CatalogError",
    "parse_group_defs",
    "build_group_defs",
    "load_group_defs",
    "format_table_def",
    "catalog",
    "catalog_names",
    "ReportRow",
    "report_rows",
    "write_report",
    "format_fraction",
    "REPORT_COLUMNS",
]

KINDS = ("cyclic", "perm", "product", "semidirect", "table")
MAX_DEGREE = 100000


class GroupDefError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


class CatalogError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


@dataclass
class GroupDef:
    name: str
    kind: str
    line: int = 0
    n: int | None = None
    degree: int | None = None
    gens: list[list[int]] = field(default_factory=list)
    factors: list[str] = field(default_factory=list)
    normal: str | None = None
    acting: str | None = None
    actgens: list[int] | None = None
    acts: list[tuple[int, list[int]]] = field(default_factory=list)
    rows: list[list[int]] = field(default_factory=list)


_SINGLE_KEYS = {"kind", "n", "degree", "factors", "normal", "acting", "actgens"}
_REPEAT_KEYS = {"gen", "act", "row"}


def _ints(tokens: list[str], line: int, col_of: Callable[[int], int]) -> list[int]:
    out = []
    for i, tok in enumerate(tokens):
        if not re.fullmatch(r"-?\d+", tok):
            raise GroupDefError(f"expected an integer, got {tok!r}", line, col_of(i))
        out.append(int(tok))
    return out


def parse_group_defs(document: str) -> list[GroupDef]:
    """Parse a definition document into unbuilt definitions, in order.

    Syntax and reference errors raise :class:`GroupDefError` with the line
    and column of the offending token.
    """
    defs: list[GroupDef] = []
    names: set[str] = set()
    current: GroupDef | None = None
    seen: set[str] = set()
    lines = document.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0]
        tokens = text.split()
        if not tokens:
            continue
        starts = [m.start() + 1 for m in re.finditer(r"\S+", text)]

        def col(i: int, starts=starts) -> int:
            return starts[min(i, len(starts) - 1)]

        key, args = tokens[0], tokens[1:]
        if key == "group":
            if current is not None:
                raise GroupDefError(f"group {current.name!r} is missing 'end'", lineno, 1)
            if len(args) != 1:
                raise GroupDefError("expected 'group <name>'", lineno, 1)
            name = args[0]
            if name in names:
                raise GroupDefError(f"duplicate group name {name!r}", lineno, col(1))
            current = GroupDef(name=name, kind="", line=lineno)
            seen = set()
            continue
        if current is None:
            raise GroupDefError(f"{key!r} outside a group block", lineno, 1)
        if key == "end":
            if args:
                raise GroupDefError("unexpected tokens after 'end'", lineno, col(1))
            _finish(current, names)
            defs.append(current)
            names.add(current.name)
            current = None
            continue
        if key not in _SINGLE_KEYS and key not in _REPEAT_KEYS:
            raise GroupDefError(f"unknown key {key!r}", lineno, 1)
        if key in _SINGLE_KEYS:
            if key in seen:
                raise GroupDefError(f"key {key!r} given twice", lineno, 1)
            seen.add(key)
        argcol = lambda i: col(i + 1)  # noqa: E731
        if key == "kind":
            if len(args) != 1 or args[0] not in KINDS:
                raise GroupDefError(f"kind must be one of {', '.join(KINDS)}", lineno, col(1))
            current.kind = args[0]
        elif key in ("n", "degree"):
            vals = _ints(args, lineno, argcol)
            if len(vals) != 1 or vals[0] < 1:
                raise GroupDefError(f"{key} takes one positive integer", lineno, col(1))
            setattr(current, key, vals[0])
        elif key == "factors":
            if len(args) < 2:
                raise GroupDefError("factors needs at least two group names", lineno, col(1))
            for i, a in enumerate(args):
                if a not in names:
                    raise GroupDefError(f"unresolved reference {a!r}", lineno, col(i + 1))
            current.factors = list(args)
        elif key in ("normal", "acting"):
            if len(args) != 1:
                raise GroupDefError(f"{key} takes one group name", lineno, col(1))
            if args[0] not in names:
                raise GroupDefError(f"unresolved reference {args[0]!r}", lineno, col(1))
            setattr(current, key, args[0])
        elif key == "actgens":
            current.actgens = _ints(args, lineno, argcol)
        elif key == "gen":
            current.gens.append(_ints(args, lineno, argcol))
        elif key == "act":
            vals = _ints(args, lineno, argcol)
            if len(vals) < 2:
                raise GroupDefError("act needs a generator index and images", lineno, col(1))
            current.acts.append((vals[0], vals[1:]))
        elif key == "row":
            current.rows.append(_ints(args, lineno, argcol))
    if current is not None:
        raise GroupDefError(f"group {current.name!r} is missing 'end'", len(lines), 1)
    return defs


def _finish(d: GroupDef, names: set[str]) -> None:
    required = {
        "cyclic": ["n"],
        "perm": ["degree"],
        "product": ["factors"],
        "semidirect": ["normal", "acting"],
        "table": [],
    }
    if not d.kind:
        raise GroupDefError(f"group {d.name!r} has no kind", d.line, 1)
    for key in required[d.kind]:
        if getattr(d, key) in (None, []):
            raise GroupDefError(f"{d.kind} group {d.name!r} needs {key!r}", d.line, 1)
    if d.kind == "perm" and d.degree > MAX_DEGREE:
        raise GroupDefError(f"degree {d.degree} exceeds {MAX_DEGREE}", d.line, 1)
    if d.kind == "perm" and not d.gens:
        d.gens = [list(range(d.degree))]
    if d.kind == "semidirect" and not d.acts:
        raise GroupDefError(f"semidirect group {d.name!r} needs at least one 'act' line", d.line, 1)
    if d.kind == "table" and not d.rows:
        raise GroupDefError(f"table group {d.name!r} has no rows", d.line, 1)


def _build_one(d: GroupDef, built: dict[str, FiniteGroup], cap: int) -> FiniteGroup:
    if d.kind == "cyclic":
        if d.n > cap:
            raise GroupError(f"group too large: order {d.n} exceeds cap {cap}")
        g = cyclic_group(d.n)
    elif d.kind == "perm":
        g = perm_group(d.degree, [Permutation(tuple(x)) for x in d.gens], cap=cap)
    elif d.kind == "product":
        g = built[d.factors[0]]
        for f in d.factors[1:]:
            g = direct_product(g, built[f], cap=cap)
    elif d.kind == "semidirect":
        N, H = built[d.normal], built[d.acting]
        by_gen = dict(d.acts)
        if len(by_gen) != len(d.acts):
            raise GroupError("acting generator listed in two 'act' lines")
        h_gens = d.actgens if d.actgens is not None else [h for h, _ in d.acts]
        missing = [h for h in h_gens if h not in by_gen]
        if missing or set(by_gen) - set(h_gens):
            raise GroupError("'act' lines must match 'actgens' exactly")
        action = ActionSpec(N.order, tuple(tuple(by_gen[h]) for h in h_gens))
        g = semidirect_product(N, H, action, h_gens, cap=cap)
    else:
        if len(d.rows) > cap:
            raise GroupError(f"group too large: order {len(d.rows)} exceeds cap {cap}")
        lengths = {len(r) for r in d.rows}
        if lengths != {len(d.rows)}:
            raise GroupError("table rows must all have one entry per element")
        g = FiniteGroup.from_table(d.rows)
    g.name = d.name
    return g


def build_group_defs(defs: Iterable[GroupDef], cap: int = DEFAULT_CAP) -> dict[str, FiniteGroup]:
    """Construct every definition; constructor failures carry the block's line."""
    built: dict[str, FiniteGroup] = {}
    for d in defs:
        try:
            built[d.name] = _build_one(d, built, cap)
        except (GroupError, IndexError) as exc:
            raise GroupDefError(f"group {d.name!r}: {exc}", d.line, 1) from None
    return built


def load_group_defs(source: str | Path, cap: int = DEFAULT_CAP) -> dict[str, FiniteGroup]:
    text = Path(source).read_text(encoding="utf-8")
    return build_group_defs(parse_group_defs(text), cap=cap)


def format_table_def(G: FiniteGroup, name: str | None = None) -> str:
    lines = [f"group {name or G.name}", "kind table"]
    lines += ["row " + " ".join(str(int(x)) for x in row) for row in G.table]
    lines.append("end")
    return "\n".join(lines) + "\n"


# built-in catalog


def _named(g: FiniteGroup, name: str) -> FiniteGroup:
    g.name = name
    return g


def _alternating(n: int, cap: int) -> FiniteGroup:
    if n < 3:
        return cyclic_group(1)
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return perm_group(n, gens, cap=cap)


def _symmetric(n: int, cap: int) -> FiniteGroup:
    if n < 2:
        return cyclic_group(1)
    gens = [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))]
    return perm_group(n, gens, cap=cap)


def multiplier_action(n: int, r: int) -> ActionSpec:
    """One generator acting on Z_n as x -> r*x."""
    return ActionSpec(n, ((tuple(r * x % n for x in range(n))),))


def dihedral(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Z_n : Z_2 with inversion."""
    return semidirect_product(cyclic_group(n), cyclic_group(2), multiplier_action(n, -1), [1], cap=cap)


def h1() -> FiniteGroup:
    """Z2 x (Z13 : Z6), the generator of Z6 acting on Z13 as x -> 4x."""
    f78 = semidirect_product(cyclic_group(13), cyclic_group(6), multiplier_action(13, 4), [1])
    return direct_product(cyclic_group(2), f78)


def h2() -> FiniteGroup:
    """(Z2 x Z2) : (Z13 : Z3).

    Z3 acts on Z13 as x -> 3x; the order-39 group acts on Z2 x Z2 through
    its Z3 quotient by cycling the three involutions.
    """
    f39 = semidirect_product(cyclic_group(13), cyclic_group(3), multiplier_action(13, 3), [1])
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    # f39 elements are (h, n) -> 13*h + n; 13 generates Z3, 1 generates Z13
    action = ActionSpec(4, ((0, 2, 3, 1), (0, 1, 2, 3)))
    return semidirect_product(v4, f39, action, [13, 1])


_FIXED: dict[str, Callable[[int], FiniteGroup]] = {
    "trivial": lambda cap: cyclic_group(1),
    "V4": lambda cap: direct_product(cyclic_group(2), cyclic_group(2)),
    "Z2xZ2": lambda cap: direct_product(cyclic_group(2), cyclic_group(2)),
    "Z4xZ3xZ5": lambda cap: direct_product(direct_product(cyclic_group(4), cyclic_group(3)), cyclic_group(5)),
    "Z4xZ15": lambda cap: direct_product(cyclic_group(4), cyclic_group(15)),
    "Z2xS3": lambda cap: direct_product(cyclic_group(2), _symmetric(3, cap)),
    "H1": lambda cap: h1(),
    "H2": lambda cap: h2(),
}

_PATTERNS = [
    (re.compile(r"Z_?(\d+)"), lambda n, cap: cyclic_group(n) if n <= cap else _too_large(n, cap)),
    (re.compile(r"A_?(\d+)"), _alternating),
    (re.compile(r"S_?(\d+)"), _symmetric),
    (re.compile(r"D_?(\d+)"), dihedral),
]


def _too_large(n: int, cap: int):
    raise GroupError(f"group too large: order {n} exceeds cap {cap}")


def catalog_names() -> list[str]:
    return ["trivial", "Z<n>", "A<n>", "S<n>", "D<n>", *[k for k in _FIXED if k != "trivial"]]


def catalog(name: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Look up a built-in group by name (``A5``, ``Z60``, ``H1``, ...)."""
    if name in _FIXED:
        return _named(_FIXED[name](cap), name)
    for pattern, make in _PATTERNS:
        m = pattern.fullmatch(name)
        if m and int(m.group(1)) >= 1:
            return _named(make(int(m.group(1)), cap), name)
    raise CatalogError(f"unknown group {name!r}")


# reports

REPORT_COLUMNS = (
    "group", "order", "criterion", "k_used", "lhs", "rhs", "relation", "verdict", "oracle", "consistency",
)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ReportRow:
    group: str
    order: int
    criterion: str
    k_used: int | None
    lhs: Fraction
    rhs: Fraction
    relation: str
    verdict: str
    oracle: bool | None = None
    consistency: bool = True

    def cells(self) -> list[str]:
        def flag(b):
            return "" if b is None else str(b).lower()

        return [
            self.group,
            str(self.order),
            self.criterion,
            "" if self.k_used is None else str(self.k_used),
            format_fraction(self.lhs),
            format_fraction(self.rhs),
            self.relation,
            self.verdict,
            flag(self.oracle),
            flag(self.consistency),
        ]


def report_rows(reports: Iterable[CriteriaReport]) -> list[ReportRow]:
    """Rows in report order, criteria in their fixed enumeration order."""
    rank = {c: i for i, c in enumerate(CRITERION_ORDER)}
    rows = []
    for r in reports:
        for v in sorted(r.verdicts, key=lambda v: rank[v.criterion]):
            rows.append(
                ReportRow(
                    r.group_name, r.order, v.criterion.value, v.k_used, v.lhs, v.rhs,
                    v.relation.value, v.verdict.value, r.oracle_solvable, r.consistency,
                )
            )
    return rows


def write_report(rows: Iterable[ReportRow], destination: str | Path | TextIO) -> None:
    """Write rows as UTF-8 TSV with LF line endings and a header line."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for row in rows:
        writer.writerow(row.cells())
    text = buf.getvalue()
    if isinstance(destination, (str, Path)):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        destination.write(text)
