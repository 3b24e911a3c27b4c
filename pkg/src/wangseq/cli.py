"""Command-line front end: problem files in, reports out.

Subcommands: ``solve`` (JSON problem file), ``example`` (built-in bundle),
``snf`` (Smith normal form of one matrix), ``ext`` (extension classes for a
sub/quotient pair), ``tables`` (built-in coefficient tables).  Output is a
human table by default or JSON with ``--format json``; the two carry the
same information and the rendering is deterministic byte for byte.

Exit status: 0 on success, 2 for malformed input (with a diagnostic naming
the offending key), 1 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .extension import ExtensionProblem, enumerate_extensions
from .fgab import (
    FgGroup,
    GroupHom,
    IntMatrix,
    LocalizationRing,
    format_group,
    smith_normal_form,
)
from .tables import HOPF_SU2_M2, U2_GENERATORS, builtin_problem, u2_homotopy
from .wang import (
    DegreeResult,
    Grading,
    WangProblem,
    localize_problem,
    solve_homotopy_range,
    solve_ktheory,
)


class InputError(ValueError):
    """Bad user input; ``where`` names the offending key or flag."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


# ---------------------------------------------------------------------------
# Literals


def group_to_json(g: FgGroup, free_symbol: str = "\u2124") -> dict[str, Any]:
    return {
        "rank": g.rank,
        "torsion": list(g.torsion),
        "name": format_group(g, free_symbol),
    }


def group_from_json(value: Any, where: str) -> FgGroup:
    if not isinstance(value, dict):
        raise InputError(where, "group literal must be an object with rank/torsion")
    extra = set(value) - {"rank", "torsion", "name"}
    if extra:
        raise InputError(where, f"unknown keys {sorted(extra)}")
    rank = value.get("rank", 0)
    torsion = value.get("torsion", [])
    if not isinstance(rank, int) or rank < 0:
        raise InputError(f"{where}.rank", "must be a nonnegative integer")
    if not isinstance(torsion, list) or not all(isinstance(t, int) for t in torsion):
        raise InputError(f"{where}.torsion", "must be a list of integers")
    try:
        return FgGroup(rank, tuple(torsion))
    except ValueError as exc:
        raise InputError(f"{where}.torsion", str(exc)) from exc


def parse_group_arg(text: str, where: str) -> FgGroup:
    """Command-line group literal ``rank,[d1,d2,...]``."""
    head, sep, tail = text.partition(",")
    if not sep:
        raise InputError(where, f"expected rank,[d1,d2,...], got {text!r}")
    try:
        rank = int(head)
        torsion = json.loads(tail)
    except ValueError as exc:
        raise InputError(where, f"expected rank,[d1,d2,...], got {text!r}") from exc
    return group_from_json({"rank": rank, "torsion": torsion}, where)


def matrix_from_json(value: Any, where: str, rows: int, cols: int) -> IntMatrix:
    if not (
        isinstance(value, list)
        and all(isinstance(r, list) and all(isinstance(e, int) for e in r) for r in value)
    ):
        raise InputError(where, "matrix must be a nested list of integers")
    if len(value) != rows or any(len(r) != cols for r in value):
        raise InputError(where, f"matrix must be {rows}x{cols}")
    return IntMatrix.from_rows(value, cols)


def ring_from_json(value: Any, where: str) -> LocalizationRing:
    if not isinstance(value, dict) or set(value) != {"invert"}:
        raise InputError(where, 'expected {"invert": "all"} or {"invert": [primes]}')
    inv = value["invert"]
    if inv == "all":
        return LocalizationRing.rationals()
    if isinstance(inv, list) and all(isinstance(p, int) for p in inv):
        try:
            return LocalizationRing.inverting(inv)
        except ValueError as exc:
            raise InputError(f"{where}.invert", str(exc)) from exc
    raise InputError(f"{where}.invert", 'must be "all" or a list of primes')


def parse_ring_arg(text: str, where: str) -> LocalizationRing:
    if text.strip() == "all":
        return LocalizationRing.rationals()
    try:
        primes = [int(p) for p in text.split(",") if p.strip()]
        return LocalizationRing.inverting(primes)
    except ValueError as exc:
        raise InputError(where, str(exc)) from exc


# ---------------------------------------------------------------------------
# Problem files


def load_problem(doc: Any) -> tuple[WangProblem, set[str]]:
    """Build a WangProblem from a parsed problem file.

    Returns the problem and a set of provenance tags recording which
    built-in rules were invoked (used for report notes).
    """
    if not isinstance(doc, dict):
        raise InputError("$", "problem file must be a JSON object")
    tags: set[str] = set()

    if "builtin" in doc:
        extra = set(doc) - {"builtin", "localize"}
        if extra:
            raise InputError("$", f"unknown keys {sorted(extra)} beside builtin")
        try:
            problem = builtin_problem(doc["builtin"])
        except ValueError as exc:
            raise InputError("builtin", str(exc)) from exc
        tags.add("builtin")
        if "localize" in doc:
            problem = localize_problem(problem, ring_from_json(doc["localize"], "localize"))
        return problem, tags

    extra = set(doc) - {"kind", "k", "localize", "coefficients", "differential"}
    if extra:
        raise InputError("$", f"unknown keys {sorted(extra)}")
    kind = doc.get("kind")
    if kind not in ("homotopy", "ktheory"):
        raise InputError("kind", 'must be "homotopy" or "ktheory"')
    k = doc.get("k")
    if not isinstance(k, int) or k < 2:
        raise InputError("k", "must be an integer >= 2")
    if "coefficients" not in doc:
        raise InputError("coefficients", "missing")

    if kind == "homotopy":
        problem = _load_homotopy(doc, k, tags)
    else:
        problem = _load_ktheory(doc, k, tags)

    if "localize" in doc:
        problem = localize_problem(problem, ring_from_json(doc["localize"], "localize"))
    return problem, tags


def _load_homotopy(doc: dict, k: int, tags: set[str]) -> WangProblem:
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, dict) or set(coeffs) != {"q_min", "q_max", "groups"}:
        raise InputError("coefficients", "expected q_min, q_max and groups")
    q_min, q_max, groups = coeffs["q_min"], coeffs["q_max"], coeffs["groups"]
    if not (isinstance(q_min, int) and isinstance(q_max, int) and q_min <= q_max):
        raise InputError("coefficients.q_min", "need integers q_min <= q_max")
    if not isinstance(groups, list) or len(groups) != q_max - q_min + 1:
        raise InputError(
            "coefficients.groups", f"expected {q_max - q_min + 1} group literals"
        )
    table = {
        q_min + i: group_from_json(lit, f"coefficients.groups[{i}]")
        for i, lit in enumerate(groups)
    }

    raw = doc.get("differential", [])
    diffs: dict[int, GroupHom] = {}
    if isinstance(raw, dict) and "builtin" in raw:
        try:
            base = builtin_problem(raw["builtin"])
        except ValueError as exc:
            raise InputError("differential.builtin", str(exc)) from exc
        tags.add("builtin")
        if base.k != k:
            raise InputError("differential.builtin", f"builtin differential has k = {base.k}")
        for n, hom in base.differentials:
            if table.get(n) == hom.source and table.get(n + k - 1) == hom.target:
                diffs[n] = hom
            else:
                raise InputError(
                    "differential.builtin",
                    f"coefficient groups at degrees {n}, {n + k - 1} do not match the builtin",
                )
    elif isinstance(raw, list):
        for i, entry in enumerate(raw):
            where = f"differential[{i}]"
            if not isinstance(entry, dict) or set(entry) != {"degree", "matrix"}:
                raise InputError(where, "expected degree and matrix")
            n = entry["degree"]
            if not isinstance(n, int) or n not in table or (n + k - 1) not in table:
                raise InputError(
                    f"{where}.degree",
                    "degree and degree+k-1 must both carry coefficient groups",
                )
            src, tgt = table[n], table[n + k - 1]
            mat = matrix_from_json(
                entry["matrix"], f"{where}.matrix", tgt.n_generators, src.n_generators
            )
            diffs[n] = GroupHom(src, tgt, mat)
    else:
        raise InputError("differential", "expected a list of entries or a builtin reference")

    try:
        return WangProblem.homotopy(k=k, coefficients=table, differentials=diffs)
    except ValueError as exc:
        raise InputError("differential", str(exc)) from exc


def _load_ktheory(doc: dict, k: int, tags: set[str]) -> WangProblem:
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, dict) or set(coeffs) != {"K0", "K1"}:
        raise InputError("coefficients", "expected K0 and K1 group literals")
    k0 = group_from_json(coeffs["K0"], "coefficients.K0")
    k1 = group_from_json(coeffs["K1"], "coefficients.K1")

    raw = doc.get("differential", [])
    d0 = d1 = None
    if isinstance(raw, dict) and "dixmier_douady" in raw:
        if set(raw) != {"dixmier_douady"}:
            raise InputError("differential", "unknown keys beside dixmier_douady")
        delta = raw["dixmier_douady"]
        if not isinstance(delta, int):
            raise InputError("differential.dixmier_douady", "must be an integer")
        if k != 3:
            raise InputError(
                "differential.dixmier_douady",
                "the Dixmier-Douady rule is the k = 3 differential; set k to 3",
            )
        from .wang import d3_from_dixmier_douady

        d0, d1 = d3_from_dixmier_douady(delta, k0, k1)
        tags.add("dixmier_douady")
    elif isinstance(raw, list):
        parity_groups = {0: k0, 1: k1}
        for i, entry in enumerate(raw):
            where = f"differential[{i}]"
            if not isinstance(entry, dict) or set(entry) != {"degree", "matrix"}:
                raise InputError(where, "expected degree and matrix")
            p = entry["degree"]
            if p not in (0, 1):
                raise InputError(f"{where}.degree", "K-theory degrees are 0 and 1")
            src = parity_groups[p]
            tgt = parity_groups[(p + k - 1) % 2]
            mat = matrix_from_json(
                entry["matrix"], f"{where}.matrix", tgt.n_generators, src.n_generators
            )
            if p == 0:
                d0 = GroupHom(src, tgt, mat)
            else:
                d1 = GroupHom(src, tgt, mat)
    else:
        raise InputError(
            "differential", "expected a list of entries or a dixmier_douady rule"
        )

    try:
        return WangProblem.ktheory(k=k, k0=k0, k1=k1, d0=d0, d1=d1)
    except ValueError as exc:
        raise InputError("differential", str(exc)) from exc


# ---------------------------------------------------------------------------
# Reports


def _degree_record(label: Any, result: DegreeResult, free_symbol: str) -> dict[str, Any]:
    if result.sub is None:
        return {
            "n": label,
            "sub": None,
            "quot": None,
            "candidates": [],
            "status": result.status,
        }
    return {
        "n": label,
        "sub": group_to_json(result.sub, free_symbol),
        "quot": group_to_json(result.quot, free_symbol),
        "candidates": [group_to_json(c, free_symbol) for c in result.candidates],
        "status": result.status,
    }


def _notes(problem: WangProblem, tags: set[str]) -> list[str]:
    notes = []
    if "builtin" in tags:
        notes.append(
            "differential: pairing with the clutching class iota of the "
            "quaternionic Hopf bundle; nonzero values [iota,iota] = a6 and "
            "[iota,a6] = a9 (I. M. James), degrees 4 and 5 by composition "
            "with eta, the rest zero by order or nilpotency arguments."
        )
    if "dixmier_douady" in tags:
        notes.append(
            "k = 3 differential: multiplication by -Delta, Delta the "
            "Dixmier-Douady integer; the sign changes no kernel or cokernel."
        )
    if problem.grading is Grading.KTHEORY:
        k1 = problem.coefficient(1)
        k0 = problem.coefficient(0)
        if problem.k % 2 == 0 and k1.is_trivial:
            notes.append(
                "k even and K1(B) = 0 force the differential to vanish (it "
                "changes parity), so K1(A) = 0 and K0(A) is an extension of "
                "K0(B) by K0(B)."
            )
            if k0.rank:
                notes.append(
                    "caution: the degenerate sequence forces rank K0(A) = "
                    "2*rank K0(B) (e.g. Z^2 for the quaternionic Hopf bundle "
                    "with fibre M2); the frequently quoted K0 = Z for that "
                    "bundle is inconsistent with exactness and is not "
                    "reproduced here."
                )
        if problem.k == 3 and all(
            d.is_zero_map() for _, d in
            ((0, problem.differential(0)), (1, problem.differential(1)))
        ):
            notes.append(
                "zero differential: the sequence splits into 0 -> K(n+1)(B) "
                "-> Kn(A) -> Kn(B) -> 0; for (K0, K1) = (Z, 0) this gives "
                "K1(A) = Z, the odd K-group of the 3-sphere.  Trichotomies "
                "quoting K1(A) = 0 in the untwisted case conflict with "
                "exactness."
            )
    if problem.grading is Grading.HOMOTOPY:
        results = solve_homotopy_range(problem)
        if any(len(r.candidates) > 1 for r in results):
            notes.append(
                "ambiguous degrees list every middle group compatible with "
                "the sub/quot pair; the sequence determines no more."
            )
    return notes


def build_report(problem: WangProblem, tags: set[str]) -> dict[str, Any]:
    ring = str(problem.localization)
    if problem.grading is Grading.HOMOTOPY:
        degrees = [
            _degree_record(r.degree, r, ring) for r in solve_homotopy_range(problem)
        ]
        return {
            "kind": "homotopy",
            "k": problem.k,
            "ring": ring,
            "degrees": degrees,
            "notes": _notes(problem, tags),
        }
    solved = solve_ktheory(problem)
    return {
        "kind": "ktheory",
        "k": problem.k,
        "ring": ring,
        "K0": _degree_record("K0", solved.k0, ring),
        "K1": _degree_record("K1", solved.k1, ring),
        "notes": _notes(problem, tags),
    }


def _group_cell(lit: dict[str, Any] | None) -> str:
    return "-" if lit is None else lit["name"]


def _candidates_cell(candidates: list[dict[str, Any]]) -> str:
    return " or ".join(c["name"] for c in candidates) if candidates else "-"


def render_report_table(report: dict[str, Any]) -> str:
    lines = [
        "wang sequence report",
        f"kind: {report['kind']}",
        f"k: {report['k']}",
        f"ring: {report['ring']}",
    ]
    records = (
        report["degrees"]
        if report["kind"] == "homotopy"
        else [report["K0"], report["K1"]]
    )
    rows = [["n", "sub", "quot", "candidates", "status"]]
    for rec in records:
        rows.append(
            [
                str(rec["n"]),
                _group_cell(rec["sub"]),
                _group_cell(rec["quot"]),
                _candidates_cell(rec["candidates"]),
                rec["status"],
            ]
        )
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines.append("")
    for r in rows:
        lines.append(" | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    if report["notes"]:
        lines.append("")
        lines.append("notes:")
        for note in report["notes"]:
            lines.append(f"- {note}")
    return "\n".join(lines) + "\n"


def parse_report_table(text: str) -> dict[str, Any]:
    """Inverse of :func:`render_report_table` (used to check that the two
    output formats carry identical information)."""
    from .fgab import parse_group_name

    lines = text.splitlines()
    assert lines[0] == "wang sequence report"
    kind = lines[1].split(": ", 1)[1]
    k = int(lines[2].split(": ", 1)[1])
    ring = lines[3].split(": ", 1)[1]

    def parse_cell(cell: str) -> dict[str, Any] | None:
        cell = cell.strip()
        if cell == "-":
            return None
        return group_to_json(parse_group_name(cell, ring), ring)

    records = []
    i = 6  # skip blank line and header row
    while i < len(lines) and lines[i].strip():
        cells = [c.strip() for c in lines[i].split("|")]
        label = cells[0] if not cells[0].lstrip("-").isdigit() else int(cells[0])
        cands = (
            []
            if cells[3] == "-"
            else [
                group_to_json(parse_group_name(c, ring), ring)
                for c in cells[3].split(" or ")
            ]
        )
        records.append(
            {
                "n": label,
                "sub": parse_cell(cells[1]),
                "quot": parse_cell(cells[2]),
                "candidates": cands,
                "status": cells[4],
            }
        )
        i += 1
    notes = []
    if i < len(lines) - 1 and lines[i + 1] == "notes:":
        notes = [line[2:] for line in lines[i + 2 :] if line.startswith("- ")]
    report: dict[str, Any] = {"kind": kind, "k": k, "ring": ring}
    if kind == "homotopy":
        report["degrees"] = records
    else:
        report["K0"], report["K1"] = records
    report["notes"] = notes
    return report


# ---------------------------------------------------------------------------
# Subcommands


def _emit(payload: dict[str, Any], table: str, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(table)


def _cmd_solve(args, out) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError("--input", str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise InputError("--input", f"malformed JSON: {exc}") from exc
    problem, tags = load_problem(doc)
    if args.localize:
        problem = localize_problem(problem, parse_ring_arg(args.localize, "--localize"))
    report = build_report(problem, tags)
    _emit(report, render_report_table(report), args.format, out)
    return 0


def _cmd_example(args, out) -> int:
    try:
        problem = builtin_problem(args.name)
    except ValueError as exc:
        raise InputError("name", str(exc)) from exc
    if args.localize:
        problem = localize_problem(problem, parse_ring_arg(args.localize, "--localize"))
    report = build_report(problem, {"builtin"})
    _emit(report, render_report_table(report), args.format, out)
    return 0


def _cmd_snf(args, out) -> int:
    try:
        raw = json.loads(args.matrix)
    except json.JSONDecodeError as exc:
        raise InputError("--matrix", f"malformed JSON: {exc}") from exc
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise InputError("--matrix", "expected a nested list of integers")
    rows = len(raw)
    cols = len(raw[0]) if raw else 0
    mat = matrix_from_json(raw, "--matrix", rows, cols)
    dec = smith_normal_form(mat)
    payload = {
        "U": dec.U.to_rows(),
        "D": dec.D.to_rows(),
        "V": dec.V.to_rows(),
        "invariant_factors": list(dec.invariant_factors),
    }
    table_lines = []
    for label in ("U", "D", "V"):
        table_lines.append(f"{label}:")
        for row in payload[label]:
            table_lines.append("  " + " ".join(str(e) for e in row))
    table_lines.append(f"invariant factors: {list(dec.invariant_factors)}")
    _emit(payload, "\n".join(table_lines) + "\n", args.format, out)
    return 0


def _cmd_ext(args, out) -> int:
    sub = parse_group_arg(args.sub, "--sub")
    quot = parse_group_arg(args.quot, "--quot")
    answer = enumerate_extensions(ExtensionProblem(sub=sub, quot=quot))
    payload = {
        "sub": group_to_json(sub),
        "quot": group_to_json(quot),
        "candidates": [group_to_json(c) for c in answer.candidates],
        "split_member": group_to_json(answer.split_member),
        "forced_unique": answer.forced_unique,
    }
    table = (
        f"extensions of {format_group(quot)} by {format_group(sub)}:\n"
        + "".join(f"- {group_to_json(c)['name']}\n" for c in answer.candidates)
        + f"split member: {format_group(answer.split_member)}\n"
        + f"forced unique: {'yes' if answer.forced_unique else 'no'}\n"
    )
    _emit(payload, table, args.format, out)
    return 0


def _cmd_tables(args, out) -> int:
    if args.table != "u2":
        raise InputError("table", f"unknown table {args.table!r}")
    lo, hi = 1, 12
    if args.range:
        head, sep, tail = args.range.partition("..")
        if not sep:
            raise InputError("--range", f"expected a..b, got {args.range!r}")
        try:
            lo, hi = int(head), int(tail)
        except ValueError as exc:
            raise InputError("--range", f"expected a..b, got {args.range!r}") from exc
    if not (1 <= lo <= hi <= 12):
        raise InputError("--range", "tabulated degrees are 1..12")
    entries = []
    for n in range(lo, hi + 1):
        g = u2_homotopy(n)
        labels = [gen.label for gen in U2_GENERATORS if gen.degree == n]
        entries.append({"n": n, "group": group_to_json(g), "generators": labels})
    payload = {"table": "u2", "entries": entries}
    lines = ["homotopy of U(2)"]
    for e in entries:
        gens = ", ".join(e["generators"]) if e["generators"] else "-"
        lines.append(f"{e['n']:>2} | {e['group']['name']} | {gens}")
    _emit(payload, "\n".join(lines) + "\n", args.format, out)
    return 0


# ---------------------------------------------------------------------------
# Entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wangseq",
        description="Wang exact-sequence calculus for bundles over spheres",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    p_solve = sub.add_parser("solve", help="solve a JSON problem file")
    p_solve.add_argument("--input", required=True, help="path to the problem file")
    p_solve.add_argument("--localize", help='"all" or a comma-separated prime list')
    add_common(p_solve)

    p_example = sub.add_parser("example", help="solve a built-in example")
    p_example.add_argument("name", help=f"example name, e.g. hopf-m2 ({HOPF_SU2_M2})")
    p_example.add_argument("--localize", help='"all" or a comma-separated prime list')
    add_common(p_example)

    p_snf = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p_snf.add_argument("--matrix", required=True, help="JSON nested list")
    add_common(p_snf)

    p_ext = sub.add_parser("ext", help="extension classes for a sub/quotient pair")
    p_ext.add_argument("--sub", required=True, help='group literal "rank,[d1,...]"')
    p_ext.add_argument("--quot", required=True, help='group literal "rank,[d1,...]"')
    add_common(p_ext)

    p_tables = sub.add_parser("tables", help="print built-in coefficient tables")
    p_tables.add_argument("table", help="table name (u2)")
    p_tables.add_argument("--range", help="degree range a..b (default 1..12)")
    add_common(p_tables)

    return parser


_COMMANDS = {
    "solve": _cmd_solve,
    "example": _cmd_example,
    "snf": _cmd_snf,
    "ext": _cmd_ext,
    "tables": _cmd_tables,
}


def run(argv: list[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostic
        err.write(f"internal error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
