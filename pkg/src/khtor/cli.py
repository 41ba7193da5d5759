"""Command-line front end.

    khtor rtorsion knot3_1
    khtor homology --pd my_link.txt --format json
    khtor jones link2a_1
    khtor corpus --cache-dir ~/.cache/khtor

Exit codes: 0 success, 1 corpus mismatch, 2 input error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .complex import build_complex
from .diagram import PDCode, PDError, builtin_table, corpus_names, diagram, parse_pd, render_pd
from .homology import (
    describe_group,
    evaluate_at_t_minus_one,
    format_laurent,
    integral_cohomology,
    kauffman_bracket_jones,
    khovanov_polynomial,
)
from .torsion import TorsionError, TorsionReport, link_torsion

log = logging.getLogger("khtor")

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
CACHE_ENV = "KHTOR_CACHE_DIR"
CACHE_VERSION = 1


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


# ---------------------------------------------------------------------------
# Input resolution


def resolve_input(name: str | None, pd_file: str | None) -> tuple[str, PDCode]:
    if (name is None) == (pd_file is None):
        raise InputError("give exactly one of a corpus name or --pd FILE")
    if name is not None:
        try:
            return name, builtin_table(name)
        except KeyError:
            raise InputError(f"unknown diagram {name!r}") from None
    try:
        text = Path(pd_file).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {pd_file}: {exc.strerror}") from None
    try:
        return Path(pd_file).stem, parse_pd(text)
    except PDError as exc:
        raise InputError(f"{pd_file}: {exc}") from None


def pd_hash(pd: PDCode) -> str:
    return hashlib.sha256(render_pd(pd).encode()).hexdigest()


# ---------------------------------------------------------------------------
# Torsion reports as plain data


def report_to_dict(name: str, report: TorsionReport) -> dict:
    return {
        "name": name,
        "rows": [
            {"q": row.q, "contributions": [str(c) for c in row.contributions], "torsion": str(row.torsion)}
            for row in report.rows
        ],
    }


def compute_torsion(name: str, pd: PDCode, workers: int = 1) -> dict:
    return report_to_dict(name, link_torsion(diagram(pd), workers=workers))


def cached_torsion(name: str, pd: PDCode, cache_dir: Path | None, workers: int = 1) -> dict:
    """Torsion report, read from or written to ``cache_dir`` when given."""
    if cache_dir is None:
        return compute_torsion(name, pd, workers)
    path = cache_dir / f"{pd_hash(pd)}.json"
    if path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("version") == CACHE_VERSION:
                log.info("cache hit: %s (%s)", name, path.name)
                return dict(data["report"], name=name)
        except (OSError, ValueError, KeyError):
            log.warning("ignoring unreadable cache file %s", path)
    data = compute_torsion(name, pd, workers)
    store(cache_dir, path, data)
    return data


def store(cache_dir: Path, path: Path, report: dict) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"version": CACHE_VERSION, "report": report}))
    tmp.replace(path)


# ---------------------------------------------------------------------------
# Rendering


def render_torsion(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "q", "torsion", "contributions"])
        for row in data["rows"]:
            w.writerow([data["name"], row["q"], row["torsion"], " ".join(row["contributions"])])
        return buf.getvalue()
    return "".join(
        "[{} \"{}\"]\n".format(" ".join(row["contributions"] + [row["torsion"]]), row["q"])
        for row in data["rows"]
    )


def parse_torsion_text(text: str) -> list[dict]:
    """Inverse of the text rendering, for round-trip checks."""
    rows = []
    for line in text.splitlines():
        body, q = line.strip()[1:-1].rsplit(" ", 1)
        *contributions, torsion = body.split()
        rows.append({"q": int(q.strip('"')), "contributions": contributions, "torsion": torsion})
    return rows


def homology_to_dict(name: str, pd: PDCode) -> dict:
    h = integral_cohomology(build_complex(diagram(pd)))
    groups = [
        {"r": r, "q": q, "free_rank": h.free_rank.get((r, q), 0),
         "torsion_coeffs": h.torsion_coeffs.get((r, q), [])}
        for r, q in h.degrees()
    ]
    by_q = [{"q": q, "free_rank": f, "torsion_coeffs": t} for q, (f, t) in h.by_q().items()]
    return {"name": name, "groups": groups, "by_q": by_q}


def render_homology(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "r", "q", "free_rank", "torsion_coeffs"])
        for g in data["groups"]:
            w.writerow([data["name"], g["r"], g["q"], g["free_rank"], " ".join(map(str, g["torsion_coeffs"]))])
        return buf.getvalue()
    return "".join(
        f"{g['q']}: {describe_group(g['free_rank'], g['torsion_coeffs'])}\n" for g in data["by_q"]
    )


def jones_to_dict(name: str, pd: PDCode) -> dict:
    d = diagram(pd)
    state_sum = kauffman_bracket_jones(d)
    from_kh = evaluate_at_t_minus_one(khovanov_polynomial(build_complex(d)))
    return {"name": name, "state_sum": format_laurent(state_sum),
            "khovanov_at_t_minus_one": format_laurent(from_kh), "agree": state_sum == from_kh}


def render_jones(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(data))
        w.writerow(list(data.values()))
        return buf.getvalue()
    return (f"state sum: {data['state_sum']}\n"
            f"Kh(-1, q): {data['khovanov_at_t_minus_one']}\n"
            f"{'agree' if data['agree'] else 'DISAGREE'}\n")


# ---------------------------------------------------------------------------
# Corpus regression


def load_expected(path: Path | None = None) -> dict[str, dict[int, Fraction]]:
    """Read ``name<TAB>q<TAB>p/q`` lines.

    Raises:
        InputError: on a missing file or a malformed line.
    """
    try:
        if path is None:
            text = resources.files("khtor").joinpath("data/expected_torsion.tsv").read_text()
        else:
            text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read expected values: {exc}") from None
    table: dict[str, dict[int, Fraction]] = {}
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            name, q, tau = line.split("\t")
            table.setdefault(name, {})[int(q)] = Fraction(tau)
        except ValueError:
            raise InputError(f"expected values, line {n}: cannot parse {line!r}") from None
    if not table:
        raise InputError("expected values file is empty")
    return table


def _corpus_job(item: tuple[str, PDCode]) -> dict:
    return compute_torsion(*item)


def run_corpus(cache_dir: Path | None, threads: int, expected_path: Path | None = None
               ) -> tuple[list[str], dict[str, dict]]:
    """Compute every entry with expected values; return mismatch messages and reports."""
    expected = load_expected(expected_path)
    known = set(corpus_names())
    missing = sorted(set(expected) - known)
    if missing:
        raise InputError(f"expected values name unknown diagrams: {', '.join(missing)}")
    names = [n for n in corpus_names() if n in expected]
    reports: dict[str, dict] = {}
    todo = []
    for name in names:
        pd = builtin_table(name)
        if cache_dir is not None and (cache_dir / f"{pd_hash(pd)}.json").exists():
            reports[name] = cached_torsion(name, pd, cache_dir)
        else:
            todo.append((name, pd))
    if threads > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            fresh = list(pool.map(_corpus_job, todo))
    else:
        fresh = [_corpus_job(item) for item in todo]
    for (name, pd), data in zip(todo, fresh):
        if cache_dir is not None:
            store(cache_dir, cache_dir / f"{pd_hash(pd)}.json", data)
        reports[name] = data

    problems = []
    for name in names:
        got = {row["q"]: Fraction(row["torsion"]) for row in reports[name]["rows"]}
        want = expected[name]
        if list(got) != sorted(want, reverse=True):
            problems.append(f"{name}: q labels {list(got)} != {sorted(want, reverse=True)}")
            continue
        for q, tau in want.items():
            if got[q] != tau:
                problems.append(f"{name}: q={q} torsion {got[q]} != {tau}")
    return problems, reports


def render_corpus(problems: list[str], reports: dict[str, dict], fmt: str) -> str:
    bad = {p.split(":")[0] for p in problems}
    if fmt == "json":
        return json.dumps({"entries": len(reports), "mismatches": problems,
                           "reports": list(reports.values())}) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "status"])
        for name in reports:
            w.writerow([name, "FAIL" if name in bad else "ok"])
        return buf.getvalue()
    lines = [f"{name:12s} {'FAIL' if name in bad else 'ok'}" for name in reports]
    lines += problems
    lines.append(f"{len(reports) - len(bad)}/{len(reports)} match")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Entry point


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help=f"cache directory (default: ${CACHE_ENV} if set)")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="khtor", description="Khovanov complexes and their Reidemeister torsion.")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd, help_ in (("rtorsion", "torsion of every q-subcomplex"),
                       ("homology", "integral Khovanov cohomology per q"),
                       ("jones", "Jones polynomial, two ways")):
        p = sub.add_parser(cmd, parents=[common], help=help_)
        p.add_argument("name", nargs="?", help="corpus entry, e.g. knot3_1")
        p.add_argument("--pd", metavar="FILE", help="read a PD code from FILE")
    p = sub.add_parser("corpus", parents=[common], help="check the bundled corpus against expected values")
    p.add_argument("--expected", type=Path, default=None, help="alternative expected-values file")
    p.add_argument("--list", action="store_true", help="list the corpus names and exit")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose or args.command == "corpus" else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    cache_dir = args.cache_dir or (Path(os.environ[CACHE_ENV]) if os.environ.get(CACHE_ENV) else None)
    try:
        if args.command == "corpus":
            if args.list:
                sys.stdout.write("".join(f"{n}\n" for n in corpus_names()))
                return EXIT_OK
            problems, reports = run_corpus(cache_dir, args.threads, args.expected)
            sys.stdout.write(render_corpus(problems, reports, args.format))
            return EXIT_MISMATCH if problems else EXIT_OK
        name, pd = resolve_input(args.name, args.pd)
        if args.command == "rtorsion":
            out = render_torsion(cached_torsion(name, pd, cache_dir, args.threads), args.format)
        elif args.command == "homology":
            out = render_homology(homology_to_dict(name, pd), args.format)
        else:
            data = jones_to_dict(name, pd)
            out = render_jones(data, args.format)
            if not data["agree"]:
                sys.stdout.write(out)
                return EXIT_INTERNAL
        sys.stdout.write(out)
        return EXIT_OK
    except (InputError, PDError) as exc:
        print(f"khtor: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TorsionError, AssertionError, ValueError) as exc:
        print(f"khtor: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
