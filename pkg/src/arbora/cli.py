"""Command-line interface.

Exit status: 0 for success or a true outcome, 1 for a false, failed or
inconclusive outcome, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import analysis, decision, mfamily, render
from .wreath import Presentation, dump_presentation, format_vertex, load_presentation, parse_vertex


class InputError(Exception):
    pass


def load_group(source: str) -> Presentation:
    """A group file path, or ``m:d`` for the built-in M(d)."""
    if mfamily.is_builtin(source):
        return mfamily.build_m(int(source.split(":")[1]))
    path = Path(source)
    if not path.is_file():
        raise InputError(f"no such group file: {source} (use a path or m:d)")
    return load_presentation(path.read_text(encoding="utf-8"), label=str(path))


def _bool(value) -> str:
    return "unknown" if value is None else str(bool(value)).lower()


def _decomposition(P: Presentation, w) -> str:
    secs, root = P.decompose(w)
    return "(" + ", ".join(P.format(s) for s in secs) + ")" + str(root)


# --- verbs -------------------------------------------------------------------

def cmd_group_show(args, out):
    P = load_group(args.group)
    out.write(dump_presentation(P))
    out.write(f"# letter-bounded: {_bool(P.letter_bounded)}\n")
    return 0


def cmd_eval(args, out):
    P = load_group(args.group)
    w = P.word(args.word)
    out.write(f"{P.format(w)} = {_decomposition(P, w)}\n")
    return 0


def cmd_act(args, out):
    P = load_group(args.group)
    v = parse_vertex(args.vertex, P.degree)
    out.write(format_vertex(P.act(P.word(args.word), v)) + "\n")
    return 0


def cmd_section(args, out):
    P = load_group(args.group)
    v = parse_vertex(args.vertex, P.degree)
    out.write(P.format(P.section_at(P.word(args.word), v)) + "\n")
    return 0


def cmd_portrait(args, out):
    P = load_group(args.group)
    w = P.word(args.word)
    p = P.portrait(w, args.depth)
    if args.png:
        render.save_portraits_figure([(args.word, p)], args.png, columns=1)
    if args.dot:
        out.write(render.portrait_to_dot(p))
    else:
        for path, label in p.labels():
            out.write(f"{format_vertex(path)}\t{label}\n")
    return 0


def cmd_identity(args, out):
    P = load_group(args.group)
    res = decision.is_identity(P, P.word(args.word))
    out.write(_bool(res) + "\n")
    return 0 if res is True else 1


def cmd_equal(args, out):
    P = load_group(args.group)
    res = decision.are_equal(P, P.word(args.w1), P.word(args.w2))
    out.write(_bool(res) + "\n")
    return 0 if res is True else 1


def cmd_order(args, out):
    P = load_group(args.group)
    res = decision.order_bounded(P, P.word(args.word), args.bound)
    out.write(str(res) + "\n")
    return 1 if res.kind == "ExceedsBound" else 0


def cmd_certify(args, out):
    P = load_group(args.group)
    w = P.word(args.word)
    if decision.is_identity(P, w) is not False:
        raise InputError("element is trivial (or undecided); nothing to certify")
    if args.kind == "infinite-order":
        cert = decision.infinite_order_certificate(P, w, args.depth)
        if cert is None:
            out.write("NotFound\n")
            return 1
        out.write(cert.describe(P) + "\n")
        return 0
    cert = analysis.non_contraction_certificate(P, w, args.powers, args.self_depth)
    if cert is None:
        out.write("NotFound\n")
        return 1
    out.write(cert.describe(P) + "\n")
    out.write("non-contracting: every power of the element is its own section along the vertex\n")
    return 0


def cmd_orbit(args, out):
    P = load_group(args.group)
    sizes = [(n, analysis.level_orbit_size(P, n)) for n in range(1, args.level + 1)]
    size = sizes[-1][1] if sizes else 1
    total = P.degree**args.level
    out.write(f"level {args.level}: orbit size {size} of {total}\n")
    out.write(f"transitive: {_bool(size == total)}\n")
    if args.png:
        render.save_orbit_figure(sizes, P.degree, args.png, title=P.label)
    return 0 if size == total else 1


def cmd_nucleus(args, out):
    P = load_group(args.group)
    res = analysis.nucleus_search(P, args.max_size, args.max_depth)
    out.write(str(res) + "\n")
    if res.kind == "Contracting":
        for w in res.nucleus:
            out.write(f"  {P.format(w)}\n")
        return 0
    out.write("evidence (elements added, in order):\n")
    for w in res.evidence[:20]:
        out.write(f"  {P.format(w)}\n")
    if len(res.evidence) > 20:
        out.write(f"  ... {len(res.evidence) - 20} more\n")
    if res.self_section:
        w, v = res.self_section
        out.write(f"self-section: {P.format(w)} at vertex {format_vertex(v)}\n")
    return 1


def _generic_battery(P: Presentation):
    items = []

    def item(name, fn):
        t0 = time.perf_counter()
        ok, detail = fn()
        items.append(mfamily.ReportItem(name, P.degree, ok, [], time.perf_counter() - t0, detail))

    item("presentation.letter_bounded", lambda: (True, _bool(P.letter_bounded)))
    levels = [n for n in range(1, 7) if P.degree**n <= 4096]
    for n in levels:
        item(f"transitive.level_{n}", lambda n=n: (analysis.level_transitive(P, n), ""))
    for g, name in enumerate(P.names):
        w = P.generators()[g]
        item(f"order.{name}", lambda w=w: (True, str(decision.order_bounded(P, w, 64))))
    item("nucleus", lambda: (True, str(analysis.nucleus_search(P, 200, 8))))
    items.sort(key=lambda it: it.name)
    return mfamily.GoldenReport(items)


def cmd_verify(args, out):
    P = load_group(args.group)
    d = mfamily.builtin_degree(P)
    t0 = time.perf_counter()
    report = mfamily.paper_identity_suite(d, P) if d else _generic_battery(P)
    elapsed = time.perf_counter() - t0
    header = ["item", "d", "status", "detail", "witness"]
    if args.timings:
        header.insert(3, "seconds")
    out.write("\t".join(header) + "\n")
    for it in report.items:
        row = [it.name, str(it.d), "PASS" if it.passed else "FAIL", it.detail, "; ".join(it.witnesses)]
        if args.timings:
            row.insert(3, f"{it.elapsed:.4f}")
        out.write("\t".join(row) + "\n")
    n_fail = len(report.failures())
    out.write(f"# {len(report.items)} items, {n_fail} failed\n")
    if args.timings:
        out.write(f"# total {elapsed:.3f} s\n")
    if args.figures:
        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        depth = 2 if P.degree <= 4 else 1
        panels = [(name, P.portrait(w, depth)) for name, w in zip(P.names, P.generators())]
        tag = f"m{d}" if d else Path(P.label or "group").stem
        render.save_portraits_figure(panels, fig_dir / f"{tag}_generators.png")
        levels = [n for n in range(1, 9) if P.degree**n <= 1 << 16]
        sizes = [(n, analysis.level_orbit_size(P, n)) for n in levels]
        render.save_orbit_figure(sizes, P.degree, fig_dir / f"{tag}_orbits.png", title=P.label)
    return 0 if report.passed else 1


def cmd_scan_torsion(args, out):
    P = load_group(args.group)
    found = analysis.torsion_scan(P, args.max_len, args.max_order)
    for w, n in found:
        out.write(f"{P.format(w)}\t{n}\n")
    out.write(f"# {len(found)} elements of finite order found\n")
    return 0


def cmd_exponents(args, out):
    P = load_group(args.group)
    e = mfamily.abelianization_exponents(P, P.word(args.word))
    out.write("(" + ", ".join(map(str, e)) + ")\n")
    return 0


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arbora", description="Self-similar groups of tree automorphisms.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help, word=False, vertex=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("group", help="group file or m:d")
        if word:
            p.add_argument("word")
        if vertex:
            p.add_argument("vertex")
        p.set_defaults(fn=fn)
        return p

    g = sub.add_parser("group", help="group inspection")
    gsub = g.add_subparsers(dest="action", required=True)
    show = gsub.add_parser("show", help="print the wreath recursion table")
    show.add_argument("group")
    show.set_defaults(fn=cmd_group_show)

    verb("eval", cmd_eval, "first-level decomposition of a word", word=True)
    verb("act", cmd_act, "image of a vertex", word=True, vertex=True)
    verb("section", cmd_section, "section at a vertex", word=True, vertex=True)
    p = verb("portrait", cmd_portrait, "portrait to a given depth", word=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p.add_argument("--png", help="also render the portrait to this image file")
    verb("identity", cmd_identity, "is the word trivial", word=True)
    p = verb("equal", cmd_equal, "do two words define the same element")
    p.add_argument("w1")
    p.add_argument("w2")
    p = verb("order", cmd_order, "bounded order search", word=True)
    p.add_argument("--bound", type=int, default=64)

    c = sub.add_parser("certify", help="certificates")
    csub = c.add_subparsers(dest="kind", required=True)
    p = csub.add_parser("infinite-order")
    p.add_argument("group")
    p.add_argument("word")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(fn=cmd_certify)
    p = csub.add_parser("non-contracting")
    p.add_argument("group")
    p.add_argument("word")
    p.add_argument("--powers", type=int, default=20)
    p.add_argument("--self-depth", type=int, default=4)
    p.set_defaults(fn=cmd_certify)

    p = verb("orbit", cmd_orbit, "orbit of 1...1 on a level")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--png", help="plot orbit sizes per level to this image file")
    p = verb("nucleus", cmd_nucleus, "bounded nucleus search")
    p.add_argument("--max-size", type=int, default=200)
    p.add_argument("--max-depth", type=int, default=8)
    p = verb("verify", cmd_verify, "identity suite (m:d) or generic checks (file)")
    p.add_argument("--timings", action="store_true", help="include wall-clock columns")
    p.add_argument("--figures", help="directory for generator portrait and orbit figures")
    p = verb("scan-torsion", cmd_scan_torsion, "search short words for torsion")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-order", type=int, required=True)
    verb("exponents", cmd_exponents, "exponent sums per generator", word=True)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except (InputError, ValueError, OSError, analysis.BudgetExceeded) as exc:
        err.write(f"arbora: error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
