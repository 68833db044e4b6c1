"""Command-line front end: `scroll-acm <command> ...`.

Exit codes: 0 success, 2 bad input, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .chern import ChernCharacter, ch_line, ch_shift, euler_pairing
from .descriptors import BundleDescriptor, format_fraction
from .errors import InconsistentState, ScrollAcmError
from .kronrep import fibonacci, psi, rigid_dimension_test
from .mutation import enumerate_rigid, h_bundle, kfrak_member, rigid_bundle
from .pencil import MatrixPencil, classify_quartic_ulrich, kw_decompose, quartic_acm_catalog, verify_equivalence
from .surface import DivisorClass, Scroll, cohomology


class UsageError(ScrollAcmError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_scroll(text: str) -> Scroll:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--scroll expects a,b (as in S(a,b)), got {text!r}")
    return Scroll.from_ab(a, b)


def _keyvals(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, sep, val = part.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {part!r}")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise UsageError(f"{key.strip()} must be an integer, got {val!r}")
    return out


def parse_divisor(text: str) -> DivisorClass:
    kv = _keyvals(text)
    if set(kv) - {"H", "F"}:
        raise UsageError(f"divisor keys are H and F, got {sorted(kv)}")
    return DivisorClass(kv.get("H", 0), kv.get("F", 0))


def parse_character(s: Scroll, text: str) -> ChernCharacter:
    """Either a line bundle `H=a,F=b[,shift=1]` or a character `rank=r,H=a,F=b,ch2x2=c`."""
    kv = _keyvals(text)
    if set(kv) - {"H", "F", "shift", "rank", "ch2x2"}:
        raise UsageError(f"unknown character keys in {text!r}")
    d = DivisorClass(kv.get("H", 0), kv.get("F", 0))
    if "rank" in kv:
        ch = ChernCharacter(kv["rank"], d, kv.get("ch2x2", 0))
    else:
        ch = ch_line(s, d)
    return ch_shift(ch) if kv.get("shift", 0) % 2 else ch


def parse_word(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--word expects comma-separated integers, got {text!r}")


def load_pencil(path: str) -> MatrixPencil:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            data = json.load(fh)
        return MatrixPencil.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ScrollAcmError):
            raise
        raise UsageError(f"cannot read pencil file {path!r}: {exc}")


# ---------------------------------------------------------------------------
# output


def _emit(args, payload: dict, table: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in table:
            print(line)


def _descriptor_table(ds: Sequence[BundleDescriptor]) -> list[str]:
    head = f"{'name':<22} {'tag':<12} {'rank':>6}  {'c1':<16} {'slope':>12}  {'a':>5} {'b':>5}  rigid exc"
    lines = [head, "-" * len(head)]
    for d in ds:
        a = "" if d.a is None else str(d.a)
        b = "" if d.b is None else str(d.b)
        lines.append(
            f"{d.name:<22} {d.tag:<12} {d.rank:>6}  {str(d.c1):<16} {format_fraction(d.slope):>12}  {a:>5} {b:>5}"
            f"  {'yes' if d.rigid else 'no':<5} {'yes' if d.exceptional else 'no'}"
        )
    return lines


# ---------------------------------------------------------------------------
# commands


def cmd_cohom(args) -> int:
    s = parse_scroll(args.scroll)
    d = parse_divisor(args.div)
    h = cohomology(s, d)
    chi = h[0] - h[1] + h[2]
    _emit(args, {"scroll": s.to_json(), "divisor": d.to_json(), "h": list(h), "chi": chi},
          [f"{h[0]} {h[1]} {h[2]}", f"chi {chi}"])
    return 0


def cmd_euler(args) -> int:
    s = parse_scroll(args.scroll)
    e = parse_character(s, args.e)
    f = parse_character(s, args.f)
    chi = euler_pairing(s, e, f)
    _emit(args, {"scroll": s.to_json(), "e": e.to_json(), "f": f.to_json(), "chi": chi}, [str(chi)])
    return 0


def cmd_pencil_decompose(args) -> int:
    m = load_pencil(args.file)
    dec = kw_decompose(m)
    verified = None
    if args.verify:
        verified = verify_equivalence(dec, m)
    payload = dec.to_json(witnesses=not args.no_witness)
    payload["rows"], payload["cols"] = m.rows, m.cols
    if verified is not None:
        payload["verified"] = verified
    table = [f"{m.rows} x {m.cols} pencil"]
    for blk, mult in dec.grouped():
        table.append(f"  {blk}" + (f" x{mult}" if mult > 1 else ""))
    table.append(f"zero part {dec.zero_part[0]} x {dec.zero_part[1]}")
    if verified is not None:
        table.append("verified" if verified else "VERIFICATION FAILED")
    _emit(args, payload, table)
    if verified is False:
        print("error: witness check failed", file=sys.stderr)
        return 3
    return 0


def cmd_ulrich_classify(args) -> int:
    s = parse_scroll(args.scroll)
    ds = classify_quartic_ulrich(s, load_pencil(args.file))
    _emit(args, {"scroll": s.to_json(), "descriptors": [d.to_json() for d in ds]}, _descriptor_table(ds))
    return 0


def cmd_catalog(args) -> int:
    s = parse_scroll(args.scroll)
    ds = quartic_acm_catalog(s)
    table = _descriptor_table(ds)
    for d in ds:
        if d.extension and "ext1" in d.extension:
            sub = DivisorClass.from_json(d.extension["sub"])
            table.append(f"{d.name}: extension of L by O({sub}), ext^1 = {d.extension['ext1']}")
    _emit(args, {"scroll": s.to_json(), "descriptors": [d.to_json() for d in ds]}, table)
    return 0


def cmd_kfrak(args) -> int:
    s = parse_scroll(args.scroll)
    word = parse_word(args.word)
    ok, t = kfrak_member(s, word)
    _emit(args, {"scroll": s.to_json(), "word": list(word), "member": ok, "failing_t": t},
          ["member" if ok else f"non-member at t={t}"])
    return 0


def cmd_rigid_enum(args) -> int:
    s = parse_scroll(args.scroll)
    if s.dX == 4:
        msg = f"{s.name} is a tame surface; use the `ulrich` and `catalog` commands"
        _emit(args, {"scroll": s.to_json(), "descriptors": [], "skipped": [], "notice": msg}, [msg])
        return 0
    res = enumerate_rigid(s, args.max_len, args.max_abs_k, args.max_rank)
    table = _descriptor_table(res.descriptors)
    table.append(f"{len(res.descriptors)} bundles from {res.visited} words; {len(res.skipped)} words skipped")
    payload = {
        "scroll": s.to_json(),
        "descriptors": [d.to_json() for d in res.descriptors],
        "skipped": [{"word": list(w), "reason": why} for w, why in res.skipped],
        "visited": res.visited,
    }
    _emit(args, payload, table)
    return 0


def cmd_rigid_show(args) -> int:
    s = parse_scroll(args.scroll)
    word = parse_word(args.word)
    d = h_bundle(s, word) if args.h else rigid_bundle(s, word)
    _emit(args, {"scroll": s.to_json(), "descriptors": [d.to_json()]}, _descriptor_table([d]))
    return 0


def cmd_fib(args) -> int:
    vals = [fibonacci(args.w, k) for k in range(0, args.k + 1)]
    _emit(args, {"w": args.w, "values": vals}, [" ".join(str(v) for v in vals)])
    return 0


def cmd_psi(args) -> int:
    value = psi(args.w, args.a, args.b)
    k = rigid_dimension_test(args.w, args.a, args.b) if args.w >= 2 and args.a >= 0 and args.b >= 0 and (args.a or args.b) else None
    line = f"{value}" + ("" if k is None else f"  (real Schur root, k={k})")
    _emit(args, {"w": args.w, "a": args.a, "b": args.b, "psi": value, "k": k}, [line])
    return 0


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("table", "json"), default="table")

    p = _Parser(prog="scroll-acm", description="ACM, Ulrich and rigid bundles on rational normal scrolls")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cohom", parents=[fmt], help="line bundle cohomology")
    c.add_argument("--scroll", required=True, help="a,b for S(a,b)")
    c.add_argument("--div", required=True, help="H=alpha,F=beta")
    c.set_defaults(func=cmd_cohom)

    c = sub.add_parser("euler", parents=[fmt], help="Euler pairing chi(E, F)")
    c.add_argument("--scroll", required=True)
    c.add_argument("--e", required=True, help="H=a,F=b[,shift=1] or rank=r,H=a,F=b,ch2x2=c")
    c.add_argument("--f", required=True)
    c.set_defaults(func=cmd_euler)

    pen = sub.add_parser("pencil", help="matrix pencils").add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = pen.add_parser("decompose", parents=[fmt], help="Kronecker-Weierstrass normal form")
    c.add_argument("file", help="pencil JSON file, - for stdin")
    c.add_argument("--verify", action="store_true", help="recheck the witness transformations")
    c.add_argument("--no-witness", action="store_true", help="omit P and Q from JSON output")
    c.set_defaults(func=cmd_pencil_decompose)

    c = sub.add_parser("ulrich", parents=[fmt], help="split the Ulrich bundle of a pencil on a quartic scroll")
    c.add_argument("--scroll", required=True)
    c.add_argument("file")
    c.set_defaults(func=cmd_ulrich_classify)

    c = sub.add_parser("catalog", parents=[fmt], help="indecomposable ACM types on a quartic scroll")
    c.add_argument("--scroll", required=True)
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("kfrak", parents=[fmt], help="membership of a braid word in the admissible set")
    c.add_argument("--scroll", required=True)
    c.add_argument("--word", required=True, help="k1,k2,...")
    c.set_defaults(func=cmd_kfrak)

    c = sub.add_parser("enumerate", parents=[fmt], help="rigid ACM bundles on a wild scroll")
    c.add_argument("--scroll", required=True)
    c.add_argument("--max-len", type=int, default=3)
    c.add_argument("--max-abs-k", type=int, default=3)
    c.add_argument("--max-rank", type=int, default=None)
    c.set_defaults(func=cmd_rigid_enum)
    c = sub.add_parser("rigid", parents=[fmt], help="one rigid bundle F_k (or H_k with --h)")
    c.add_argument("--scroll", required=True)
    c.add_argument("--word", required=True)
    c.add_argument("--h", action="store_true")
    c.set_defaults(func=cmd_rigid_show)

    c = sub.add_parser("fib", parents=[fmt], help="phi_(w,0..k)")
    c.add_argument("w", type=int)
    c.add_argument("k", type=int)
    c.set_defaults(func=cmd_fib)

    c = sub.add_parser("psi", parents=[fmt], help="psi(a, b) = w a b - a^2 - b^2 + 1")
    c.add_argument("w", type=int)
    c.add_argument("a", type=int)
    c.add_argument("b", type=int)
    c.set_defaults(func=cmd_psi)
    return p


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let `--word -3,2` through: argparse would read -3,2 as an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--word", "--div", "--e", "--f") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InconsistentState as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except ScrollAcmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
