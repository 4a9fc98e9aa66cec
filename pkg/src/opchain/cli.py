"""Command-line front end: build operads, run the checkers, emit tables.

Exit codes: 0 pass, 2 usage error, 3 unsupported request, 4 a verification
or construction failed inside the engine.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .homcore import CoefficientRing, homology

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_FAILURE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class Unsupported(Exception):
    pass


def thread_count():
    """Worker cap from OPCHAIN_THREADS (default 1)."""
    raw = os.environ.get("OPCHAIN_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"OPCHAIN_THREADS must be an integer, got {raw!r}")
    return max(1, k)


def ordered_map(fn, items):
    """fn over items, possibly in parallel; results keep the input order."""
    items = list(items)
    k = thread_count()
    if k == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


# -- argument parsing ---------------------------------------------------------------

def _level(raw):
    if raw is None:
        return None
    if raw.lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"--n must be an integer or 'inf', got {raw!r}")


def _common(p):
    p.add_argument("--ring", default="Z", help='Z, Q, F2, F3, F5, ...')
    p.add_argument("--n", dest="n", default=None, help="level of the E_n operad")
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--s-max", type=int, default=None)
    p.add_argument("--d-max", type=int, default=None)
    p.add_argument("--scalar", default=None)
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default="json")


def build_parser():
    parser = argparse.ArgumentParser(prog="opchain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", help="operad axioms or twisting equation")
    p.add_argument("which", help="en, e, commutative, associative, cobar, linfinity")
    _common(p)
    p = sub.add_parser("e1", help="E_1 table of the skeletal tower")
    _common(p)
    p = sub.add_parser("phi", help="build the morphism φ_c")
    _common(p)
    p = sub.add_parser("homology", help="homology summaries per arity")
    p.add_argument("selector", help="en, en-coinvariants, cobar, linfinity")
    _common(p)
    p = sub.add_parser("transpose", help="the dual morphism ΛL∞ -> Λ^n E_n")
    _common(p)
    p = sub.add_parser("report", help="E_1 table, hits of E_1^{2,2} and the π_0 statement")
    _common(p)
    return parser


class RunConfig:
    def __init__(self, args):
        try:
            self.ring = CoefficientRing.parse(args.ring)
        except ValueError as e:
            raise UsageError(str(e))
        self.n = _level(args.n)
        for name in ("r_max", "s_max", "d_max"):
            v = getattr(args, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
            setattr(self, name, v)
        self.scalar = args.scalar
        self.out = args.out
        self.format = args.format

    def level(self, default=None, finite=True):
        n = self.n if self.n is not None else default
        if n is None:
            raise UsageError("--n is required")
        if n == math.inf:
            if finite:
                raise Unsupported("n = inf is out of scope (needs the E_∞ data)")
            return n
        if n < 1:
            raise UsageError(f"--n must be >= 1, got {n}")
        return n

    def scalar_value(self, default="1"):
        raw = self.scalar if self.scalar is not None else default
        try:
            return self.ring(raw)
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"bad scalar {raw!r} for ring {self.ring.short}: {e}")


# -- output -------------------------------------------------------------------------

def emit(cfg, doc, rows=None):
    """Write doc as JSON, or rows as CSV, to --out or stdout (deterministic)."""
    if cfg.format == "csv":
        if rows is None:
            raise UsageError("csv output is only available for e1 and homology")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["object", "arity_or_s", "t", "degree", "rank", "torsion"])
        for r in rows:
            w.writerow(list(r[:5]) + [" ".join(str(x) for x in r[5])])
        text = buf.getvalue()
    else:
        text = json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def say(cfg, line):
    """Verdict lines go to stderr when the document itself is on stdout."""
    print(line, file=sys.stderr if not cfg.out else sys.stdout)


def _summary_rows(obj, arity, summary):
    return [(obj, arity, "", d, summary.rank(d), list(summary.torsion_at(d)))
            for d in summary.support()]


# -- commands -----------------------------------------------------------------------

def cmd_verify(which, cfg):
    from .enoperads import BarrattEccles, associative_operad, commutative_operad, en_operad
    from .koszul import cobar_en, linfinity, verify_cobar
    from .operadcore import check_operad
    r_max = cfg.r_max or 4
    if which == "en":
        n = cfg.level()
        rep = check_operad(en_operad(n, r_max, cfg.ring), r_max)
    elif which == "e":
        if cfg.d_max is None:
            raise UsageError("verify e needs --d-max")
        rep = check_operad(BarrattEccles(None, r_max, cfg.d_max, cfg.ring), r_max)
    elif which == "commutative":
        rep = check_operad(commutative_operad(r_max, cfg.ring), r_max)
    elif which == "associative":
        rep = check_operad(associative_operad(r_max, cfg.ring), r_max)
    elif which == "cobar":
        rep = verify_cobar(cobar_en(cfg.level(), r_max))
    elif which == "linfinity":
        rep = verify_cobar(linfinity(r_max))
    else:
        raise UsageError(f"unknown operad {which!r}")
    emit(cfg, rep.to_json())
    for line in rep.lines():
        say(cfg, line)
    return EXIT_OK if rep.passed else EXIT_FAILURE


def cmd_e1(cfg):
    from .enoperads import commutative_operad
    from .tower import CobarGenerators, e1_table
    n = cfg.level()
    s_max = cfg.s_max or 4
    table = e1_table(CobarGenerators(n), commutative_operad(s_max, cfg.ring), s_max, ring=cfg.ring)
    emit(cfg, table.to_json(), [("e1",) + row[:2] + row[2:] for row in table.rows()])
    ok = table.matches_lemma_pattern()
    say(cfg, "matches Lemma pattern" if ok else f"does not match Lemma pattern: nonzero cells {table.nonzero_cells()}")
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_phi(cfg):
    from .tower import ObstructionError, build_phi
    n = cfg.level()
    c = cfg.scalar_value()
    try:
        f = build_phi(n, c, cfg.r_max or 4, cfg.ring)
        res = f.result()
    except ObstructionError as e:
        say(cfg, f"obstruction: {e}")
        return EXIT_FAILURE
    if not res.passed:
        say(cfg, f"nonzero residual in arity {res.first_nonzero_arity()}")
        return EXIT_FAILURE
    doc = f.to_json()
    emit(cfg, doc)
    say(cfg, f"class_scalar {doc['class_scalar']}")
    return EXIT_OK


def cmd_homology(selector, cfg):
    from .koszul import cobar_en, linfinity
    from .enoperads import en_operad
    from .sigmaobj import coinvariants
    ring = cfg.ring
    if selector == "en":
        n, r_max = cfg.level(), cfg.r_max or 3
        E = en_operad(n, r_max)
        arities = list(range(1, r_max + 1))
        summaries = ordered_map(lambda r: homology(E.underlying.component(r).complex, ring=ring), arities)
    elif selector == "en-coinvariants":
        n, s_max = cfg.level(), cfg.s_max or 4
        E = en_operad(n).underlying
        arities = list(range(2, s_max + 1))
        summaries = ordered_map(lambda s: homology(coinvariants(E, s), ring=ring), arities)
    elif selector in ("cobar", "linfinity"):
        r_max = cfg.r_max or 3
        P = cobar_en(cfg.level(), r_max) if selector == "cobar" else linfinity(r_max)
        arities = list(range(1, r_max + 1))
        summaries = ordered_map(lambda r: homology(P.complex(r), ring=ring), arities)
    else:
        raise UsageError(f"unknown selector {selector!r}")
    doc = {"object": selector, "ring": ring.label, "n": None if selector == "linfinity" else cfg.n,
           "summaries": {str(r): h.to_json() for r, h in zip(arities, summaries)}}
    rows = [row for r, h in zip(arities, summaries) for row in _summary_rows(selector, r, h)]
    ok = True
    if selector == "linfinity":
        got = [h.rank(0) for h in summaries]
        want = [math.factorial(r - 1) for r in arities]
        concentrated = all(h.support() in ([0], []) for h in summaries)
        ok = got == want and concentrated
        doc["factorial_check"] = {"degree0_ranks": got, "expected": want, "concentrated_in_degree_0": concentrated}
        say(cfg, f"degree-0 ranks {','.join(map(str, got))} vs (r-1)! {','.join(map(str, want))}: "
                 + ("agree" if ok else "DISAGREE"))
    if selector == "en-coinvariants":
        flags = {str(s): all(d <= (n - 1) * (s - 1) for d in h.support()) for s, h in zip(arities, summaries)}
        doc["vanishing_above_bound"] = flags
        ok = all(flags.values())
        say(cfg, f"vanishing above (n-1)(s-1): {str(ok).lower()}")
    emit(cfg, doc, rows)
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_transpose(cfg):
    from .tower import build_phi, transpose_to_linfinity_morphism
    from .homcore import label_to_json
    n = cfg.level()
    r_max = cfg.r_max or 3
    f = build_phi(n, cfg.scalar_value(), r_max, cfg.ring)
    t = transpose_to_linfinity_morphism(f, r_max)
    doc = {"n": n, "r_max": r_max, "ring": cfg.ring.label, "passed": t.passed,
           "arity2_is_cycle": t.arity2_is_cycle, "lambda_factor": str(t.lambda_factor),
           "images": {str(r): [[label_to_json(x), str(v)] for x, v in sorted(t.generator_map.image(r, "c").items())]
                      for r in range(2, r_max + 1)}}
    emit(cfg, doc)
    say(cfg, f"residual {'zero' if t.passed else 'NONZERO'}; arity-2 image = {t.lambda_factor}·λ")
    return EXIT_OK if t.passed and t.arity2_is_cycle else EXIT_FAILURE


def cmd_report(cfg):
    from .tower import pi_report
    rep = pi_report(cfg.level(), cfg.s_max or 4, cfg.ring)
    emit(cfg, rep)
    say(cfg, rep["conclusion"] + (f"  [conditional on {rep['conditional_on']}]" if rep["passed"] else ""))
    return EXIT_OK if rep["passed"] else EXIT_FAILURE


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = RunConfig(args)
        thread_count()
        if args.command == "verify":
            return cmd_verify(args.which, cfg)
        if args.command == "homology":
            return cmd_homology(args.selector, cfg)
        return {"e1": cmd_e1, "phi": cmd_phi, "transpose": cmd_transpose, "report": cmd_report}[args.command](cfg)
    except UsageError as e:
        print(f"opchain: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Unsupported as e:
        print(f"opchain: unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Exception as e:  # noqa: BLE001 - every other failure is an engine fault
        print(f"opchain: internal failure: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
