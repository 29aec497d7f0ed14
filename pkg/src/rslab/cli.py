"""Command-line harness.

Subcommands: gen-field, encode, corrupt, decode, bench, compare, oracle.
All reports are JSON on stdout; the exit code is nonzero whenever a bound
is violated, decoders disagree, or an oracle check fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bm as bm_mod
from . import harness, keyeq, parallel, pgz, rscode
from .gf import GF2m
from .keyeq import compute_syndromes, decode_report


def add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, default=4, help="extension degree of GF(2^m)")
    p.add_argument("--poly", type=lambda s: int(s, 0), default=None,
                   help="irreducible modulus bitmask (default: per-m table)")
    p.add_argument("--n", type=int, default=None,
                   help="code length; must equal 2^m - 1 (checked)")
    p.add_argument("--d", type=int, default=9, help="design distance")
    p.add_argument("--l", type=int, default=1, help="root offset")


def build_code(args) -> rscode.CodeSpec:
    field = GF2m(args.m, args.poly)
    code = rscode.CodeSpec(field, args.d, args.l)
    if args.n is not None and args.n != code.n:
        raise SystemExit(f"--n {args.n} != 2^m - 1 = {code.n}")
    return code


def words_from(args, code) -> list[list[int]]:
    if args.words != "-":
        return rscode.read_words(args.words, code.n)
    return [rscode.parse_word(line) for line in sys.stdin if line.strip()]


def cmd_gen_field(args) -> int:
    field = GF2m(args.m, args.poly)
    desc = field.descriptor()
    if args.tables:
        desc["exp_table"] = [field.to_hex(x) for x in field.exp_table]
    print(json.dumps(desc, indent=2))
    return 0


def cmd_encode(args) -> int:
    code = build_code(args)
    if args.message:
        msgs = [[int(tok, 16) for tok in args.message.split()]]
    else:
        msgs = [rscode.random_message(code, f"{args.seed}:{i}:msg")
                for i in range(args.count)]
    for msg in msgs:
        print(rscode.format_word(code.field, rscode.encode(code, msg)))
    return 0


def cmd_corrupt(args) -> int:
    code = build_code(args)
    for i, word in enumerate(words_from(args, code)):
        pattern = rscode.random_errors(code, args.weight, f"{args.seed}:{i}:errors")
        print(rscode.format_word(code.field, rscode.apply_errors(word, pattern)))
    return 0


def cmd_decode(args) -> int:
    code = build_code(args)
    gates = args.gates == "on"
    status = 0
    for word in words_from(args, code):
        synd = compute_syndromes(code, word)
        outcome, extra = harness.decode_with(
            code, word, args.algo, args.values, gates=gates,
            verify=args.verify, synd=synd, want_extra=True)
        sigma = None
        if "state" in extra:
            sigma = extra["state"].sigma
        elif "trace" in extra and extra["trace"].states:
            sigma = pgz.sigma_from_w(extra["trace"].states[-1].w)
        rep = decode_report(code.field, synd, sigma, outcome)
        if args.trace:
            if "trace" in extra:
                rep["trace"] = extra["trace"].to_json(code.field)
            elif "state" in extra:
                rep["trace"] = extra["state"].trace_json(code.field)
        if "ledger" in extra:
            rep["ledger"] = extra["ledger"].to_json()
            if rep["ledger"]["violations"]:
                status = 1
        print(json.dumps(rep))
    return status


def cmd_bench(args) -> int:
    code = build_code(args)
    reports = []
    violations = 0
    for i in range(args.trials):
        _, codeword, pattern, received = harness.trial_inputs(
            code, harness.TrialConfig(m=args.m, modulus=args.poly, d=args.d,
                                      l=args.l, seed=args.seed,
                                      weights=(args.weight,)), i)
        if args.algo in ("ppgz", "pbm", "pbm-inv"):
            algo = "pbm-inv" if (args.algo == "pbm" and args.inversionless) else args.algo
            _, extra = harness.decode_with(code, received, algo,
                                           want_extra=True)
            rep = parallel.cost_report(extra["ledger"], code)
        else:
            from .gf import CountingField
            cfield = CountingField(code.field)
            ccode = code.with_field(cfield)
            outcome = harness.decode_with(ccode, received, args.algo, args.values)
            e_seen = (outcome.pattern.weight
                      if outcome.status == "corrected" else code.t)
            counts = cfield.counts.phase_counts("locator")
            key = "bm" if args.algo == "bm" else args.algo
            viols = harness.check_counter_bounds(key, counts, code.t, e_seen)
            rep = {"algo": args.algo, "t": code.t, "e": e_seen,
                   "steps": counts, "space": {},
                   "bounds": (harness.bm_locator_bounds(code.t)
                              if key in ("bm", "bm-inv")
                              else harness.fpgz_locator_bounds(code.t, e_seen)),
                   "violations": viols}
        violations += len(rep["violations"])
        reports.append(rep)
    out = {"reports": reports, "total_violations": violations}
    if args.report:
        with open(args.report, "w", encoding="ascii") as fh:
            json.dump(out, fh, indent=2)
    else:
        print(json.dumps(out, indent=2))
    return 1 if violations else 0


def cmd_compare(args) -> int:
    weights = tuple(int(w) for w in args.weight.split(":"))
    if len(weights) == 2 and args.weight.count(":") == 1:
        weights = tuple(range(weights[0], weights[1] + 1))
    cfg = harness.TrialConfig(
        m=args.m, modulus=args.poly, d=args.d, l=args.l,
        trials=args.trials, seed=args.seed, weights=weights,
        gates=args.gates == "on", count_ops=not args.no_counts,
        check_comparison=True, verify=args.verify)
    report = harness.run_trials(cfg)
    print(harness.report_to_json_str(report))
    return 0 if report.clean else 1


def cmd_oracle(args) -> int:
    code = build_code(args)
    bad = 0
    results = []
    for word in words_from(args, code):
        dist, nearest = harness.brute_force_oracle_decode(code, word)
        center = nearest[0] if (dist <= code.t and len(nearest) == 1) else None
        rec = {"distance": dist, "in_ball": center is not None,
               "nearest_count": len(nearest)}
        if args.check_decoders:
            for algo, values in (("fpgz", "bp"), ("bm", "forney"),
                                 ("ppgz", None), ("pbm", None)):
                out = harness.decode_with(code, word, algo, values, gates=True)
                if center is None:
                    ok = out.status == "failure"
                else:
                    ok = out.status != "failure" and list(out.codeword) == list(center)
                rec[harness.decoder_label(algo, values)] = "ok" if ok else "MISMATCH"
                bad += 0 if ok else 1
        results.append(rec)
    print(json.dumps({"results": results, "mismatches": bad}, indent=2))
    return 1 if bad else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="rslab",
                                 description="Reed-Solomon codec laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-field", help="emit a field descriptor")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--poly", type=lambda s: int(s, 0), default=None)
    p.add_argument("--tables", action="store_true")
    p.set_defaults(fn=cmd_gen_field)

    p = sub.add_parser("encode", help="encode messages to codewords")
    add_code_args(p)
    p.add_argument("--message", help="k hex symbols, space separated")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("corrupt", help="add seeded channel errors")
    add_code_args(p)
    p.add_argument("--words", default="-", help="word file ('-' = stdin)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--weight", type=int, default=1)
    p.set_defaults(fn=cmd_corrupt)

    p = sub.add_parser("decode", help="decode received words")
    add_code_args(p)
    p.add_argument("--words", default="-", help="word file ('-' = stdin)")
    p.add_argument("--algo", default="bm",
                   choices=["pgz", "fpgz", "bm", "bm-inv", "ppgz", "pbm"])
    p.add_argument("--values", default=None,
                   choices=[None, "bp", "horiguchi", "forney", "tau"])
    p.add_argument("--gates", default="on", choices=["on", "off"])
    p.add_argument("--verify", action="store_true",
                   help="carry the omega/gamma companions and check them")
    p.add_argument("--trace", action="store_true",
                   help="emit the per-iteration JSON log")
    p.add_argument("--inversionless", action="store_true")
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("bench", help="cost-instrumented decodes")
    add_code_args(p)
    p.add_argument("--algo", default="pbm",
                   choices=["fpgz", "bm", "bm-inv", "ppgz", "pbm", "pbm-inv"])
    p.add_argument("--values", default=None)
    p.add_argument("--inversionless", action="store_true")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--weight", type=int, default=2)
    p.add_argument("--report", help="write JSON here instead of stdout")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("compare", help="differential decoder trials")
    add_code_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--weight", default="0:4",
                   help="fixed weight w, or lo:hi range")
    p.add_argument("--gates", default="on", choices=["on", "off"])
    p.add_argument("--no-counts", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("oracle", help="exhaustive nearest-codeword checks")
    add_code_args(p)
    p.add_argument("--words", default="-", help="word file ('-' = stdin)")
    p.add_argument("--check-decoders", action="store_true")
    p.set_defaults(fn=cmd_oracle)

    args = ap.parse_args(argv)
    if getattr(args, "algo", None) == "pbm" and getattr(args, "inversionless", False):
        args.algo = "pbm-inv"
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
