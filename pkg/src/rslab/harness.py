"""Channel-trial engine, differential cross-decoder checks, operation-count
bound verification, and the exhaustive nearest-codeword oracle.

Everything is reproducible: a (config, seed) pair fully determines every
message, error pattern, and therefore every report byte.  Trials can fan
out over processes (RS_LAB_THREADS caps the workers); per-trial seeds are
derived from the master seed and the trial index, so aggregation order
never matters.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from . import bm as bm_mod
from . import keyeq, linalg, parallel, pgz, rscode
from .gf import GF2m, CountingField
from .keyeq import DecodeOutcome, SyndromeSet, compute_syndromes, poly_trim


class SizeLimitError(ValueError):
    pass


# ---------------------------------------------------------------------------
# decoder dispatch (shared with the CLI)

DECODER_MATRIX = (
    ("pgz", None),
    ("fpgz", "bp"),
    ("fpgz", "horiguchi"),
    ("bm", "forney"),
    ("bm", "tau"),
    ("bm", "horiguchi"),
    ("bm-inv", None),
    ("ppgz", None),
    ("pbm", None),
    ("pbm-inv", None),
)


def decoder_label(algo: str, values: str | None) -> str:
    return algo if values in (None, "") else f"{algo}:{values}"


def decode_with(code, word, algo: str, values: str | None = None,
                gates: bool = True, verify: bool = False,
                synd: SyndromeSet | None = None, want_extra: bool = False):
    """Uniform entry point: returns the outcome, plus extras when asked.

    extras carry the fPGZ trace, BM state, or parallel cost ledger that the
    differential checks and the CLI --trace/bench paths consume.
    """
    extra: dict = {}
    if algo == "pgz":
        outcome = pgz.pgz_decode(code, word, gates=gates, synd=synd)
    elif algo == "fpgz":
        outcome, trace = pgz.fpgz_decode(code, word, gates=gates,
                                         values=values or "bp", synd=synd,
                                         want_trace=True)
        extra["trace"] = trace
    elif algo == "bm":
        outcome, state = bm_mod.bm_decode(code, word, gates=gates,
                                          values=values or "forney",
                                          verify=verify, synd=synd,
                                          want_state=True)
        extra["state"] = state
    elif algo == "bm-inv":
        outcome, state = bm_mod.bm_decode(code, word, gates=gates,
                                          inversionless=True, synd=synd,
                                          want_state=True)
        extra["state"] = state
    elif algo == "ppgz":
        outcome, ledger = parallel.ppgz_decode(code, word, gates=gates, synd=synd)
        extra["ledger"] = ledger
    elif algo in ("pbm", "pbm-inv"):
        outcome, ledger = parallel.pbm_decode(
            code, word, gates=gates, inversionless=(algo == "pbm-inv"), synd=synd)
        extra["ledger"] = ledger
    else:
        raise ValueError(f"unknown decoder {algo!r}")
    return (outcome, extra) if want_extra else outcome


# ---------------------------------------------------------------------------
# operation-count bounds


def fpgz_locator_bounds(t: int, e: int) -> dict:
    return {"inv": e, "mul": 10 * e * t + e, "add": 11 * e * t + e}


def bm_locator_bounds(t: int) -> dict:
    return {"inv": 2 * t + 1, "mul": 6 * t * t + 7 * t + 4,
            "add": 4 * t * t + 4 * t + 1}


def check_counter_bounds(algo: str, counts: dict, t: int, e: int) -> list[str]:
    """Compare measured locator-stage counts against the published bounds."""
    if algo == "fpgz":
        bounds = fpgz_locator_bounds(t, e)
    elif algo == "bm":
        bounds = bm_locator_bounds(t)
    elif algo == "bm-inv":
        bounds = dict(bm_locator_bounds(t), inv=0)
    else:
        raise ValueError(f"no sequential bounds for {algo!r}")
    out = []
    for op, bound in bounds.items():
        got = counts.get(op, 0)
        if got > bound:
            out.append(f"{algo}: {op} = {got} > bound {bound} (t={t}, e={e})")
    return out


# ---------------------------------------------------------------------------
# fPGZ / BM intermediate-outcome comparison


def check_comparison_theorem(field, fpgz_trace, bm_state, d: int) -> list[str]:
    """Every committed w corresponds to a run of BM iterates.

    For a committed index i with gap r: P_w = sigma^(2i) = ... =
    sigma^(2i+r-1), the discrepancies Delta_(2i..2i+r-2) vanish, and
    Delta_(2i+r-1) equals the gap coefficient eps_r.  The final commit's
    polynomial persists through sigma^(d-1) with zero discrepancies.
    Returns a list of mismatch descriptions (empty = theorem holds).
    """
    problems = []
    commits = fpgz_trace.states
    sig_tr = bm_state.sigma_trace
    deltas = bm_state.delta_history
    for idx, st in enumerate(commits):
        i = st.i
        p_w = poly_trim(pgz.sigma_from_w(st.w))
        last = idx == len(commits) - 1
        if last:
            span_end = d - 1                       # sigma indices 2i..d-1
        else:
            r = commits[idx + 1].i - i
            span_end = 2 * i + r - 1
        for j in range(2 * i, span_end + 1):
            if poly_trim(sig_tr[j]) != p_w:
                problems.append(f"P_w at commit {i} != sigma^({j})")
        for j in range(2 * i, min(span_end - 1, d - 2) + 1):
            if deltas[j] != 0:
                problems.append(f"Delta_{j} != 0 inside commit {i}'s run")
        if not last:
            eps_r = st.epsilons[-1]
            if span_end > d - 2 or deltas[span_end] != eps_r:
                problems.append(
                    f"Delta_{span_end} != eps_r at commit {i}")
            if eps_r == 0:
                problems.append(f"gap coefficient zero at commit {i}")
    return problems


# ---------------------------------------------------------------------------
# exhaustive maximum-likelihood oracle

_codebook_cache: dict = {}


def enumerate_codebook(code) -> list[tuple]:
    """All q^k codewords (guarded; meant for tiny codes)."""
    key = (code.field, code.n, code.d, code.l)
    book = _codebook_cache.get(key)
    if book is not None:
        return book
    total = code.field.q ** code.k
    if total > 1_000_000:
        raise SizeLimitError(f"codebook of {total} words is too large")
    book = []
    for msg in product(range(code.field.q), repeat=code.k):
        book.append(tuple(rscode.encode(code, list(msg))))
    _codebook_cache[key] = book
    return book


def brute_force_oracle_decode(code, word) -> tuple[int, list[tuple]]:
    """(minimum distance, list of nearest codewords) by full enumeration."""
    best = code.n + 1
    nearest: list[tuple] = []
    for cw in enumerate_codebook(code):
        dist = sum(1 for a, b in zip(word, cw) if a != b)
        if dist < best:
            best = dist
            nearest = [cw]
        elif dist == best:
            nearest.append(cw)
    return best, nearest


def ball_center(code, word):
    """The unique codeword within distance t, or None (the r-in-B test)."""
    dist, nearest = brute_force_oracle_decode(code, word)
    if dist <= code.t and len(nearest) == 1:
        return nearest[0]
    return None


# ---------------------------------------------------------------------------
# trial engine


@dataclass
class TrialConfig:
    m: int = 4
    modulus: int | None = None
    d: int = 9
    l: int = 1
    trials: int = 100
    seed: int = 1
    weights: tuple[int, ...] = (0, 1, 2, 3, 4)
    decoders: tuple = DECODER_MATRIX
    gates: bool = True
    count_ops: bool = True
    check_comparison: bool = False
    verify: bool = False

    def to_json(self) -> dict:
        return {
            "m": self.m, "modulus": self.modulus, "d": self.d, "l": self.l,
            "trials": self.trials, "seed": self.seed,
            "weights": list(self.weights),
            "decoders": [decoder_label(a, v) for a, v in self.decoders],
            "gates": self.gates, "count_ops": self.count_ops,
            "check_comparison": self.check_comparison, "verify": self.verify,
        }


@dataclass
class ComparisonReport:
    config: TrialConfig
    trials: int = 0
    outcome_tally: dict = dc_field(default_factory=dict)
    disagreements: list = dc_field(default_factory=list)
    bound_violations: list = dc_field(default_factory=list)
    comparison_failures: list = dc_field(default_factory=list)
    residual_failures: list = dc_field(default_factory=list)
    value_mismatches: list = dc_field(default_factory=list)

    @property
    def all_agreed(self) -> bool:
        return not self.disagreements

    @property
    def clean(self) -> bool:
        return (self.all_agreed and not self.bound_violations
                and not self.comparison_failures and not self.residual_failures
                and not self.value_mismatches)

    def merge(self, other: "ComparisonReport") -> None:
        self.trials += other.trials
        for label, tally in other.outcome_tally.items():
            mine = self.outcome_tally.setdefault(label, {})
            for k, v in tally.items():
                mine[k] = mine.get(k, 0) + v
        for name in ("disagreements", "bound_violations",
                     "comparison_failures", "residual_failures",
                     "value_mismatches"):
            mine = getattr(self, name)
            mine.extend(getattr(other, name)[: max(0, 50 - len(mine))])

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "trials": self.trials,
            "outcomes": self.outcome_tally,
            "agreement": self.all_agreed,
            "disagreements": self.disagreements[:50],
            "bound_violations": self.bound_violations[:50],
            "comparison_failures": self.comparison_failures[:50],
            "residual_failures": self.residual_failures[:50],
            "value_mismatches": self.value_mismatches[:50],
            "clean": self.clean,
        }


def _outcome_key(outcome: DecodeOutcome) -> str:
    if outcome.status == "failure":
        return f"failure:{outcome.reason.value}"
    return outcome.status


def _outcome_signature(outcome: DecodeOutcome):
    if outcome.status == "failure":
        return ("failure",)
    if outcome.status == "no_error":
        return ("no_error", outcome.codeword)
    return ("corrected", outcome.pattern.positions, outcome.pattern.values,
            outcome.codeword)


def trial_inputs(code, cfg: TrialConfig, idx: int):
    """Deterministic message/weight/pattern for one trial."""
    rng = random.Random(f"{cfg.seed}:{idx}:trial")
    weight = rng.choice(list(cfg.weights))
    message = [rng.randrange(code.field.q) for _ in range(code.k)]
    codeword = rscode.encode(code, message)
    pattern = rscode.random_errors(code, weight, f"{cfg.seed}:{idx}:errors")
    received = rscode.apply_errors(codeword, pattern)
    return message, codeword, pattern, received


def run_trial_range(cfg: TrialConfig, lo: int, hi: int) -> ComparisonReport:
    field = GF2m(cfg.m, cfg.modulus)
    code = rscode.CodeSpec(field, cfg.d, cfg.l)
    report = ComparisonReport(config=cfg)
    # locator-stage operation counting piggybacks on the primary runs of the
    # three sequentially-bounded decoders (identical outcomes, counted field)
    counted_labels = {"fpgz:bp": "fpgz", "bm:forney": "bm", "bm-inv": "bm-inv"}
    for idx in range(lo, hi):
        _, codeword, pattern, received = trial_inputs(code, cfg, idx)
        synd = compute_syndromes(code, received)
        report.trials += 1

        outcomes: dict[str, DecodeOutcome] = {}
        extras: dict[str, dict] = {}
        counted_fields: dict[str, CountingField] = {}
        for algo, values in cfg.decoders:
            label = decoder_label(algo, values)
            run_code = code
            if cfg.count_ops and label in counted_labels:
                cfield = CountingField(field)
                counted_fields[label] = cfield
                run_code = code.with_field(cfield)
            outcome, extra = decode_with(run_code, received, algo, values,
                                         gates=cfg.gates, verify=cfg.verify,
                                         synd=synd, want_extra=True)
            outcomes[label] = outcome
            extras[label] = extra
            key = _outcome_key(outcome)
            tally = report.outcome_tally.setdefault(label, {})
            tally[key] = tally.get(key, 0) + 1

        # functional-equivalence pairs: parallel decoders mirror their
        # sequential counterparts, outcome for outcome
        for a, b in (("fpgz:bp", "ppgz"), ("bm:forney", "pbm"),
                     ("bm:forney", "pbm-inv")):
            if a in outcomes and b in outcomes:
                if (_outcome_signature(outcomes[a])
                        != _outcome_signature(outcomes[b])
                        or (outcomes[a].status == "failure"
                            and outcomes[a].reason != outcomes[b].reason)):
                    report.disagreements.append(
                        {"trial": idx, "pair": [a, b],
                         "a": _outcome_key(outcomes[a]),
                         "b": _outcome_key(outcomes[b])})

        # corrected outcomes must agree across the whole matrix
        sigs = {label: _outcome_signature(o) for label, o in outcomes.items()
                if o.status != "failure"}
        if len(set(sigs.values())) > 1:
            report.disagreements.append(
                {"trial": idx, "pair": sorted(sigs), "detail": "output split"})

        # weight <= t roundtrip must restore the codeword exactly
        if pattern.weight <= code.t:
            for label, o in outcomes.items():
                if o.status == "failure" or list(o.codeword) != codeword:
                    report.disagreements.append(
                        {"trial": idx, "pair": [label],
                         "detail": "roundtrip missed the codeword"})
                    break

        # operation-count bounds from the instrumented primary runs
        if cfg.count_ops:
            for label, algo_key in counted_labels.items():
                cfield = counted_fields.get(label)
                if cfield is None:
                    continue
                outcome = outcomes[label]
                e_seen = (outcome.pattern.weight
                          if outcome.status == "corrected" else code.t)
                report.bound_violations.extend(
                    f"trial {idx}: {viol}" for viol in check_counter_bounds(
                        algo_key, cfield.counts.phase_counts("locator"),
                        code.t, e_seen))
            for plabel in ("ppgz", "pbm", "pbm-inv"):
                ledger = extras.get(plabel, {}).get("ledger")
                if ledger is not None:
                    report.bound_violations.extend(
                        f"trial {idx}: {plabel}: {viol}"
                        for viol in ledger.violations())

        # key-equation residual for every produced locator/evaluator pair
        bm_out = outcomes.get("bm:forney")
        if bm_out is not None and bm_out.status == "corrected":
            state = extras["bm:forney"]["state"]
            e_claim = keyeq.poly_deg(state.sigma)
            omega = bm_mod.bm_omega(field, state.sigma, synd, e_claim)
            if not keyeq.key_equation_residual(field, state.sigma, omega,
                                               synd.poly(), code.d):
                report.residual_failures.append({"trial": idx})

        # value-formula cross-agreement on corrected trials
        corrected_sigs = {label: sigs[label] for label in sigs
                          if outcomes[label].status == "corrected"}
        if len(set(corrected_sigs.values())) > 1:
            report.value_mismatches.append({"trial": idx,
                                            "labels": sorted(corrected_sigs)})

        # intermediate-outcome correspondence between fPGZ and BM
        if cfg.check_comparison:
            ftr = extras.get("fpgz:bp", {}).get("trace")
            bst = extras.get("bm:forney", {}).get("state")
            if ftr is not None and bst is not None and pattern.weight <= code.t:
                problems = check_comparison_theorem(field, ftr, bst, code.d)
                if problems:
                    report.comparison_failures.append(
                        {"trial": idx, "problems": problems[:5]})
    return report


def worker_count() -> int:
    raw = os.environ.get("RS_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_range_packed(args):
    cfg_json, lo, hi = args
    cfg = TrialConfig(**cfg_json)
    cfg.weights = tuple(cfg.weights)
    cfg.decoders = tuple((a, v) for a, v in cfg.decoders)
    return run_trial_range(cfg, lo, hi)


def run_trials(cfg: TrialConfig) -> ComparisonReport:
    """Run the configured trials, fanning out if RS_LAB_THREADS > 1."""
    workers = worker_count()
    if workers == 1 or cfg.trials < 4 * workers:
        return run_trial_range(cfg, 0, cfg.trials)
    from concurrent.futures import ProcessPoolExecutor
    cfg_json = dict(cfg.__dict__)
    cfg_json["weights"] = list(cfg.weights)
    cfg_json["decoders"] = [list(x) for x in cfg.decoders]
    step = (cfg.trials + workers - 1) // workers
    chunks = [(cfg_json, lo, min(lo + step, cfg.trials))
              for lo in range(0, cfg.trials, step)]
    report = ComparisonReport(config=cfg)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_range_packed, chunks):
            report.merge(part)
    return report


def report_to_json_str(report: ComparisonReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True)
