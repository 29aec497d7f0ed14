"""Step-accurate functional simulations of the parallel decoders.

pPGZ grows a lattice of syndrome-matrix minors level by level with the
Laplace expansion (all minors of one level in a single parallel step) and
reads the error count, the scaled locator, and the error values straight
off the lattice.  pBM is a systolic-array reformulation of BM in which the
discrepancy is the head coefficient of a shifted product polynomial, so a
whole iteration is one simultaneous cell update.  A CostLedger counts
parallel time-steps and circuit elements against the published bounds.

Each parallel step is an atomic transaction over all cells/minors (numpy
vector ops); the claims being checked are step counts, not waveforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations

import numpy as np

from . import keyeq, linalg, rscode
from .keyeq import (DecodeFailure, DecodeOutcome, FailureReason, SyndromeSet,
                    chien_search, compute_syndromes, poly_deg, poly_trim)
from .pgz import residual_syndrome_check


# ---------------------------------------------------------------------------
# cost ledger


def ppgz_space_bound(t: int) -> int:
    """Multipliers (= adders) of the minor-lattice machine: t*C(t, floor(t/2))."""
    return t * math.comb(t, t // 2)


@dataclass
class CostLedger:
    """Parallel time-step and circuit-element accounting for one decode."""

    algo: str
    t: int
    e: int | None = None
    mult_steps: int = 0
    add_steps: int = 0
    inv_steps: int = 0
    div_steps: int = 0
    detect_mult_steps: int = 0   # pPGZ termination-detection level only
    detect_add_steps: int = 0
    space: dict = dc_field(default_factory=dict)

    def charge_level(self, i: int, detection: bool = False) -> None:
        """One pPGZ level: 1 parallel mult-step + adder tree of depth log2 i."""
        depth = math.ceil(math.log2(i)) if i > 1 else 0
        if detection:
            self.detect_mult_steps += 1
            self.detect_add_steps += depth
        else:
            self.mult_steps += 1
            self.add_steps += depth

    def charge_pbm_iteration(self, with_inversion: bool) -> None:
        self.mult_steps += 1
        self.add_steps += 1
        if with_inversion:
            self.inv_steps += 1

    def charge_values(self, algo: str) -> None:
        self.div_steps += 1
        if algo == "ppgz":
            self.mult_steps += 1

    def bounds(self) -> dict:
        if self.algo == "ppgz":
            e = self.e or 0
            return {
                "mult_steps": e + 1,          # levels + value stage
                "construction_mult_steps": e,
                "construction_add_steps": e * (math.ceil(math.log2(e)) if e > 1 else 0),
                "div_steps": 1,
                "multipliers": ppgz_space_bound(self.t) + 2 * self.t,
                "adders": ppgz_space_bound(self.t),
                "dividers": self.t,
            }
        return {
            "mult_steps": 2 * self.t + 1,
            "add_steps": 2 * self.t + 1,
            "inv_steps": 0 if self.algo == "pbm-inv" else 2 * self.t + 1,
            "div_steps": 1,
            "multipliers": 6 * self.t + 4,
            "adders": 3 * self.t + 2,
            "dividers": self.t,
            "cells": self.space.get("cells", 0),
        }

    def violations(self) -> list[str]:
        out = []
        b = self.bounds()
        if self.algo == "ppgz":
            if self.e is not None:
                if self.construction_mult_steps() > b["construction_mult_steps"]:
                    out.append(
                        f"construction mult-steps {self.construction_mult_steps()} "
                        f"> {b['construction_mult_steps']}")
                if self.construction_add_steps() > b["construction_add_steps"]:
                    out.append(
                        f"construction add-steps {self.construction_add_steps()} "
                        f"> {b['construction_add_steps']}")
            if self.space.get("multipliers", 0) > b["multipliers"]:
                out.append("multiplier count exceeds machine capacity")
        else:
            for op in ("mult_steps", "add_steps", "inv_steps", "div_steps"):
                if getattr(self, op) > b[op]:
                    out.append(f"{op} {getattr(self, op)} > {b[op]}")
            if self.space.get("multipliers", 0) > b["multipliers"]:
                out.append("multiplier count exceeds machine capacity")
            if self.space.get("adders", 0) > b["adders"]:
                out.append("adder count exceeds machine capacity")
        return out

    def construction_mult_steps(self) -> int:
        # value-stage mult step excluded: bounds split construction vs values
        return self.mult_steps - (1 if self.algo == "ppgz" and self.div_steps else 0)

    def construction_add_steps(self) -> int:
        return self.add_steps

    def to_json(self) -> dict:
        return {
            "algo": self.algo,
            "t": self.t,
            "e": self.e,
            "steps": {"mul": self.mult_steps, "add": self.add_steps,
                      "inv": self.inv_steps, "div": self.div_steps},
            "detection_steps": {"mul": self.detect_mult_steps,
                                "add": self.detect_add_steps},
            "space": dict(self.space),
            "bounds": self.bounds(),
            "violations": self.violations(),
        }


def cost_report(ledger: CostLedger, code) -> dict:
    """Measured-vs-bound rows plus the violation list."""
    data = ledger.to_json()
    data["code"] = {"n": code.n, "d": code.d, "t": code.t,
                    "field": code.field.descriptor()}
    return data


# ---------------------------------------------------------------------------
# numpy GF helpers (table-driven, exact)

_np_tables: dict = {}


def _field_np(field):
    base = field.base if hasattr(field, "base") else field
    tabs = _np_tables.get(base)
    if tabs is None:
        n = base.n
        exp2 = np.array(base.exp_table * 2, dtype=np.int64)
        log = np.zeros(base.q, dtype=np.int64)
        for v in range(1, base.q):
            log[v] = base.log_table[v]
        tabs = (exp2, log, n)
        _np_tables[base] = tabs
    return tabs


def _vmul(tabs, a, b):
    """Elementwise GF multiply of equal-shape arrays."""
    exp2, log, _ = tabs
    out = exp2[log[a] + log[b]]
    return np.where((a == 0) | (b == 0), 0, out)


def _svmul(tabs, s: int, vec):
    """Scalar times vector."""
    if s == 0:
        return np.zeros_like(vec)
    exp2, log, _ = tabs
    out = exp2[int(log[s]) + log[vec]]
    return np.where(vec == 0, 0, out)


# ---------------------------------------------------------------------------
# pPGZ minor lattice

_plan_cache: dict = {}


def _level_plans(t: int):
    """Index plans for the Laplace recursion at every level, cached per t.

    Level i holds the minors D^(i)_j for all C(t, i) increasing column
    tuples j within 1..t, in lexicographic order.  The plan for level i maps
    each tuple to the i syndrome indices j_l + i - 1 and the positions of
    the i sub-tuples inside level i-1.
    """
    plans = _plan_cache.get(t)
    if plans is not None:
        return plans
    tuples_by_level = {i: list(combinations(range(1, t + 1), i))
                       for i in range(1, t + 1)}
    index_by_level = {i: {tup: k for k, tup in enumerate(tups)}
                      for i, tups in tuples_by_level.items()}
    plans = {"tuples": tuples_by_level, "index": index_by_level, "steps": {}}
    for i in range(2, t + 1):
        tups = tuples_by_level[i]
        prev_index = index_by_level[i - 1]
        syn = np.empty((len(tups), i), dtype=np.int64)
        sub = np.empty((len(tups), i), dtype=np.int64)
        for r, tup in enumerate(tups):
            for l in range(i):
                syn[r, l] = tup[l] + i - 1
                sub[r, l] = prev_index[tup[:l] + tup[l + 1:]]
        plans["steps"][i] = (syn, sub)
    _plan_cache[t] = plans
    return plans


@dataclass
class MinorTable:
    """All minors of one level, in tuple lexicographic order."""

    t: int
    level: int
    values: np.ndarray

    @property
    def tuples(self) -> list[tuple]:
        return _level_plans(self.t)["tuples"][self.level]

    @property
    def entries(self) -> dict:
        return {tup: int(v) for tup, v in zip(self.tuples, self.values)}

    def value_of(self, tup: tuple) -> int:
        idx = _level_plans(self.t)["index"][self.level][tup]
        return int(self.values[idx])

    @property
    def all_zero(self) -> bool:
        return not self.values.any()


def ppgz_level_one(synd: SyndromeSet, t: int | None = None) -> MinorTable:
    """Level 1: D^(1)_(j) = S_j for j = 1..t."""
    t = t if t is not None else synd.t
    vals = np.array([synd.s_at(j) for j in range(1, t + 1)], dtype=np.int64)
    return MinorTable(t=t, level=1, values=vals)


def ppgz_level_step(table: MinorTable, synd: SyndromeSet,
                    ledger: CostLedger | None = None,
                    detection: bool = False) -> MinorTable:
    """Laplace expansion of every level-(i) minor from level i-1, in one
    parallel step: D^(i)_j = sum_l S_(j_l+i-1) D^(i-1)_(j minus j_l)
    (characteristic 2 absorbs the alternating signs).
    """
    t, i = table.t, table.level + 1
    tabs = _field_np(synd.field)
    syn, sub = _level_plans(t)["steps"][i]
    s_arr = np.zeros(synd.d, dtype=np.int64)
    s_arr[1:] = np.array(synd.s, dtype=np.int64)
    prods = _vmul(tabs, s_arr[syn], table.values[sub])
    vals = np.bitwise_xor.reduce(prods, axis=1)
    if ledger is not None:
        ledger.charge_level(i, detection=detection)
    return MinorTable(t=t, level=i, values=vals)


def _dense_minor(field, synd: SyndromeSet, cols: tuple, rows: int) -> int:
    """Exact determinant of (first `rows` rows) x (columns `cols`) of A."""
    mat = [[synd.s_at(c + r) for c in cols] for r in range(rows)]
    return linalg.determinant(field, mat)


def _reconstruction_minor(levels: dict, field, synd: SyndromeSet, e: int,
                          j: int) -> int:
    """D^(e) over columns (1..j, j+2..e+1); dense fallback above column t."""
    cols = tuple(range(1, j + 1)) + tuple(range(j + 2, e + 2))
    if e == 0:
        return 1    # empty minor
    if cols and cols[-1] <= synd.t and e in levels:
        return levels[e].value_of(cols)
    return _dense_minor(field, synd, cols, e)


def ppgz_decode(code, word, gates: bool = True,
                synd: SyndromeSet | None = None):
    """Parallel PGZ: minor-lattice scan, minor-read locator and values.

    Returns (outcome, ledger).  The error count is the first level whose
    minors all vanish, minus one; the scaled locator and evaluator are read
    off levels e and e-1; values use the squared-leading-minor form so no
    normalizing division is needed.
    """
    field = code.field
    if synd is None:
        synd = compute_syndromes(code, word)
    elif synd.field is not field:
        synd = SyndromeSet(field, synd.d, synd.l, synd.s)
    t = synd.t
    ledger = CostLedger(algo="ppgz", t=t)
    ledger.space = {
        "multipliers": ppgz_space_bound(t) + 2 * t,
        "adders": ppgz_space_bound(t),
        "dividers": t,
        "cells": 0,
    }
    if synd.all_zero:
        return DecodeOutcome.no_error(word), ledger

    # same base guard as fPGZ: all of S_1..S_t zero means weight > t
    i0 = next(i for i in range(1, synd.d) if synd.s_at(i) != 0)
    if i0 > t:
        return DecodeOutcome.failure(
            FailureReason.TOO_MANY_ERRORS,
            f"first nonzero syndrome at {i0} > t={t}"), ledger

    levels = {1: ppgz_level_one(synd, t)}
    e = None
    for i in range(2, t + 1):
        nxt = ppgz_level_step(levels[i - 1], synd, ledger=ledger)
        if nxt.all_zero:
            ledger.mult_steps -= 1
            ledger.add_steps -= math.ceil(math.log2(i)) if i > 1 else 0
            ledger.charge_level(i, detection=True)
            lead = levels[i - 1].value_of(tuple(range(1, i)))
            if lead == 0:
                ledger.e = None
                return DecodeOutcome.failure(
                    FailureReason.RANK_MISMATCH,
                    f"level {i} all zero but det(A_{i - 1}) = 0"), ledger
            e = i - 1
            break
        levels[i] = nxt
    if e is None:
        e = t
        lead = levels[t].value_of(tuple(range(1, t + 1))) if t >= 1 else 0
        if t >= 1 and lead == 0:
            ledger.e = None
            return DecodeOutcome.failure(
                FailureReason.RANK_MISMATCH,
                "no all-zero level and det(A_t) = 0"), ledger
    ledger.e = e

    det_ae = levels[e].value_of(tuple(range(1, e + 1)))
    # locator read-off; the e = t case needs column t+1 minors (one extra
    # parallel step's worth of work for e >= 2, computed exactly; at e = 1
    # the extra entry is the raw syndrome S_2, free like initialization)
    sigma_hat = [0] * (e + 1)
    if e == t and e >= 2:
        # all t+1 reconstruction minors at once: they span ker(B_t), and the
        # known det(A_t) fixes the scale (same values as minor-by-minor)
        kern = linalg.kernel_vector(field, synd.rect_block(e))
        scale = field.div(det_ae, kern[e])
        for j in range(e + 1):
            sigma_hat[e - j] = field.mul(kern[j], scale)
    else:
        for j in range(e + 1):
            sigma_hat[e - j] = _reconstruction_minor(levels, field, synd, e, j)
    omega_hat = [0] * e if e >= 1 else []
    for j in range(e):
        cols = tuple(range(1, j + 1)) + tuple(range(j + 2, e + 1))
        if e - 1 == 0:
            omega_hat = [1]
            break
        omega_hat[e - 1 - j] = (levels[e - 1].value_of(cols)
                                if cols[-1] <= t and e - 1 in levels
                                else _dense_minor(field, synd, cols, e - 1))
    if e == t and e >= 2:
        ledger.charge_level(e)

    # sigma_hat keeps its e+1 slots (constant term det(A_e) != 0); the gate
    # indexes coefficients 1..e and Chien trims internally
    with field.phase("gates"):
        if gates:
            sigma_unit = [field.div(c, det_ae) if c else 0 for c in sigma_hat]
            if not residual_syndrome_check(synd, sigma_unit, e):
                return DecodeOutcome.failure(
                    FailureReason.RANK_MISMATCH,
                    "residual syndrome equations violated"), ledger

    positions, inverse_roots, deficit = chien_search(code, sigma_hat, e)
    if deficit:
        return DecodeOutcome.failure(
            FailureReason.CHIEN_ROOT_DEFICIT,
            f"{len(positions)} roots for claimed {e}"), ledger

    sigma_hat_prime = keyeq.formal_derivative(field, sigma_hat)
    det_sq = field.mul(det_ae, det_ae)
    values = []
    try:
        for xr in inverse_roots:
            denom = field.mul(keyeq.poly_eval(field, sigma_hat_prime, xr),
                              keyeq.poly_eval(field, omega_hat, xr))
            if denom == 0:
                raise ZeroDivisionError
            num = field.mul(det_sq, field.pow(xr, 2 * (e - 1)))
            values.append(field.neg(field.div(num, denom)))
    except ZeroDivisionError:
        return DecodeOutcome.failure(FailureReason.ZERO_ERROR_VALUE,
                                     "value denominator vanished"), ledger
    ledger.charge_values("ppgz")
    return rscode.assemble_correction(code, word, positions, values, gates), ledger


# ---------------------------------------------------------------------------
# pBM systolic array


class SystolicArray:
    """d+t cells: (Delta^_j, Theta^_j) for j <= d-2, then the sigma/tau tail.

    After i steps the stored polynomials equal the sequential BM module's
    sigma^(i), tau^(i) and the shifted products Delta^(i), Theta^(i); the
    head coefficient Delta^_0 is the discrepancy driving the control unit.
    """

    def __init__(self, synd: SyndromeSet, inversionless: bool = False):
        self.synd = synd
        self.field = synd.field
        self.tabs = _field_np(synd.field)
        self.d = synd.d
        self.t = synd.t
        self.i = 0
        self.D = 0
        self.C = -1
        self.inversionless = inversionless
        self.beta = 1
        self.beta_product = 1
        s = np.array(synd.s, dtype=np.int64)
        self.delta_hat = s.copy()
        self.theta_hat = s.copy()
        self.sigma = np.zeros(self.t + 1, dtype=np.int64)
        self.tau = np.zeros(self.t + 1, dtype=np.int64)
        self.sigma[0] = 1
        self.tau[0] = 1
        self.delta_history: list[int] = []

    def cell(self, j: int) -> tuple[int, int]:
        """Cell contents in the published layout."""
        if j <= self.d - 2:
            return int(self.delta_hat[j]), int(self.theta_hat[j])
        k = self.d + self.t - 1 - j
        return int(self.sigma[k]), int(self.tau[k])

    def sigma_poly(self) -> list[int]:
        return poly_trim([int(c) for c in self.sigma]) or [1]

    def tau_poly(self) -> list[int]:
        return poly_trim([int(c) for c in self.tau])

    def delta_hat_poly(self) -> list[int]:
        return poly_trim([int(c) for c in self.delta_hat])


def pbm_step(array: SystolicArray, ledger: CostLedger | None = None) -> SystolicArray:
    """One simultaneous update of every cell.

    Delta^_j <- Delta^_(j+1) - Delta^_0 Theta^_j and sigma_j <- sigma_j -
    Delta^_0 tau_(j-1); the Theta/tau pair either holds/shifts or takes the
    divided (or, inversionless, the raw shifted/copied) polynomials, per the
    control branch on Delta^_0 and 2D(i) vs i+1.
    """
    tabs = array.tabs
    i = array.i
    d0 = int(array.delta_hat[0])
    array.delta_history.append(d0)
    shifted = np.roll(array.delta_hat, -1)
    shifted[-1] = 0
    tau_shift = np.roll(array.tau, 1)
    tau_shift[0] = 0
    grow = d0 != 0 and 2 * array.D < i + 1

    if array.inversionless:
        beta = array.beta
        sigma_next = _svmul(tabs, beta, array.sigma) ^ _svmul(tabs, d0, tau_shift)
        delta_next = _svmul(tabs, beta, shifted) ^ _svmul(tabs, d0, array.theta_hat)
        if grow:
            theta_next = shifted.copy()
            tau_next = array.sigma.copy()
            array.beta_product = array.field.mul(array.beta_product, array.beta)
            array.beta = d0
        else:
            theta_next = array.theta_hat
            tau_next = tau_shift
            array.beta_product = array.field.mul(array.beta_product, array.beta)
        with_inv = False
    else:
        sigma_next = array.sigma ^ _svmul(tabs, d0, tau_shift)
        delta_next = shifted ^ _svmul(tabs, d0, array.theta_hat)
        if grow:
            inv0 = array.field.inv(d0)
            theta_next = _svmul(tabs, inv0, shifted)
            tau_next = _svmul(tabs, inv0, array.sigma)
        else:
            theta_next = array.theta_hat
            tau_next = tau_shift
        with_inv = grow

    if grow:
        array.D = i + 1 - array.D
        array.C = i
    array.sigma = sigma_next
    array.tau = tau_next
    array.delta_hat = delta_next
    array.theta_hat = theta_next
    array.i = i + 1
    if ledger is not None:
        ledger.charge_pbm_iteration(with_inversion=with_inv)
    return array


def pbm_decode(code, word, gates: bool = True, inversionless: bool = False,
               synd: SyndromeSet | None = None):
    """Parallel BM pipeline; returns (outcome, ledger).

    Runs d-1 systolic steps, then reads e = D(d-1) and computes values from
    the retained product tail: E_i = Delta^(d-1)(X^-1) (X^-1)^(d-1) /
    sigma'(X^-1) (scale-invariant, so the inversionless variant uses the
    same expression).  Gates match the sequential BM module.
    """
    field = code.field
    if synd is None:
        synd = compute_syndromes(code, word)
    elif synd.field is not field:
        synd = SyndromeSet(field, synd.d, synd.l, synd.s)
    algo = "pbm-inv" if inversionless else "pbm"
    ledger = CostLedger(algo=algo, t=synd.t)
    ledger.space = {
        "multipliers": 6 * synd.t + 4,
        "adders": 3 * synd.t + 2,
        "dividers": synd.t,
        "inversion_circuits": 0 if inversionless else 1,
        "cells": synd.d + synd.t,
    }
    if synd.all_zero:
        return DecodeOutcome.no_error(word), ledger

    array = SystolicArray(synd, inversionless=inversionless)
    for _ in range(synd.d - 1):
        pbm_step(array, ledger=ledger)
    ledger.e = array.D

    sigma = array.sigma_poly()
    e_claimed = poly_deg(sigma)
    if gates:
        # deg sigma <= D always; the t+1 sigma cells cannot even hold a
        # higher-degree locator, so test D before comparing degrees
        if array.D > synd.t:
            return DecodeOutcome.failure(
                FailureReason.TOO_MANY_ERRORS,
                f"D(d-1) = {array.D} > t = {synd.t}"), ledger
        if array.D != e_claimed:
            return DecodeOutcome.failure(
                FailureReason.DEGREE_MISMATCH,
                f"D(d-1) = {array.D} != deg sigma = {e_claimed}"), ledger
    if e_claimed == 0:
        pattern = rscode.ErrorPattern((), ())
        return DecodeOutcome.corrected(pattern, list(word)), ledger

    positions, inverse_roots, deficit = chien_search(code, sigma)
    if deficit:
        return DecodeOutcome.failure(
            FailureReason.CHIEN_ROOT_DEFICIT,
            f"{len(positions)} roots for degree {e_claimed}"), ledger

    sigma_prime = keyeq.formal_derivative(field, sigma)
    delta_tail = array.delta_hat_poly()
    values = []
    try:
        for xr in inverse_roots:
            denom = keyeq.poly_eval(field, sigma_prime, xr)
            if denom == 0:
                raise ZeroDivisionError
            num = field.mul(keyeq.poly_eval(field, delta_tail, xr),
                            field.pow(xr, synd.d - 1))
            values.append(field.div(num, denom))
    except ZeroDivisionError:
        return DecodeOutcome.failure(FailureReason.ZERO_ERROR_VALUE,
                                     "value denominator vanished"), ledger
    ledger.charge_values("pbm")
    return rscode.assemble_correction(code, word, positions, values, gates), ledger
