import math
import random
from itertools import combinations

import pytest

from rslab import bm, keyeq, linalg, parallel, pgz
from rslab.gf import GF2m
from rslab.keyeq import SyndromeSet, compute_syndromes, poly_trim
from rslab.rscode import CodeSpec, apply_errors, encode, is_codeword, random_errors


def synd_of(code, word):
    return compute_syndromes(code, word)


def dense_minor(field, synd, cols, rows):
    mat = [[synd.s_at(c + r) for c in cols] for r in range(rows)]
    return linalg.determinant(field, mat)


# ---------------------------------------------------------------------------
# minor lattice


def test_level_one_is_syndromes(rs15_9, three_error_word):
    synd = synd_of(rs15_9, three_error_word)
    table = parallel.ppgz_level_one(synd)
    assert table.entries == {(j,): synd.s_at(j) for j in range(1, 5)}


def test_minor_lattice_matches_dense_determinants(gf16):
    # every Laplace-built minor equals the dense determinant, exhaustively
    # over all levels and tuples, for t up to 5
    rng = random.Random(40)
    for d in (7, 9, 11):
        code = CodeSpec(gf16, d)
        for _ in range(12):
            e = rng.randrange(0, code.t + 1)
            word = apply_errors([0] * 15, random_errors(gf16 and code, e, rng.random()))
            synd = synd_of(code, word)
            table = parallel.ppgz_level_one(synd)
            for level in range(2, code.t + 1):
                table = parallel.ppgz_level_step(table, synd)
                assert len(table.entries) == math.comb(code.t, level)
                for tup, val in table.entries.items():
                    assert val == dense_minor(gf16, synd, tup, level)


def test_minor_lattice_golden_level_facts(rs15_9, gf16, three_error_word):
    synd = synd_of(rs15_9, three_error_word)
    table = parallel.ppgz_level_one(synd)
    tables = {1: table}
    for level in (2, 3, 4):
        table = parallel.ppgz_level_step(table, synd)
        tables[level] = table
    assert tables[3].value_of((1, 2, 3)) == \
        linalg.determinant(gf16, synd.leading_minor(3))
    assert tables[3].value_of((1, 2, 3)) != 0
    assert tables[4].all_zero                      # e = 3: level 4 vanishes


def test_level_step_from_zero_level_is_zero(rs15_9, gf16):
    synd = SyndromeSet(gf16, 9, 1, [1] * 8)
    table = parallel.MinorTable(t=4, level=2, values=parallel.np.zeros(6, dtype=parallel.np.int64))
    nxt = parallel.ppgz_level_step(table, synd)
    assert nxt.all_zero


# ---------------------------------------------------------------------------
# ppgz decode


def test_ppgz_decode_golden(rs15_9, gf16, three_error_word):
    out, ledger = parallel.ppgz_decode(rs15_9, three_error_word)
    assert out.status == "corrected"
    assert out.pattern.positions == (2, 8, 13)
    assert out.pattern.values == (gf16.alpha_pow(2), gf16.alpha,
                                  gf16.alpha_pow(7))
    assert list(out.codeword) == [0] * 15
    assert ledger.e == 3
    assert ledger.construction_mult_steps() <= 3
    assert ledger.construction_add_steps() <= 3 * math.ceil(math.log2(3))
    assert not ledger.violations()


def test_ppgz_zero_syndromes(rs15_9):
    out, ledger = parallel.ppgz_decode(rs15_9, [0] * 15)
    assert out.status == "no_error"
    assert ledger.mult_steps == 0 and ledger.add_steps == 0


def test_ppgz_malfunction_branch(rs15_9, five_error_word):
    out, _ = parallel.ppgz_decode(rs15_9, five_error_word)
    assert out.status == "failure"
    assert out.reason is keyeq.FailureReason.RANK_MISMATCH


def test_ppgz_space_bound_table():
    expected = {3: 9, 4: 24, 5: 50, 6: 120, 7: 245, 8: 560, 9: 1134}
    for t, bound in expected.items():
        assert parallel.ppgz_space_bound(t) == bound


def test_ppgz_ledger_space_matches_table(gf16):
    for d, t in ((7, 3), (9, 4)):
        code = CodeSpec(gf16, d)
        word = apply_errors([0] * 15, random_errors(code, t - 1, 1))
        _, ledger = parallel.ppgz_decode(code, word)
        assert ledger.space["multipliers"] == parallel.ppgz_space_bound(t) + 2 * t
        assert ledger.space["adders"] == parallel.ppgz_space_bound(t)
        assert ledger.space["dividers"] == t


def test_ppgz_equivalent_to_fpgz(rs15_9, gf16):
    # identical outcomes (positions, values, failure reasons) on random
    # words of any weight
    rng = random.Random(41)
    for _ in range(250):
        e = rng.randrange(0, 10)
        word = apply_errors([0] * 15, random_errors(rs15_9, e, rng.random()))
        a = pgz.fpgz_decode(rs15_9, word, gates=True)
        b, _ = parallel.ppgz_decode(rs15_9, word, gates=True)
        assert a.status == b.status
        if a.status == "failure":
            assert a.reason == b.reason
        else:
            assert a.codeword == b.codeword
            if a.status == "corrected":
                assert a.pattern == b.pattern


def test_ppgz_full_capability_case(rs15_9, gf16):
    # e = t exercises the extra reconstruction minors beyond column t
    rng = random.Random(42)
    for _ in range(30):
        msg = [rng.randrange(16) for _ in range(rs15_9.k)]
        cw = encode(rs15_9, msg)
        word = apply_errors(cw, random_errors(rs15_9, rs15_9.t, rng.random()))
        out, ledger = parallel.ppgz_decode(rs15_9, word)
        assert out.status == "corrected" and list(out.codeword) == cw
        assert ledger.construction_mult_steps() <= rs15_9.t
        assert not ledger.violations()


# ---------------------------------------------------------------------------
# systolic pBM


def test_systolic_initial_state(rs15_9, three_error_word):
    synd = synd_of(rs15_9, three_error_word)
    arr = parallel.SystolicArray(synd)
    assert arr.delta_hat_poly() == poly_trim(synd.poly())
    assert [int(x) for x in arr.theta_hat] == synd.s
    assert arr.sigma_poly() == [1] and arr.tau_poly() == [1]
    # published cell layout: product pair low, locator pair high
    assert arr.cell(0) == (synd.s_at(1), synd.s_at(1))
    assert arr.cell(synd.d + synd.t - 1) == (1, 1)


def test_systolic_tracks_sequential_bm(rs15_9, gf16):
    # after i steps the cells hold sigma^(i), tau^(i), and the shifted
    # product coefficients Delta^(i)_(i+j); the head equals the discrepancy
    rng = random.Random(43)
    for _ in range(30):
        e = rng.randrange(0, 5)
        word = apply_errors([0] * 15, random_errors(rs15_9, e, rng.random()))
        synd = synd_of(rs15_9, word)
        arr = parallel.SystolicArray(synd)
        seq = bm.bm_run(synd)
        s_poly = synd.poly()
        for i in range(8):
            head = int(arr.delta_hat[0])
            assert head == seq.delta_history[i]       # Delta^_0 = Delta_i
            parallel.pbm_step(arr)
            sigma_i = seq.sigma_trace[arr.i]
            tau_i = seq.tau_trace[arr.i]
            assert arr.sigma_poly() == (poly_trim(sigma_i) or [1])
            # the array keeps t+1 locator-pair cells; tau coefficients that
            # shift past x^t leave the window and never feed an update again
            window = (tau_i + [0] * (synd.t + 1))[: synd.t + 1]
            assert [int(x) for x in arr.tau] == window
            # Delta^(i)(x) = sigma^(i)(x) S(x): the stored tail is its
            # upper coefficient window [x^i .. x^(i+d-2)]
            full = keyeq.poly_mul(gf16, sigma_i, s_poly)
            window = (full + [0] * (arr.i + synd.d))[arr.i: arr.i + synd.d - 1]
            assert [int(x) for x in arr.delta_hat] == window


def test_prop_delta_decomposition(rs15_9, gf16):
    # sigma^(i) S = omega^(i) + x^i Delta^(i) with the verify-mode omega
    rng = random.Random(44)
    for _ in range(20):
        e = rng.randrange(0, 5)
        word = apply_errors([0] * 15, random_errors(rs15_9, e, rng.random()))
        synd = synd_of(rs15_9, word)
        arr = parallel.SystolicArray(synd)
        state = bm._new_state(verify=True)
        for i in range(8):
            state = bm.bm_step(gf16, synd, state, verify=True)
            parallel.pbm_step(arr)
            omega = state.omega.as_poly(gf16)
            full = keyeq.poly_mul(gf16, state.sigma, synd.poly())
            tail = [0] * arr.i + [int(x) for x in arr.delta_hat]
            recon = keyeq.poly_add(gf16, omega, tail)
            assert poly_trim(recon) == poly_trim(full)


def test_pbm_decode_golden(rs15_9, gf16, three_error_word):
    out, ledger = parallel.pbm_decode(rs15_9, three_error_word)
    assert out.status == "corrected" and list(out.codeword) == [0] * 15
    assert out.pattern.values == (gf16.alpha_pow(2), gf16.alpha,
                                  gf16.alpha_pow(7))
    assert ledger.mult_steps <= 2 * rs15_9.t + 1
    assert ledger.add_steps <= 2 * rs15_9.t + 1
    assert ledger.space == {"multipliers": 6 * 4 + 4, "adders": 3 * 4 + 2,
                            "dividers": 4, "inversion_circuits": 1,
                            "cells": 9 + 4}
    assert not ledger.violations()


def test_pbm_inversionless_zero_inv_steps(rs15_9, three_error_word):
    out, ledger = parallel.pbm_decode(rs15_9, three_error_word,
                                      inversionless=True)
    assert out.status == "corrected" and list(out.codeword) == [0] * 15
    assert ledger.inv_steps == 0
    assert ledger.space["inversion_circuits"] == 0
    assert not ledger.violations()


def test_pbm_inversionless_scaling(rs15_9, gf16):
    rng = random.Random(45)
    for _ in range(25):
        e = rng.randrange(0, 5)
        word = apply_errors([0] * 15, random_errors(rs15_9, e, rng.random()))
        synd = synd_of(rs15_9, word)
        plain = parallel.SystolicArray(synd)
        scaled = parallel.SystolicArray(synd, inversionless=True)
        for _ in range(8):
            parallel.pbm_step(plain)
            parallel.pbm_step(scaled)
        b = gf16.mul(scaled.beta_product, 1)
        assert scaled.sigma_poly() == \
            [gf16.mul(b, c) for c in plain.sigma_poly()]
        assert [int(x) for x in scaled.delta_hat] == \
            [gf16.mul(b, int(x)) for x in plain.delta_hat]


def test_pbm_equivalent_to_bm(rs15_9, rs15_5, gf16):
    rng = random.Random(46)
    for code in (rs15_9, rs15_5):
        for _ in range(150):
            e = rng.randrange(0, 9)
            word = apply_errors([0] * 15, random_errors(code, e, rng.random()))
            a = bm.bm_decode(code, word, gates=True)
            for inv in (False, True):
                b, _ = parallel.pbm_decode(code, word, gates=True,
                                           inversionless=inv)
                assert a.status == b.status
                if a.status == "failure":
                    assert a.reason == b.reason
                else:
                    assert a.codeword == b.codeword


def test_pbm_step_counts_bounded(rs15_9):
    rng = random.Random(47)
    for _ in range(20):
        e = rng.randrange(0, 5)
        word = apply_errors([0] * 15, random_errors(rs15_9, e, rng.random()))
        _, ledger = parallel.pbm_decode(rs15_9, word)
        for op in ("mult_steps", "add_steps", "inv_steps"):
            assert getattr(ledger, op) <= 2 * rs15_9.t + 1
        assert ledger.div_steps <= 1


def test_cost_report_shape(rs15_9, three_error_word):
    _, ledger = parallel.pbm_decode(rs15_9, three_error_word)
    rep = parallel.cost_report(ledger, rs15_9)
    assert rep["algo"] == "pbm"
    assert set(rep["steps"]) == {"mul", "add", "inv", "div"}
    assert rep["violations"] == []
    assert rep["code"]["t"] == 4
    assert rep["bounds"]["multipliers"] == 28


def test_ppgz_cost_report(rs15_9, three_error_word):
    _, ledger = parallel.ppgz_decode(rs15_9, three_error_word)
    rep = parallel.cost_report(ledger, rs15_9)
    assert rep["algo"] == "ppgz" and rep["e"] == 3
    assert rep["bounds"]["adders"] == 24
    assert rep["violations"] == []
