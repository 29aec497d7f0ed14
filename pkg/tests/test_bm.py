import random

import pytest

from rslab import bm, keyeq
from rslab.gf import CountingField
from rslab.keyeq import (FailureReason, chien_search, compute_syndromes,
                         formal_derivative, poly_deg, poly_trim)
from rslab.rscode import apply_errors, encode, is_codeword, random_errors


def exp_list(field, exps):
    return [0 if k is None else field.alpha_pow(k) for k in exps]


def synd_of(code, word):
    return compute_syndromes(code, word)


# ---------------------------------------------------------------------------
# the full golden iteration table for the three-error instance


def test_bm_golden_trace(rs15_9, gf16, three_error_word):
    a = gf16.alpha_pow
    synd = synd_of(rs15_9, three_error_word)
    state = bm.bm_run(synd)
    assert state.delta_history == [a(12), a(9), 0, a(5), a(11), a(14), 0, 0]
    expected_sigma = [
        [1],
        [1, a(12)],
        [1],
        [1],
        [1, 0, 0, a(8)],
        [1, a(6), 0, a(8)],
        [1, a(6), a(9), a(8)],
        [1, a(6), a(9), a(8)],
        [1, a(6), a(9), a(8)],
    ]
    expected_tau = [
        [1],
        [a(3)],
        [0, a(3)],
        [0, 0, a(3)],
        [a(10)],
        [0, a(10)],
        [0, 0, a(10)],
        [0, 0, 0, a(10)],
        [0, 0, 0, 0, a(10)],
    ]
    expected_d = [0, 1, 1, 1, 3, 3, 3, 3, 3]
    for i in range(9):
        assert poly_trim(state.sigma_trace[i]) == poly_trim(expected_sigma[i])
        assert poly_trim(state.tau_trace[i]) == poly_trim(expected_tau[i])
        assert state.d_trace[i] == expected_d[i]
    assert state.D == 3 and state.C == 3
    assert state.c_sigma == [1] and state.c_delta == a(5)


def test_bm_zero_syndromes(rs15_9):
    state = bm.bm_run(synd_of(rs15_9, [0] * 15))
    assert state.sigma == [1] and state.D == 0
    assert all(d == 0 for d in state.delta_history)


def test_bm_single_error(rs15_9, gf16):
    word = [0] * 15
    word[6] = gf16.alpha_pow(3)
    state = bm.bm_run(synd_of(rs15_9, word))
    assert state.sigma == [1, gf16.alpha_pow(6)]     # 1 - a^p x
    assert state.D == 1


def test_bm_omega_golden(rs15_9, gf16, three_error_word):
    synd = synd_of(rs15_9, three_error_word)
    state = bm.bm_run(synd)
    omega = bm.bm_omega(gf16, state.sigma, synd, 3)
    assert omega == exp_list(gf16, [12, 3, 6])


def test_bm_omega_single(rs15_9, gf16):
    word = [0] * 15
    word[2] = gf16.alpha_pow(5)
    synd = synd_of(rs15_9, word)
    assert bm.bm_omega(gf16, [1, 1], synd, 1) == [synd.s_at(1)]


def test_values_tau_golden(rs15_9, gf16, three_error_word):
    synd = synd_of(rs15_9, three_error_word)
    state = bm.bm_run(synd)
    assert poly_trim(state.tau) == [0, 0, 0, 0, gf16.alpha_pow(10)]
    _, inv_roots, _ = chien_search(rs15_9, state.sigma)
    sp = formal_derivative(gf16, state.sigma)
    assert bm.bm_values_tau(gf16, state, sp, inv_roots, 9) == \
        exp_list(gf16, [2, 1, 7])


def test_values_horiguchi_golden(rs15_9, gf16, three_error_word):
    synd = synd_of(rs15_9, three_error_word)
    state = bm.bm_run(synd)
    assert (state.C, state.c_sigma, state.c_delta) == (3, [1], gf16.alpha_pow(5))
    _, inv_roots, _ = chien_search(rs15_9, state.sigma)
    sp = formal_derivative(gf16, state.sigma)
    assert bm.bm_values_horiguchi(gf16, state, sp, inv_roots) == \
        exp_list(gf16, [2, 1, 7])


def test_value_formulas_agree_random(rs15_9, gf16):
    rng = random.Random(30)
    for _ in range(50):
        e = rng.randrange(1, 5)
        pat = random_errors(rs15_9, e, rng.random())
        synd = synd_of(rs15_9, apply_errors([0] * 15, pat))
        state = bm.bm_run(synd)
        _, inv_roots, _ = chien_search(rs15_9, state.sigma)
        sp = formal_derivative(gf16, state.sigma)
        omega = bm.bm_omega(gf16, state.sigma, synd, e)
        forney_vals = keyeq.forney(gf16, sp, omega, inv_roots)
        assert forney_vals == list(pat.values)
        assert bm.bm_values_tau(gf16, state, sp, inv_roots, 9) == forney_vals
        assert bm.bm_values_horiguchi(gf16, state, sp, inv_roots) == forney_vals


def test_snapshot_degree_advantage(rs15_9, gf16):
    # deg sigma^(c) < deg tau^(d-1) whenever e <= t (the snapshot is the
    # cheaper polynomial to evaluate)
    rng = random.Random(31)
    for _ in range(50):
        e = rng.randrange(1, 5)
        pat = random_errors(rs15_9, e, rng.random())
        state = bm.bm_run(synd_of(rs15_9, apply_errors([0] * 15, pat)))
        assert poly_deg(state.c_sigma) < poly_deg(state.tau)
        assert state.C - state.d_trace[state.C] == e - 1   # c - D(c) = e - 1


def test_degree_function_properties(rs15_9):
    # D nondecreasing, 0 <= D(i) <= i, deg sigma <= D, deg tau <= i - D
    rng = random.Random(32)
    for _ in range(40):
        e = rng.randrange(0, 9)
        pat = random_errors(rs15_9, e, rng.random())
        state = bm.bm_run(synd_of(rs15_9, apply_errors([0] * 15, pat)))
        for i in range(9):
            D = state.d_trace[i]
            assert 0 <= D <= i
            if i:
                assert D >= state.d_trace[i - 1]
            assert poly_deg(state.sigma_trace[i]) <= D
            assert poly_deg(state.tau_trace[i]) <= i - D


def test_verify_mode_invariants(rs15_9, gf16):
    # omega/gamma companions satisfy their congruences and the resultant
    # identity omega tau - sigma gamma = x^(i-1) at every step
    rng = random.Random(33)
    for _ in range(30):
        e = rng.randrange(0, 7)
        pat = random_errors(rs15_9, e, rng.random())
        synd = synd_of(rs15_9, apply_errors([0] * 15, pat))
        state = bm._new_state(verify=True)
        s_poly = synd.poly()
        for i in range(8):
            state = bm.bm_step(gf16, synd, state, verify=True)
            j = state.i
            sigma, tau = state.sigma, state.tau
            omega = state.omega.as_poly(gf16)
            # sigma S = omega (mod x^j)
            lhs = keyeq.poly_mul_mod_xk(gf16, sigma, s_poly, j)
            assert poly_trim(lhs) == poly_trim(omega[:j])
            # tau S = gamma + x^(j-1) (mod x^j)
            lhs = keyeq.poly_mul_mod_xk(gf16, tau, s_poly, j)
            gamma = state.gamma.as_poly(gf16)
            rhs = (gamma + [0] * j)[:j]
            rhs[j - 1] ^= 1
            assert poly_trim(lhs) == poly_trim(rhs)
            # omega tau - sigma gamma = x^(j-1)
            prod1 = keyeq.poly_mul(gf16, omega, tau)
            prod2 = keyeq.poly_mul(gf16, sigma, gamma)
            diff = keyeq.poly_add(gf16, prod1, prod2)
            expected = [0] * (j - 1) + [1]
            assert poly_trim(diff) == expected
            assert poly_deg(omega) <= state.D - 1 or omega == []
            assert poly_deg(gamma) <= j - state.D - 1 or gamma == []
        if e <= 4 and e > 0:
            # the verify-mode companion equals the reconstructed evaluator
            omega_direct = bm.bm_omega(gf16, state.sigma, synd, e)
            assert state.omega.as_poly(gf16) == omega_direct


def test_verify_mode_base_case_identity(rs15_9, gf16, three_error_word):
    # at i = 0 the identity lives at exponent -1; the Laurent pair holds it
    state = bm._new_state(verify=True)
    gamma_coeffs, gamma_lo = state.gamma.canonical(gf16)
    assert (gamma_coeffs, gamma_lo) == ([1], -1)


# ---------------------------------------------------------------------------
# inversionless variant


def test_inversionless_zero_inversions(rs15_9, gf16, three_error_word):
    cf = CountingField(gf16)
    csynd = keyeq.SyndromeSet(cf, 9, 1, synd_of(rs15_9, three_error_word).s)
    bm.bm_run_inversionless(csynd, field=cf)
    assert cf.counts.total("inv") == 0
    assert cf.counts.total("div") == 0


def test_inversionless_scaling_identity(rs15_9, gf16):
    rng = random.Random(34)
    for _ in range(40):
        e = rng.randrange(0, 9)
        pat = random_errors(rs15_9, e, rng.random())
        synd = synd_of(rs15_9, apply_errors([0] * 15, pat))
        plain = bm.bm_run(synd)
        scaled = bm.bm_run_inversionless(synd)
        b = scaled.beta_product          # prod of beta(j), j <= d-2
        assert scaled.sigma == [gf16.mul(b, c) for c in plain.sigma]
        assert scaled.D == plain.D and scaled.C == plain.C


def test_inversionless_same_roots_golden(rs15_9, gf16, three_error_word):
    synd = synd_of(rs15_9, three_error_word)
    scaled = bm.bm_run_inversionless(synd)
    positions, _, deficit = chien_search(rs15_9, scaled.sigma, 3)
    assert not deficit and positions == [2, 8, 13]


def test_inversionless_decode(rs15_9, gf16):
    rng = random.Random(35)
    for _ in range(40):
        e = rng.randrange(0, 5)
        msg = [rng.randrange(16) for _ in range(rs15_9.k)]
        cw = encode(rs15_9, msg)
        word = apply_errors(cw, random_errors(rs15_9, e, rng.random()))
        out = bm.bm_decode(rs15_9, word, inversionless=True)
        assert out.status != "failure" and list(out.codeword) == cw


# ---------------------------------------------------------------------------
# decode pipeline and gates


def test_bm_decode_golden(rs15_9, three_error_word):
    out = bm.bm_decode(rs15_9, three_error_word)
    assert out.status == "corrected" and list(out.codeword) == [0] * 15
    for values in ("tau", "horiguchi"):
        out = bm.bm_decode(rs15_9, three_error_word, values=values)
        assert out.status == "corrected" and list(out.codeword) == [0] * 15


def test_bm_decode_deficit_instance(rs15_5, gf16, deficit_word):
    synd = synd_of(rs15_5, deficit_word)
    state = bm.bm_run(synd)
    assert poly_trim(state.sigma) == [1, gf16.alpha_pow(2), 0, gf16.alpha_pow(9)]
    assert state.D == 3
    gated = bm.bm_decode(rs15_5, deficit_word, gates=True)
    assert gated.status == "failure"
    assert gated.reason is FailureReason.TOO_MANY_ERRORS
    # even ungated the decoder cannot proceed: the locator has one root only
    ungated = bm.bm_decode(rs15_5, deficit_word, gates=False)
    assert ungated.status == "failure"
    assert ungated.reason is FailureReason.CHIEN_ROOT_DEFICIT
    _, _, deficit = chien_search(rs15_5, state.sigma, 3)
    assert deficit


def test_bm_decode_degree_gap_instance(rs15_5, gf16, degree_gap_word):
    synd = synd_of(rs15_5, degree_gap_word)
    state = bm.bm_run(synd)
    assert poly_trim(state.sigma) == [1, 1]
    assert state.D == 2                      # D(4) = 2 > deg sigma = 1
    gated = bm.bm_decode(rs15_5, degree_gap_word, gates=True)
    assert gated.status == "failure"
    assert gated.reason is FailureReason.DEGREE_MISMATCH
    ungated = bm.bm_decode(rs15_5, degree_gap_word, gates=False)
    assert ungated.status == "corrected"
    expected = [0] * 15
    expected[0] = gf16.alpha_pow(6)
    expected[1] = gf16.alpha_pow(3)
    expected[2] = gf16.alpha
    expected[10] = 1
    assert list(ungated.codeword) == expected
    assert not is_codeword(rs15_5, list(ungated.codeword))


def test_bm_gates_t_bounded(rs15_5):
    rng = random.Random(36)
    for _ in range(200):
        e = rng.randrange(3, 8)
        word = apply_errors([0] * 15, random_errors(rs15_5, e, rng.random()))
        out = bm.bm_decode(rs15_5, word, gates=True)
        if out.status == "corrected":
            assert is_codeword(rs15_5, list(out.codeword))
            dist = sum(1 for a, b in zip(word, out.codeword) if a != b)
            assert dist <= rs15_5.t


def test_bm_operation_counts_within_bounds(rs15_9, gf16):
    from rslab.harness import check_counter_bounds
    rng = random.Random(37)
    for _ in range(60):
        e = rng.randrange(0, 5)
        word = apply_errors([0] * 15, random_errors(rs15_9, e, rng.random()))
        for inversionless in (False, True):
            cf = CountingField(gf16)
            out = bm.bm_decode(rs15_9.with_field(cf), word,
                               inversionless=inversionless)
            assert out.status != "failure"
            counts = cf.counts.phase_counts("locator")
            algo = "bm-inv" if inversionless else "bm"
            assert not check_counter_bounds(algo, counts, rs15_9.t, e)


def test_bm_zero_degree_with_nonzero_syndromes(rs15_5, gf16):
    # a syndrome pattern that leaves sigma = 1 but moves D: gated failure
    synd = keyeq.SyndromeSet(gf16, 5, 1, [0, 0, 0, gf16.alpha])
    state = bm.bm_run(synd)
    assert poly_deg(state.sigma) >= 0
    word = [0] * 15            # word is irrelevant; feed the syndromes in
    out = bm.bm_decode(rs15_5, word, gates=True, synd=synd)
    assert out.status == "failure"
    assert out.reason in (FailureReason.DEGREE_MISMATCH,
                          FailureReason.TOO_MANY_ERRORS)
