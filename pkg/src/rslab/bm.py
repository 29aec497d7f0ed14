"""The Berlekamp-Massey decoder family.

The sigma/tau iteration with discrepancies and the degree function D, the
error-evaluator reconstruction, three value formulas (Forney, tau-based,
Horiguchi-style via the last snapshot before the final D change), the
inversionless variant, malfunction gates, and an optional verify mode that
carries the omega/gamma companions and checks their resultant identity at
every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import keyeq, rscode
from .keyeq import (DecodeFailure, DecodeOutcome, FailureReason, SyndromeSet,
                    chien_search, compute_syndromes, poly_deg, poly_trim)


@dataclass
class Laurent:
    """coeffs[k] <-> x^(k + shift); only gamma^(0) = -x^-1 needs shift < 0."""

    coeffs: list[int]
    shift: int = 0

    def times_x(self) -> "Laurent":
        return Laurent(self.coeffs[:], self.shift + 1)

    def scaled(self, field, s: int) -> "Laurent":
        return Laurent([field.mul(c, s) for c in self.coeffs], self.shift)

    def as_poly(self, field) -> list[int]:
        """Plain polynomial; requires no negative-exponent support."""
        p = [0] * max(0, self.shift) + self.coeffs
        if self.shift < 0:
            low = keyeq.poly_trim(self.coeffs[: -self.shift])
            if low:
                raise ValueError("Laurent element has negative-degree terms")
            p = self.coeffs[-self.shift:]
        return keyeq.poly_trim(p)

    def canonical(self, field):
        """(coeffs, lowest_exponent) with zero padding stripped."""
        lo = 0
        c = self.coeffs[:]
        while c and c[0] == 0:
            c.pop(0)
            lo += 1
        return keyeq.poly_trim(c), self.shift + lo


@dataclass
class BmState:
    """Iteration state after i steps of the sigma/tau recursion."""

    i: int
    sigma: list[int]
    tau: list[int]
    D: int
    C: int = -1
    delta_history: list[int] = dc_field(default_factory=list)
    c_sigma: list[int] | None = None      # sigma^(c) at the last D change
    c_delta: int | None = None            # Delta_c at the last D change
    beta_last: int = 1                    # beta(i), inversionless runs only
    beta_product: int = 1                 # prod_{j<i} beta(j)
    omega: Laurent | None = None          # verify mode
    gamma: Laurent | None = None          # verify mode
    sigma_trace: list[list[int]] = dc_field(default_factory=list)
    tau_trace: list[list[int]] = dc_field(default_factory=list)
    d_trace: list[int] = dc_field(default_factory=list)

    def trace_json(self, field) -> list[dict]:
        out = []
        for i, delta in enumerate(self.delta_history):
            out.append({
                "i": i,
                "delta": field.to_hex(delta),
                "D": self.d_trace[i + 1],
                "sigma": [field.to_hex(c) for c in self.sigma_trace[i + 1]],
                "tau": [field.to_hex(c) for c in self.tau_trace[i + 1]],
            })
        return out


def _new_state(verify: bool) -> BmState:
    st = BmState(i=0, sigma=[1], tau=[1], D=0)
    st.sigma_trace.append([1])
    st.tau_trace.append([1])
    st.d_trace.append(0)
    if verify:
        st.omega = Laurent([], 0)
        st.gamma = Laurent([1], -1)       # -x^-1; minus is plus in char 2
    return st


def discrepancy(field, synd: SyndromeSet, state: BmState,
                monic_at_zero: bool = True) -> int:
    """Delta_i = sum_{j=0}^{D(i)} S_(i+1-j) sigma_j^(i).

    The plain recursion keeps sigma_0 = 1 so the j = 0 term is a free add;
    the inversionless variant's scaled locator has a general constant term.
    """
    i = state.i
    sigma = state.sigma
    if monic_at_zero:
        acc = synd.s_at(i + 1)
        start = 1
    else:
        acc = field.mul(synd.s_at(i + 1), sigma[0])
        start = 1
    for j in range(start, min(state.D, len(sigma) - 1, i) + 1):
        if sigma[j] != 0:
            acc = field.add(acc, field.mul(synd.s_at(i + 1 - j), sigma[j]))
    return acc


def bm_step(field, synd: SyndromeSet, state: BmState, verify: bool = False) -> BmState:
    """One iteration: sigma update, then the D/tau branch."""
    i = state.i
    delta = discrepancy(field, synd, state)
    sigma_next = state.sigma[:]
    if delta != 0:
        shifted_tau = [0] + state.tau
        while len(sigma_next) < len(shifted_tau):
            sigma_next.append(0)
        for j, c in enumerate(shifted_tau):
            if c != 0:
                sigma_next[j] = field.add(sigma_next[j], field.neg(field.mul(delta, c)))
    sigma_next = poly_trim(sigma_next) or [1]

    grow = delta != 0 and 2 * state.D < i + 1
    if grow:
        state_c_sigma = state.sigma[:]
        state_c_delta = delta
        inv_d = field.inv(delta)
        tau_next = [field.mul(c, inv_d) for c in state.sigma]
        d_next = i + 1 - state.D
        c_next = i
    else:
        state_c_sigma = state.c_sigma
        state_c_delta = state.c_delta
        tau_next = [0] + state.tau
        d_next = state.D
        c_next = state.C

    omega_next = gamma_next = None
    if verify:
        omega_next = Laurent(state.omega.coeffs[:], state.omega.shift)
        if delta != 0:
            gx = state.gamma.times_x()
            gx = gx.scaled(field, delta)
            omega_next = _laurent_sub(field, omega_next, gx)
        if grow:
            gamma_next = state.omega.scaled(field, inv_d)
        else:
            gamma_next = state.gamma.times_x()

    nxt = BmState(
        i=i + 1, sigma=sigma_next, tau=tau_next, D=d_next, C=c_next,
        delta_history=state.delta_history + [delta],
        c_sigma=state_c_sigma, c_delta=state_c_delta,
        omega=omega_next, gamma=gamma_next,
        sigma_trace=state.sigma_trace, tau_trace=state.tau_trace,
        d_trace=state.d_trace)
    nxt.sigma_trace.append(sigma_next[:])
    nxt.tau_trace.append(tau_next[:])
    nxt.d_trace.append(d_next)
    return nxt


def _laurent_sub(field, a: Laurent, b: Laurent) -> Laurent:
    shift = min(a.shift, b.shift)
    la = [0] * (a.shift - shift) + a.coeffs
    lb = [0] * (b.shift - shift) + b.coeffs
    if len(la) < len(lb):
        la += [0] * (len(lb) - len(la))
    for j, c in enumerate(lb):
        la[j] = field.add(la[j], field.neg(c))
    return Laurent(la, shift)


def bm_run(synd: SyndromeSet, verify: bool = False, field=None) -> BmState:
    """d-1 iterations; for true e <= t ends with sigma^(d-1) = sigma, D = e."""
    field = field or synd.field
    if not verify and not hasattr(field, "base"):
        return _bm_run_fast(field, synd)
    state = _new_state(verify)
    for _ in range(synd.d - 1):
        state = bm_step(field, synd, state, verify)
    return state


def _bm_run_fast(field, synd: SyndromeSet) -> BmState:
    """Same recursion as bm_step with the log/antilog tables in locals."""
    exp, log, fn = field.exp_table, field.log_table, field.n
    s = synd.s
    sigma, tau = [1], [1]
    D, C = 0, -1
    c_sigma = c_delta = None
    deltas = []
    sigma_trace, tau_trace, d_trace = [[1]], [[1]], [0]
    for i in range(synd.d - 1):
        acc = s[i]
        for j in range(1, min(D, len(sigma) - 1, i) + 1):
            c = sigma[j]
            sv = s[i - j]
            if c and sv:
                acc ^= exp[(log[c] + log[sv]) % fn]
        delta = acc
        deltas.append(delta)
        if delta:
            ld = log[delta]
            sigma_next = sigma + [0] * (len(tau) + 1 - len(sigma))
            for j, c in enumerate(tau):
                if c:
                    sigma_next[j + 1] ^= exp[(ld + log[c]) % fn]
            while len(sigma_next) > 1 and sigma_next[-1] == 0:
                sigma_next.pop()
        else:
            sigma_next = sigma
        if delta and 2 * D < i + 1:
            c_sigma, c_delta = sigma[:], delta
            li = (fn - log[delta]) % fn
            tau = [exp[(log[c] + li) % fn] if c else 0 for c in sigma]
            D = i + 1 - D
            C = i
        else:
            tau = [0] + tau
        sigma = sigma_next
        sigma_trace.append(sigma[:])
        tau_trace.append(tau[:])
        d_trace.append(D)
    state = BmState(i=synd.d - 1, sigma=sigma, tau=tau, D=D, C=C,
                    delta_history=deltas, c_sigma=c_sigma, c_delta=c_delta,
                    sigma_trace=sigma_trace, tau_trace=tau_trace,
                    d_trace=d_trace)
    return state


def bm_omega(field, sigma: list[int], synd: SyndromeSet, e: int) -> list[int]:
    """omega_0 = S_1; omega_i = S_(i+1) + sum_{j<=i} S_(i+1-j) sigma_j."""
    if e == 0:
        return []
    omega = [synd.s_at(1)]
    for i in range(1, e):
        acc = synd.s_at(i + 1)
        for j in range(1, min(i, len(sigma) - 1) + 1):
            if sigma[j] != 0:
                acc = field.add(acc, field.mul(synd.s_at(i + 1 - j), sigma[j]))
        omega.append(acc)
    return poly_trim(omega)


def bm_values_tau(field, state: BmState, sigma_prime: list[int],
                  inverse_roots, d: int) -> list[int]:
    """E_i = -(X_i^-1)^(d-2) / (sigma'(X_i^-1) tau^(d-1)(X_i^-1))."""
    values = []
    for xr in inverse_roots:
        denom = field.mul(keyeq.poly_eval(field, sigma_prime, xr),
                          keyeq.poly_eval(field, state.tau, xr))
        if denom == 0:
            raise ZeroDivisionError("tau formula denominator vanished")
        values.append(field.neg(field.div(field.pow(xr, d - 2), denom)))
    return values


def bm_values_horiguchi(field, state: BmState, sigma_prime: list[int],
                        inverse_roots) -> list[int]:
    """E_i = -(X_i^-1)^c Delta_c / (sigma'(X_i^-1) sigma^(c)(X_i^-1)).

    sigma^(c) and Delta_c are snapshots from the most recent D change; this
    equals the tau formula exactly but evaluates a lower-degree polynomial.
    """
    if state.c_sigma is None:
        raise ValueError("no D change happened; no snapshot to evaluate")
    c = state.C
    values = []
    for xr in inverse_roots:
        denom = field.mul(keyeq.poly_eval(field, sigma_prime, xr),
                          keyeq.poly_eval(field, state.c_sigma, xr))
        if denom == 0:
            raise ZeroDivisionError("snapshot formula denominator vanished")
        num = field.mul(field.pow(xr, c), state.c_delta)
        values.append(field.neg(field.div(num, denom)))
    return values


# ---------------------------------------------------------------------------
# inversionless variant


def bm_step_inversionless(field, synd: SyndromeSet, state: BmState) -> BmState:
    """Scaled recursion: sigma^(i+1) = beta(i) sigma^(i) - Delta^_i x tau^(i).

    No inversions; the final sigma^ is (prod beta(j)) times the plain sigma.
    """
    i = state.i
    delta = discrepancy(field, synd, state, monic_at_zero=False)   # Delta^_i
    shifted_tau = [0] + state.tau
    width = max(len(state.sigma), len(shifted_tau))
    sigma_next = [0] * width
    for j in range(width):
        acc = 0
        if j < len(state.sigma) and state.sigma[j] != 0:
            acc = field.mul(state.beta_last, state.sigma[j])
        if delta != 0 and j < len(shifted_tau) and shifted_tau[j] != 0:
            acc = field.add(acc, field.neg(field.mul(delta, shifted_tau[j])))
        sigma_next[j] = acc
    sigma_next = poly_trim(sigma_next) or [1]

    grow = delta != 0 and 2 * state.D < i + 1
    if grow:
        tau_next = state.sigma[:]
        beta_next = delta
        d_next = i + 1 - state.D
        c_next = i
        c_sigma, c_delta = state.sigma[:], delta
    else:
        tau_next = [0] + state.tau
        beta_next = state.beta_last
        d_next = state.D
        c_next = state.C
        c_sigma, c_delta = state.c_sigma, state.c_delta

    nxt = BmState(
        i=i + 1, sigma=sigma_next, tau=tau_next, D=d_next, C=c_next,
        delta_history=state.delta_history + [delta],
        c_sigma=c_sigma, c_delta=c_delta,
        beta_last=beta_next,
        beta_product=field.mul(state.beta_product, state.beta_last),
        sigma_trace=state.sigma_trace, tau_trace=state.tau_trace,
        d_trace=state.d_trace)
    nxt.sigma_trace.append(sigma_next[:])
    nxt.tau_trace.append(tau_next[:])
    nxt.d_trace.append(d_next)
    return nxt


def bm_run_inversionless(synd: SyndromeSet, field=None) -> BmState:
    field = field or synd.field
    state = _new_state(verify=False)
    for _ in range(synd.d - 1):
        state = bm_step_inversionless(field, synd, state)
    return state


def bm_values_inversionless(field, state: BmState, sigma_hat_prime: list[int],
                            inverse_roots, d: int) -> list[int]:
    """Scaled tau formula: E = -b beta(d-1) (X^-1)^(d-2) / (sigma^' tau^).

    After d-1 steps beta_product = prod_{j<=d-2} beta(j) = b and beta_last
    is beta(d-1).
    """
    values = []
    scale = field.mul(state.beta_product, state.beta_last)
    for xr in inverse_roots:
        denom = field.mul(keyeq.poly_eval(field, sigma_hat_prime, xr),
                          keyeq.poly_eval(field, state.tau, xr))
        if denom == 0:
            raise ZeroDivisionError("scaled tau denominator vanished")
        num = field.mul(scale, field.pow(xr, d - 2))
        values.append(field.neg(field.div(num, denom)))
    return values


# ---------------------------------------------------------------------------
# pipeline


VALUE_FORMULAS = ("forney", "tau", "horiguchi")


def bm_decode(code, word, gates: bool = True, values: str = "forney",
              inversionless: bool = False, verify: bool = False,
              synd: SyndromeSet | None = None, want_state: bool = False):
    """Full BM pipeline with the selected value formula.

    Gates: deg sigma^(d-1) <= t, D(d-1) = deg sigma^(d-1), and an exact
    Chien root count; violations fail with the matching reason and make the
    decoder t-bounded-distance.  ``inversionless`` switches to the scaled
    recursion (zero inversions) and its scaled value formula.
    """
    if not inversionless and values not in VALUE_FORMULAS:
        raise ValueError(f"unknown value formula {values!r}")
    field = code.field
    if synd is None:
        synd = compute_syndromes(code, word)
    elif synd.field is not field:
        synd = SyndromeSet(field, synd.d, synd.l, synd.s)

    state = None

    def done(outcome):
        return (outcome, state) if want_state else outcome

    if synd.all_zero:
        return done(DecodeOutcome.no_error(word))
    try:
        with field.phase("locator"):
            if inversionless:
                state = bm_run_inversionless(synd, field=field)
            else:
                state = bm_run(synd, verify=verify, field=field)
        sigma = state.sigma
        e_claimed = poly_deg(sigma)
        with field.phase("gates"):
            if gates:
                # deg sigma <= D always, so D > t covers both halves of the
                # "claimed errors fit" condition
                if state.D > synd.t:
                    return done(DecodeOutcome.failure(
                        FailureReason.TOO_MANY_ERRORS,
                        f"D(d-1) = {state.D} > t = {synd.t}"))
                if state.D != e_claimed:
                    return done(DecodeOutcome.failure(
                        FailureReason.DEGREE_MISMATCH,
                        f"D(d-1) = {state.D} != deg sigma = {e_claimed}"))
        if e_claimed == 0:
            # nonzero syndromes but sigma = 1: correct nothing (ungated path)
            pattern = rscode.ErrorPattern((), ())
            return done(DecodeOutcome.corrected(pattern, list(word)))
        positions, inverse_roots, deficit = chien_search(code, sigma, e_claimed)
        if deficit:
            return done(DecodeOutcome.failure(
                FailureReason.CHIEN_ROOT_DEFICIT,
                f"{len(positions)} roots for degree {e_claimed}"))
        with field.phase("values"):
            sigma_prime = keyeq.formal_derivative(field, sigma)
            if inversionless:
                vals = bm_values_inversionless(field, state, sigma_prime,
                                               inverse_roots, synd.d)
            elif values == "forney":
                omega = bm_omega(field, sigma, synd, e_claimed)
                vals = keyeq.forney(field, sigma_prime, omega, inverse_roots)
            elif values == "tau":
                vals = bm_values_tau(field, state, sigma_prime, inverse_roots,
                                     synd.d)
            else:
                vals = bm_values_horiguchi(field, state, sigma_prime,
                                           inverse_roots)
        return done(rscode.assemble_correction(code, word, positions, vals, gates))
    except DecodeFailure as fail:
        return done(DecodeOutcome.failure(fail.reason, fail.detail))
    except ZeroDivisionError:
        return done(DecodeOutcome.failure(FailureReason.ZERO_ERROR_VALUE,
                                          "division by zero in value formula"))

