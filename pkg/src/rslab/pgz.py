"""The Peterson-Gorenstein-Zierler decoder family.

Classic PGZ finds the error count by a descending determinant scan and
solves the locator system densely.  Fast PGZ walks the nonsingular leading
principal minors of the Hankel syndrome matrix directly, jumping singular
stretches ("gaps") in one update, and keeps the update byproducts that the
Horiguchi-style value formula consumes.  Both share the BP (Bjorck-Pereyra)
error-value solver and the rank/root/value malfunction gates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import keyeq, linalg, rscode
from .keyeq import (DecodeFailure, DecodeOutcome, FailureReason, SyndromeSet,
                    chien_search, compute_syndromes, poly_trim)


# ---------------------------------------------------------------------------
# classic PGZ


def pgz_error_count(synd: SyndromeSet):
    """e = max{i <= t : det(A_i) != 0}, scanning i = t, t-1, ...

    Returns 0 when all syndromes vanish; raises DecodeFailure(TooManyErrors)
    when every leading minor is singular but some syndrome is nonzero.
    """
    if synd.all_zero:
        return 0
    field = synd.field
    for i in range(synd.t, 0, -1):
        if linalg.determinant(field, synd.leading_minor(i)) != 0:
            return i
    raise DecodeFailure(FailureReason.TOO_MANY_ERRORS,
                        "no nonsingular leading minor")


def pgz_solve_sigma(synd: SyndromeSet, e: int) -> list[int]:
    """Solve A_e (sigma_e..sigma_1)^T = -(S_(e+1)..S_(2e))^T; sigma_0 = 1."""
    field = synd.field
    rhs = [field.neg(synd.s_at(e + 1 + r)) for r in range(e)]
    try:
        sol = linalg.solve(field, synd.leading_minor(e), rhs)
    except linalg.SingularMatrixError:
        raise DecodeFailure(FailureReason.RANK_MISMATCH,
                            "locator system unexpectedly singular")
    # sol = (sigma_e, ..., sigma_1)
    return [1] + sol[::-1]


def bp_solve_values(field, roots_x: list[int], syndromes: list[int]) -> list[int]:
    """Error values from the Vandermonde-times-diagonal system V X E = s.

    Two triangular sweeps transform s into y = V^-1 s in place, then the
    diagonal system gives E_i = y_(i-1) X_i^-1.
    """
    e = len(roots_x)
    if len(syndromes) < e:
        raise ValueError("need the first e syndromes")
    y = list(syndromes[:e])
    for k in range(1, e):
        for i in range(e - 1, k - 1, -1):
            y[i] = field.add(y[i], field.neg(field.mul(roots_x[k - 1], y[i - 1])))
    for k in range(e - 1, 0, -1):
        for i in range(k, e):
            y[i] = field.div(y[i], field.add(roots_x[i], field.neg(roots_x[i - k])))
        for i in range(k - 1, e - 1):
            y[i] = field.add(y[i], field.neg(y[i + 1]))
    return [field.div(y[i], roots_x[i]) for i in range(e)]


# ---------------------------------------------------------------------------
# fast PGZ state machine


@dataclass
class FpgzState:
    """One committed nonsingular index i with its solved w/y vectors.

    w solves A_i w = -(S_(i+1)..S_(2i))^T and y solves A_i y = (0..0,1)^T.
    theta retains the previous committed index together with its w vector
    and the gap coefficient eps_(e-theta), feeding the Horiguchi-style value
    formula without recomputation.
    """

    i: int
    w: list[int]
    y: list[int]
    theta: int | None = None
    w_theta: list[int] | None = None
    eps_jump: int | None = None          # eps_r of the jump theta -> i
    epsilons: list[int] = dc_field(default_factory=list)  # scan at this state
    eta: int | None = None               # only set on gap-1 steps


@dataclass
class FpgzTrace:
    """Committed states in order, for golden tests and --trace output."""

    states: list[FpgzState] = dc_field(default_factory=list)
    verified_eps_zero: int = 0           # trailing eps_j = 0 confirmed at the end

    def to_json(self, field) -> list[dict]:
        out = []
        for st in self.states:
            rec = {
                "i": st.i,
                "w": [field.to_hex(x) for x in st.w],
                "y": [field.to_hex(x) for x in st.y],
                "epsilons": [field.to_hex(x) for x in st.epsilons],
            }
            if st.eta is not None:
                rec["eta"] = field.to_hex(st.eta)
            out.append(rec)
        return out


def _dot_plus_tail(field, synd, start: int, vec: list[int], tail_index: int) -> int:
    """S_start*vec_0 + S_(start+1)*vec_1 + ... + S_tail_index."""
    acc = synd.s_at(tail_index)
    for j, v in enumerate(vec):
        if v != 0:
            acc = field.add(acc, field.mul(synd.s_at(start + j), v))
    return acc


def fpgz_base_step(synd: SyndromeSet) -> FpgzState | None:
    """Start at i0 = min{j : S_j != 0}; None when every syndrome is zero.

    A_(i0) is nonsingular anti-triangular with constant anti-diagonal S_(i0),
    so y is (S_(i0)^-1, 0..0) and w comes from back-substitution.
    """
    field = synd.field
    i0 = next((i for i in range(1, synd.d) if synd.s_at(i) != 0), None)
    if i0 is None:
        return None
    if i0 > synd.t:
        raise DecodeFailure(FailureReason.TOO_MANY_ERRORS,
                            f"first nonzero syndrome at {i0} > t={synd.t}")
    s0_inv = field.inv(synd.s_at(i0))
    y = [0] * i0
    y[0] = s0_inv
    w = [0] * i0
    # row r (1-indexed): sum_{c >= i0+1-r} S_(r+c-1) w_(c-1) = -S_(i0+r)
    for r in range(1, i0 + 1):
        acc = field.neg(synd.s_at(i0 + r))
        for c in range(i0 + 2 - r, i0 + 1):
            acc = field.add(acc, field.neg(field.mul(synd.s_at(r + c - 1), w[c - 1])))
        w[i0 - r] = field.mul(acc, s0_inv)
    return FpgzState(i=i0, w=w, y=y)


def fpgz_iterate(state: FpgzState, synd: SyndromeSet) -> FpgzState | None:
    """One committed step i -> i+r, or None when the scan exhausts (e = i).

    Scans eps_j (j = 1..t-i) for the singularity gap r.  Gap 1 uses the
    short update with eta; larger gaps build the auxiliary a/b vector
    families and assemble w^(i+r) from them.
    """
    field = synd.field
    i, w, y = state.i, state.w, state.y
    t = synd.t
    epsilons = []
    r = None
    for j in range(1, t - i + 1):
        eps = _dot_plus_tail(field, synd, i + j, w, 2 * i + j)
        epsilons.append(eps)
        if eps != 0:
            r = j
            break
    state.epsilons = epsilons
    if r is None:
        return None

    eps_r = epsilons[-1]
    if r == 1:
        inv_e1 = field.inv(eps_r)
        y_next = [field.mul(x, inv_e1) for x in w] + [inv_e1]
        eta = 0
        for j, v in enumerate(y):
            if v != 0:
                eta = field.add(eta, field.mul(synd.s_at(i + 1 + j), v))
        eps2 = _dot_plus_tail(field, synd, i + 2, w, 2 * i + 2)
        scale = field.add(field.mul(eps_r, eta), field.neg(eps2))
        w_next = [0] + w
        for j in range(i):
            w_next[j] = field.add(w_next[j], field.neg(field.mul(eps_r, y[j])))
        for j in range(i + 1):
            w_next[j] = field.add(w_next[j], field.mul(scale, y_next[j]))
        nxt = FpgzState(i=i + 1, w=w_next, y=y_next)
        nxt.eta = eta
        state.eta = eta
    else:
        inv_er = field.inv(eps_r)
        y_next = [field.mul(x, inv_er) for x in w] + [inv_er] + [0] * (r - 1)
        # a^(j): A_(i+r) a^(j) = unit vector at row i+r-j
        a_vecs = [y_next]
        for j in range(1, r):
            prev = a_vecs[j - 1]
            alpha_j = 0
            for idx in range(i + j):
                if prev[idx] != 0:
                    alpha_j = field.add(
                        alpha_j, field.mul(synd.s_at(i + r + 1 + idx), prev[idx]))
            vec = [0] + prev[: i + j] + [0] * (r - j - 1)
            for idx in range(i + r):
                vec[idx] = field.add(vec[idx], field.neg(field.mul(alpha_j, y_next[idx])))
            a_vecs.append(vec)
        # b^(j): A_i b^(j) = -(S_(i+j+1)..S_(2i+j))^T
        b = list(w)
        for j in range(1, r + 1):
            beta_j = _dot_plus_tail(field, synd, i + 1, b, 2 * i + j)
            tail = b[i - 1]
            b_next = [0] + b[: i - 1]
            for idx in range(i):
                b_next[idx] = field.add(b_next[idx], field.neg(field.mul(tail, w[idx])))
                b_next[idx] = field.add(b_next[idx], field.neg(field.mul(beta_j, y[idx])))
            b = b_next
        gammas = []
        for ll in range(1, r + 1):
            g = 0
            for idx in range(i):
                if b[idx] != 0:
                    g = field.add(g, field.mul(synd.s_at(i + ll + idx), b[idx]))
            gammas.append(g)
        w_next = b + [0] * r
        for ll in range(r):
            coeff = field.add(gammas[r - ll - 1], synd.s_at(2 * i + 2 * r - ll))
            if coeff != 0:
                for idx in range(i + r):
                    w_next[idx] = field.add(
                        w_next[idx], field.neg(field.mul(coeff, a_vecs[ll][idx])))
        nxt = FpgzState(i=i + r, w=w_next, y=y_next)

    nxt.theta = i
    nxt.w_theta = list(w)
    nxt.eps_jump = eps_r
    return nxt


def fpgz_run(synd: SyndromeSet) -> tuple[FpgzState | None, FpgzTrace]:
    """Base step plus iteration until the scan exhausts or i = t."""
    trace = FpgzTrace()
    state = fpgz_base_step(synd)
    if state is None:
        return None, trace
    trace.states.append(state)
    while state.i < synd.t:
        nxt = fpgz_iterate(state, synd)
        if nxt is None:
            trace.verified_eps_zero = len(state.epsilons)
            return state, trace
        state = nxt
        trace.states.append(state)
    return state, trace


def sigma_from_w(w: list[int]) -> list[int]:
    """sigma(x) = w_0 x^i + w_1 x^(i-1) + ... + w_(i-1) x + 1."""
    return [1] + w[::-1]


def fpgz_values_horiguchi(field, state: FpgzState, sigma_prime: list[int],
                          inverse_roots: list[int]) -> list[int]:
    """E_i = -eps * (X_i^-1)^(e+theta-1) / (sigma'(X_i^-1) P_w(X_i^-1)).

    P_w is the reciprocal-style polynomial of the retained w^(theta); eps is
    the gap coefficient recorded when the decoder jumped from theta to e.
    """
    if state.theta is None:
        raise ValueError("no earlier nonsingular index retained")
    e, theta = state.i, state.theta
    p_w = sigma_from_w(state.w_theta)
    eps = state.eps_jump
    values = []
    for xr in inverse_roots:
        denom = field.mul(keyeq.poly_eval(field, sigma_prime, xr),
                          keyeq.poly_eval(field, p_w, xr))
        if denom == 0:
            raise ZeroDivisionError("Horiguchi denominator vanished")
        num = field.mul(eps, field.pow(xr, e + theta - 1))
        values.append(field.neg(field.div(num, denom)))
    return values


# ---------------------------------------------------------------------------
# shared gate helpers


def residual_syndrome_check(synd: SyndromeSet, sigma: list[int], e: int,
                            skip: int = 0) -> bool:
    """rank(A) = e gate: S_(2e+j) + sum_i S_(2e+j-i) sigma_i = 0 for all j.

    Checks j = skip+1 .. d-1-2e; the first t-e equations equal the eps scan
    values and may already be known zero (pass skip to avoid rechecking).
    """
    field = synd.field
    for j in range(skip + 1, synd.d - 2 * e):
        acc = synd.s_at(2 * e + j)
        for i in range(1, e + 1):
            if sigma[i] != 0:
                acc = field.add(acc, field.mul(synd.s_at(2 * e + j - i), sigma[i]))
        if acc != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# pipelines


def pgz_decode(code, word, gates: bool = True,
               synd: SyndromeSet | None = None) -> DecodeOutcome:
    """Classic PGZ: determinant scan, dense locator solve, BP values."""
    field = code.field
    if synd is None:
        synd = compute_syndromes(code, word)
    elif synd.field is not field:
        synd = SyndromeSet(field, synd.d, synd.l, synd.s)
    if synd.all_zero:
        return DecodeOutcome.no_error(word)
    try:
        with field.phase("locator"):
            e = pgz_error_count(synd)
            sigma = pgz_solve_sigma(synd, e)
        with field.phase("gates"):
            if gates and not residual_syndrome_check(synd, sigma, e):
                return DecodeOutcome.failure(FailureReason.RANK_MISMATCH,
                                             "residual syndrome equations violated")
        positions, _, deficit = chien_search(code, sigma, e)
        if deficit:
            return DecodeOutcome.failure(
                FailureReason.CHIEN_ROOT_DEFICIT,
                f"{len(positions)} roots for claimed {e}")
        with field.phase("values"):
            roots_x = [field.alpha_pow(p) for p in positions]
            values = bp_solve_values(field, roots_x, synd.s[:e])
        return rscode.assemble_correction(code, word, positions, values, gates)
    except DecodeFailure as fail:
        return DecodeOutcome.failure(fail.reason, fail.detail)


def fpgz_decode(code, word, gates: bool = True, values: str = "bp",
                synd: SyndromeSet | None = None,
                want_trace: bool = False):
    """Fast PGZ pipeline; values picks the "bp" or "horiguchi" formula.

    With gates on this is a t-bounded-distance decoder: the four conditions
    (base index exists, exact root count, rank agreement via the residual
    syndrome equations, nonzero values) each map to a Failure reason.
    Returns the outcome, or (outcome, trace) when want_trace is set.
    """
    if values not in ("bp", "horiguchi"):
        raise ValueError(f"unknown value formula {values!r}")
    field = code.field
    if synd is None:
        synd = compute_syndromes(code, word)
    elif synd.field is not field:
        synd = SyndromeSet(field, synd.d, synd.l, synd.s)
    trace = FpgzTrace()

    def done(outcome):
        return (outcome, trace) if want_trace else outcome

    if synd.all_zero:
        return done(DecodeOutcome.no_error(word))
    try:
        with field.phase("locator"):
            state, trace = fpgz_run(synd)
        e = state.i
        sigma = sigma_from_w(state.w)
        with field.phase("gates"):
            if gates and not residual_syndrome_check(
                    synd, sigma, e, skip=trace.verified_eps_zero):
                return done(DecodeOutcome.failure(
                    FailureReason.RANK_MISMATCH,
                    "residual syndrome equations violated"))
        positions, inverse_roots, deficit = chien_search(code, sigma, e)
        if deficit:
            return done(DecodeOutcome.failure(
                FailureReason.CHIEN_ROOT_DEFICIT,
                f"{len(positions)} roots for claimed {e}"))
        with field.phase("values"):
            if values == "horiguchi" and state.theta is not None:
                sigma_prime = keyeq.formal_derivative(field, sigma)
                vals = fpgz_values_horiguchi(field, state, sigma_prime, inverse_roots)
            else:
                # theta may be missing when e = i0; BP is the fallback
                roots_x = [field.alpha_pow(p) for p in positions]
                vals = bp_solve_values(field, roots_x, synd.s[:e])
        return done(rscode.assemble_correction(code, word, positions, vals, gates))
    except DecodeFailure as fail:
        return done(DecodeOutcome.failure(fail.reason, fail.detail))
    except ZeroDivisionError:
        return done(DecodeOutcome.failure(FailureReason.ZERO_ERROR_VALUE,
                                          "division by zero in value formula"))
