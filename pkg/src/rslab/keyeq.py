"""Shared key-equation machinery.

Polynomials are lists of ints, index i <-> coefficient of x^i.  Syndromes,
the Hankel syndrome matrix and its blocks, Chien search, Forney evaluation,
the key-equation residual check, and the uniform decode outcome live here;
every decoder family consumes these.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

# ---------------------------------------------------------------------------
# polynomial utilities


def poly_trim(p: list[int]) -> list[int]:
    """Drop trailing zero coefficients ([] is the zero polynomial)."""
    end = len(p)
    while end > 0 and p[end - 1] == 0:
        end -= 1
    return p[:end]


def poly_deg(p: list[int]) -> int:
    """Degree, -1 for the zero polynomial."""
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


def poly_add(field, a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return out


def poly_scale(field, p: list[int], s: int) -> list[int]:
    return [field.mul(c, s) for c in p]


def poly_mul(field, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def poly_mul_mod_xk(field, a: list[int], b: list[int], k: int) -> list[int]:
    """a*b mod x^k."""
    out = [0] * k
    for i, x in enumerate(a):
        if x == 0 or i >= k:
            continue
        for j, y in enumerate(b):
            if i + j >= k:
                break
            if y != 0:
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def poly_coeff(field, a: list[int], b: list[int], k: int) -> int:
    """Coefficient of x^k in a*b, without forming the product."""
    acc = 0
    lo = max(0, k - len(b) + 1)
    hi = min(k, len(a) - 1)
    for i in range(lo, hi + 1):
        if a[i] != 0 and b[k - i] != 0:
            acc = field.add(acc, field.mul(a[i], b[k - i]))
    return acc


def poly_eval(field, p: list[int], x: int) -> int:
    """Horner evaluation."""
    acc = 0
    for c in reversed(p):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_divmod(field, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = a[:]
    db = len(b) - 1
    lead_inv = field.inv(b[-1])
    quot = [0] * max(0, len(a) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        if rem[i] == 0:
            continue
        f = field.mul(rem[i], lead_inv)
        quot[i - db] = f
        for j, c in enumerate(b):
            rem[i - db + j] = field.add(rem[i - db + j], field.mul(f, c))
    return poly_trim(quot), poly_trim(rem)


def formal_derivative(field, p: list[int]) -> list[int]:
    """Formal derivative; in characteristic 2 only odd-degree terms survive."""
    out = [0] * max(0, len(p) - 1)
    for j in range(1, len(p)):
        if j % 2 == 1:
            out[j - 1] = p[j]
    return poly_trim(out)


def format_poly(field, p: list[int]) -> str:
    """Human-readable a^k rendering, ascending powers of x."""
    p = poly_trim(p)
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        coeff = field.to_log_notation(c)
        if i == 0:
            parts.append(coeff)
        else:
            xpow = "x" if i == 1 else f"x^{i}"
            parts.append(xpow if coeff == "1" else f"{coeff}*{xpow}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# syndromes


class SyndromeSet:
    """The d-1 syndromes S_i = r(alpha^(l+i-1)), with matrix/polynomial views.

    ``s[i-1]`` stores S_i.  The Hankel syndrome matrix A is (d-1-t) x (t+1)
    with A[r][c] = S_(r+c+1); A_i denotes its i x i leading principal minor
    and B_i the i x (i+1) top-left block.
    """

    __slots__ = ("field", "d", "l", "s")

    def __init__(self, field, d: int, l: int, s: list[int]):
        if len(s) != d - 1:
            raise ValueError("need exactly d-1 syndromes")
        self.field = field
        self.d = d
        self.l = l
        self.s = s

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    def s_at(self, i: int) -> int:
        """S_i, 1-indexed."""
        if not 1 <= i <= self.d - 1:
            raise IndexError(f"syndrome index {i} out of range 1..{self.d - 1}")
        return self.s[i - 1]

    @property
    def all_zero(self) -> bool:
        return all(x == 0 for x in self.s)

    def poly(self) -> list[int]:
        """S(x) = sum S_i x^(i-1)."""
        return self.s[:]

    def matrix(self) -> list[list[int]]:
        t = self.t
        rows = self.d - 1 - t
        return [[self.s[r + c] for c in range(t + 1)] for r in range(rows)]

    def leading_minor(self, i: int) -> list[list[int]]:
        """A_i, entries S_(r+c-1) for 1 <= r, c <= i."""
        return [[self.s[r + c] for c in range(i)] for r in range(i)]

    def rect_block(self, i: int) -> list[list[int]]:
        """B_i, the i x (i+1) Hankel block."""
        return [[self.s[r + c] for c in range(i + 1)] for r in range(i)]

    def to_json(self) -> list[str]:
        return [self.field.to_hex(x) for x in self.s]


def compute_syndromes(code, word) -> SyndromeSet:
    """S_i = r(alpha^(l+i-1)) for i = 1..d-1, each by Horner's rule."""
    field = code.field
    n = code.n
    if len(word) != n:
        raise ValueError(f"word length {len(word)} != n={n}")
    s = []
    if not hasattr(field, "base"):
        # plain field: same Horner loop with the tables held in locals
        exp, log, fn = field.exp_table, field.log_table, field.n
        for i in range(code.d - 1):
            lp = (code.l + i) % fn
            acc = word[n - 1]
            for j in range(n - 2, -1, -1):
                if acc:
                    acc = exp[(log[acc] + lp) % fn] ^ word[j]
                else:
                    acc = word[j]
            s.append(acc)
        return SyndromeSet(field, code.d, code.l, s)
    with field.phase("syndromes"):
        for i in range(code.d - 1):
            point = field.alpha_pow(code.l + i)
            acc = word[n - 1]
            for j in range(n - 2, -1, -1):
                acc = field.add(field.mul(acc, point), word[j])
            s.append(acc)
    return SyndromeSet(field, code.d, code.l, s)


# ---------------------------------------------------------------------------
# decode outcomes


class FailureReason(Enum):
    SYNDROME_EXHAUSTED = "syndrome_exhausted"
    TOO_MANY_ERRORS = "too_many_errors"
    CHIEN_ROOT_DEFICIT = "chien_root_deficit"
    RANK_MISMATCH = "rank_mismatch"
    DEGREE_MISMATCH = "degree_mismatch"
    ZERO_ERROR_VALUE = "zero_error_value"


class DecodeFailure(Exception):
    """Raised inside pipelines; surfaces as DecodeOutcome.failure."""

    def __init__(self, reason: FailureReason, detail: str = ""):
        super().__init__(detail or reason.value)
        self.reason = reason
        self.detail = detail


@dataclass(frozen=True)
class DecodeOutcome:
    """NoError | Corrected{pattern, codeword} | Failure{reason}."""

    status: str                      # "no_error" | "corrected" | "failure"
    pattern: object = None           # ErrorPattern for corrected outcomes
    codeword: tuple = ()             # decoded word for no_error/corrected
    reason: FailureReason | None = None
    detail: str = ""

    @classmethod
    def no_error(cls, word) -> "DecodeOutcome":
        return cls(status="no_error", codeword=tuple(word))

    @classmethod
    def corrected(cls, pattern, word) -> "DecodeOutcome":
        return cls(status="corrected", pattern=pattern, codeword=tuple(word))

    @classmethod
    def failure(cls, reason: FailureReason, detail: str = "") -> "DecodeOutcome":
        return cls(status="failure", reason=reason, detail=detail)

    @property
    def ok(self) -> bool:
        return self.status != "failure"

    def output_word(self) -> list[int]:
        if self.status == "failure":
            raise ValueError("failure outcome has no output word")
        return list(self.codeword)

    def to_json(self, field=None) -> dict:
        out: dict = {"outcome": self.status}
        if self.status == "failure":
            out["failure_reason"] = self.reason.value
            if self.detail:
                out["detail"] = self.detail
        elif self.status == "corrected":
            out["positions"] = list(self.pattern.positions)
            if field is not None:
                out["values"] = [field.to_hex(v) for v in self.pattern.values]
                out["codeword"] = [field.to_hex(c) for c in self.codeword]
        return out


# ---------------------------------------------------------------------------
# Chien search

_chien_cache: dict[tuple, tuple] = {}


def chien_search(code, sigma: list[int], claimed: int | None = None):
    """Root search over all nonzero field elements, one step per element.

    Walks i = 1..n keeping running terms sigma_j * alpha^(i*j); each step
    multiplies term j by alpha^j and tests 1 + sum = 0.  A root at step i is
    alpha^i = X^-1 for error position p = n - i, recorded descending so the
    returned positions are increasing (the bound includes i = n so position
    0 is reachable).  ``claimed`` is the caller's asserted error count (the
    loop's countdown start); root_deficit reports that fewer than claimed
    distinct roots exist.  Defaults to deg(sigma).
    """
    field = code.field
    base = field.base if hasattr(field, "base") else field
    sigma = poly_trim(sigma)
    e = len(sigma) - 1
    if claimed is None:
        claimed = max(e, 0)
    if e < 1:
        return [], [], claimed != 0
    if sigma[0] not in (0, 1):
        # scaled locators share the root set of their unit-constant form,
        # so normalize for both the scan and the cache key
        inv0 = base.inv(sigma[0])
        sigma = [base.mul(c, inv0) for c in sigma]
    key = (base, code.n, tuple(sigma))
    hit = _chien_cache.get(key)
    if hit is None:
        hit = _chien_scan(base, code.n, sigma, e)
        if len(_chien_cache) > 1 << 16:
            _chien_cache.clear()
        _chien_cache[key] = hit
    positions, inverse_roots = hit
    return list(positions), list(inverse_roots), len(positions) != claimed


def _chien_scan(field, n: int, sigma: list[int], e: int):
    exp = field.exp_table
    log = field.log_table
    fn = field.n
    const = sigma[0]       # 1 for unit locators, det/beta scale otherwise
    terms = sigma[1:]
    positions = [0] * e
    inv_roots = [0] * e
    k = e
    for i in range(1, n + 1):
        acc = const
        for j in range(e):
            c = terms[j]
            if c:
                c = exp[(log[c] + j + 1) % fn]
                terms[j] = c
                acc ^= c
        if acc == 0:
            k -= 1
            positions[k] = n - i
            inv_roots[k] = exp[i % fn]
            if k == 0:
                break
    return tuple(positions[k:]), tuple(inv_roots[k:])


# ---------------------------------------------------------------------------
# value evaluation helpers


def forney(field, sigma_prime: list[int], omega: list[int], inverse_roots) -> list[int]:
    """E_i = -omega(X_i^-1) / sigma'(X_i^-1)."""
    values = []
    for xr in inverse_roots:
        denom = poly_eval(field, sigma_prime, xr)
        if denom == 0:
            raise ZeroDivisionError("sigma' vanishes at a located root")
        num = poly_eval(field, omega, xr)
        values.append(field.neg(field.div(num, denom)))
    return values


def correct_values_for_offset(field, values, inverse_roots, l: int) -> list[int]:
    """Undo the X^(l-1) scaling baked into offset-l syndromes.

    With S_i = r(alpha^(l+i-1)) the key-equation machinery recovers
    E~_j = E_j * X_j^(l-1); the true value is E~_j * (X_j^-1)^(l-1).
    """
    if l == 1:
        return list(values)
    return [field.mul(v, field.pow(xr, l - 1))
            for v, xr in zip(values, inverse_roots)]


def key_equation_residual(field, sigma: list[int], omega: list[int],
                          s_poly: list[int], d: int) -> bool:
    """True iff sigma(x) S(x) = omega(x) (mod x^(d-1))."""
    prod = poly_mul_mod_xk(field, sigma, s_poly, d - 1)
    omega_mod = poly_trim(omega)[: d - 1]
    return poly_trim(prod) == poly_trim(omega_mod)


def is_valid_solution(field, sigma: list[int], omega: list[int],
                      s_poly: list[int], d: int) -> bool:
    """Valid solution of the key equation: congruence + deg omega < deg sigma."""
    return (poly_deg(omega) < poly_deg(sigma)
            and key_equation_residual(field, sigma, omega, s_poly, d))


def decode_report(field, synd: SyndromeSet | None, sigma: list[int] | None,
                  outcome: DecodeOutcome) -> dict:
    """The per-decode JSON fragment shared by the CLI and the harness."""
    rep = outcome.to_json(field)
    rep["syndromes"] = synd.to_json() if synd is not None else []
    rep["sigma"] = [field.to_hex(c) for c in sigma] if sigma else []
    return rep
