"""RS(n, d, alpha) codes over GF(2^m): generator polynomials, systematic
encoding, membership tests, and channel error injection.

Words are lists of n ints, index i <-> coefficient of x^i.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf import GF2m
from . import keyeq


@dataclass(frozen=True)
class ErrorPattern:
    """Sorted error positions with their (nonzero) values."""

    positions: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.values):
            raise ValueError("positions and values must pair up")
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("positions must be strictly increasing")
        if any(v == 0 for v in self.values):
            raise ValueError("error values must be nonzero")

    @property
    def weight(self) -> int:
        return len(self.positions)


class CodeSpec:
    """An RS(n, d, alpha) code with root offset l (default 1).

    n is pinned to q-1 (the Reed-Solomon special case); the generator is
    g(x) = (x - alpha^l)(x - alpha^(l+1))...(x - alpha^(l+d-2)), monic of
    degree d-1, so k = n - d + 1 and the code is MDS.
    """

    __slots__ = ("field", "n", "d", "l", "t", "k", "g")

    def __init__(self, field: GF2m, d: int, l: int = 1):
        n = field.q - 1
        if not 2 <= d <= n:
            raise ValueError(f"design distance d={d} out of range 2..{n}")
        self.field = field
        self.n = n
        self.d = d
        self.l = l
        self.t = (d - 1) // 2
        self.k = n - d + 1
        self.g = generator_poly(self)

    def with_field(self, field) -> "CodeSpec":
        """Same code over a wrapped (e.g. counting) field; skips rebuilding g."""
        clone = object.__new__(CodeSpec)
        clone.field = field
        clone.n, clone.d, clone.l = self.n, self.d, self.l
        clone.t, clone.k, clone.g = self.t, self.k, self.g
        return clone

    def __repr__(self):
        return f"CodeSpec(RS({self.n},{self.d},a), l={self.l}, GF(2^{self.field.m}))"


def generator_poly(spec: CodeSpec) -> list[int]:
    """g(x) = prod_{i=0}^{d-2} (x - alpha^(l+i)), monic of degree d-1."""
    field = spec.field
    g = [1]
    for i in range(spec.d - 1):
        root = field.alpha_pow(spec.l + i)
        # multiply by (x - root); minus is plus in characteristic 2
        g = keyeq.poly_add(field, [0] + g, keyeq.poly_scale(field, g, root))
    return g


def encode(spec: CodeSpec, message: list[int]) -> list[int]:
    """Systematic encoding: c(x) = x^(d-1) u(x) - (x^(d-1) u(x) mod g).

    The message symbols land in the top k coefficients.
    """
    if len(message) != spec.k:
        raise ValueError(f"message length {len(message)} != k={spec.k}")
    field = spec.field
    shifted = [0] * (spec.d - 1) + list(message)
    _, rem = keyeq.poly_divmod(field, shifted, spec.g)
    word = shifted[:]
    for i, c in enumerate(rem):
        word[i] = field.add(word[i], c)
    return word


def is_codeword(spec: CodeSpec, word: list[int]) -> bool:
    """True iff w(alpha^(l+i)) = 0 for all 0 <= i <= d-2."""
    if len(word) != spec.n:
        raise ValueError(f"word length {len(word)} != n={spec.n}")
    field = spec.field
    return all(
        keyeq.poly_eval(field, word, field.alpha_pow(spec.l + i)) == 0
        for i in range(spec.d - 1))


def apply_errors(word: list[int], pattern: ErrorPattern) -> list[int]:
    out = list(word)
    for p, v in zip(pattern.positions, pattern.values):
        out[p] ^= v
    return out


def random_errors(spec: CodeSpec, weight: int, rng_seed) -> ErrorPattern:
    """Reproducible random pattern: distinct positions, nonzero values."""
    if weight > spec.n:
        raise ValueError(f"weight {weight} exceeds n={spec.n}")
    rng = random.Random(rng_seed)
    positions = sorted(rng.sample(range(spec.n), weight))
    values = tuple(rng.randrange(1, spec.field.q) for _ in positions)
    return ErrorPattern(tuple(positions), values)


def random_message(spec: CodeSpec, rng_seed) -> list[int]:
    rng = random.Random(rng_seed)
    return [rng.randrange(spec.field.q) for _ in range(spec.k)]


def hamming_weight(word) -> int:
    return sum(1 for x in word if x != 0)


def hamming_distance(u, v) -> int:
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return sum(1 for x, y in zip(u, v) if x != y)


def assemble_correction(code: CodeSpec, word, positions, values,
                        gates: bool) -> keyeq.DecodeOutcome:
    """Offset correction, zero-value gate, pattern assembly.

    Values arrive in the key-equation frame; they are rescaled for root
    offset l, gated against zeros when requested, and applied to the word
    (zero values correct nothing and are dropped from the pattern).
    """
    field = code.field
    inverse_roots = [field.alpha_pow(code.n - p) for p in positions]
    values = keyeq.correct_values_for_offset(field, values, inverse_roots, code.l)
    if gates and any(v == 0 for v in values):
        return keyeq.DecodeOutcome.failure(keyeq.FailureReason.ZERO_ERROR_VALUE,
                                           "computed error value is zero")
    out = list(word)
    pos_kept, val_kept = [], []
    for p, v in zip(positions, values):
        if v != 0:
            out[p] = field.add(out[p], field.neg(v))
            pos_kept.append(p)
            val_kept.append(v)
    pattern = ErrorPattern(tuple(pos_kept), tuple(val_kept))
    return keyeq.DecodeOutcome.corrected(pattern, out)


def pattern_between(spec: CodeSpec, received, codeword) -> ErrorPattern:
    """The error pattern turning codeword into received."""
    positions = []
    values = []
    for i, (r, c) in enumerate(zip(received, codeword)):
        if r != c:
            positions.append(i)
            values.append(spec.field.add(r, c))
    return ErrorPattern(tuple(positions), tuple(values))


# ---------------------------------------------------------------------------
# word file I/O: one word per line, n hex symbols, coefficient of x^0 first


def format_word(field, word) -> str:
    return " ".join(field.to_hex(x) for x in word)


def parse_word(line: str) -> list[int]:
    return [int(tok, 16) for tok in line.split()]


def write_words(path, field, words) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for w in words:
            fh.write(format_word(field, w) + "\n")


def read_words(path, n: int | None = None) -> list[list[int]]:
    words = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            w = parse_word(line)
            if n is not None and len(w) != n:
                raise ValueError(f"word of length {len(w)}, expected {n}")
            words.append(w)
    return words
