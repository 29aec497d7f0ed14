"""Exact arithmetic in GF(2^m) with precomputed log/antilog tables.

Field elements are plain ints whose binary digits are the polynomial-basis
coordinates over GF(2) (bit k <-> coefficient of x^k).  A ``GF2m`` instance
holds the tables and provides the operations; it is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

from contextlib import contextmanager

# One primitive polynomial per extension degree, bit k <-> coeff of x^k.
# Any primitive degree-m polynomial works; construction verifies primitivity.
DEFAULT_MODULUS = {
    2: 0x7,        # x^2 + x + 1
    3: 0xB,        # x^3 + x + 1
    4: 0x13,       # x^4 + x + 1
    5: 0x25,       # x^5 + x^2 + 1
    6: 0x43,       # x^6 + x + 1
    7: 0x89,       # x^7 + x^3 + 1
    8: 0x11D,      # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,      # x^9 + x^4 + 1
    10: 0x409,     # x^10 + x^3 + 1
    11: 0x805,     # x^11 + x^2 + 1
    12: 0x1053,    # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,    # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,    # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,    # x^15 + x + 1
    16: 0x1100B,   # x^16 + x^12 + x^3 + x + 1
}


class GF2m:
    """GF(2^m), 2 <= m <= 16, defined by a primitive irreducible modulus.

    exp_table[k] = alpha^k for 0 <= k < q-1, log_table[exp_table[k]] = k,
    where alpha is the class of x.  Construction walks the powers of x and
    rejects the modulus unless x generates the full multiplicative group of
    order q-1 (this enforces both irreducibility and primitivity, which the
    tables require).
    """

    __slots__ = ("m", "modulus", "q", "n", "alpha", "exp_table", "log_table",
                 "_mul_table")

    def __init__(self, m: int, modulus: int | None = None):
        if not 2 <= m <= 16:
            raise ValueError(f"extension degree m={m} out of supported range 2..16")
        if modulus is None:
            modulus = DEFAULT_MODULUS[m]
        if modulus >> m != 1:
            raise ValueError(f"modulus {modulus:#x} is not a degree-{m} polynomial")
        self.m = m
        self.modulus = modulus
        self.q = 1 << m
        self.n = self.q - 1

        exp = [0] * self.n
        log = [0] * self.q
        val = 1
        for k in range(self.n):
            exp[k] = val
            if val == 1 and k > 0:
                raise ValueError(
                    f"modulus {modulus:#x}: x has multiplicative order {k} < {self.n}; "
                    "not primitive (or not irreducible)")
            log[val] = k
            val <<= 1
            if val & self.q:
                val ^= modulus
        if val != 1:
            raise ValueError(f"modulus {modulus:#x} is not irreducible over GF(2)")
        self.exp_table = exp
        self.log_table = log
        self.alpha = exp[1]
        self._mul_table = None

    # -- core operations ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        """a + b; in characteristic 2 subtraction is the same XOR."""
        return a ^ b

    sub = add

    def neg(self, a: int) -> int:
        return a

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % self.n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^m)")
        return self.exp_table[(self.n - self.log_table[a]) % self.n]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0 in GF(2^m)")
        if a == 0:
            return 0
        return self.exp_table[(self.log_table[a] - self.log_table[b]) % self.n]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1    # 0^0 = 1 by convention
            if k < 0:
                raise ZeroDivisionError("negative power of 0 in GF(2^m)")
            return 0
        return self.exp_table[(self.log_table[a] * k) % self.n]

    def alpha_pow(self, k: int) -> int:
        """alpha^k for any integer k (negative allowed)."""
        return self.exp_table[k % self.n]

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of 0 in GF(2^m)")
        return self.log_table[a]

    # -- bulk helpers --------------------------------------------------------

    @property
    def mul_table(self):
        """Dense q*q multiplication table (built lazily, only for q <= 256)."""
        if self._mul_table is None:
            if self.q > 256:
                raise ValueError("dense multiplication table only kept for q <= 256")
            self._mul_table = [[self.mul(a, b) for b in range(self.q)]
                               for a in range(self.q)]
        return self._mul_table

    def phase(self, name: str):
        """No-op stage marker; CountingField overrides it."""
        return _NULL_CONTEXT

    # -- formatting / serialization -----------------------------------------

    def to_hex(self, a: int) -> str:
        return format(a, "x")

    def to_log_notation(self, a: int) -> str:
        """Render as a^k (or "0"), the notation used in human-readable reports."""
        if a == 0:
            return "0"
        k = self.log_table[a]
        return "1" if k == 0 else ("a" if k == 1 else f"a^{k}")

    def descriptor(self) -> dict:
        """JSON-ready field descriptor."""
        return {"m": self.m, "modulus_hex": format(self.modulus, "#x")}

    @classmethod
    def from_descriptor(cls, desc: dict) -> "GF2m":
        return cls(int(desc["m"]), int(str(desc["modulus_hex"]), 16))

    def __repr__(self):
        return f"GF2m(m={self.m}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))


class _NullContext:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


_NULL_CONTEXT = _NullContext()


class OpCounts:
    """Tallies of field operations, split by pipeline phase."""

    __slots__ = ("per_phase",)

    OPS = ("mul", "add", "inv", "div")

    def __init__(self):
        self.per_phase: dict[str, dict[str, int]] = {}

    def bump(self, phase: str, op: str, k: int = 1) -> None:
        counts = self.per_phase.setdefault(phase, {o: 0 for o in self.OPS})
        counts[op] += k

    def phase_counts(self, phase: str) -> dict[str, int]:
        return dict(self.per_phase.get(phase, {o: 0 for o in self.OPS}))

    def total(self, op: str) -> int:
        return sum(c[op] for c in self.per_phase.values())

    def as_dict(self) -> dict:
        return {p: dict(c) for p, c in self.per_phase.items()}


class CountingField:
    """Wraps a GF2m and counts operations; decoders stay uninstrumented.

    The wrapper mirrors the GF2m interface, so any decode pipeline accepts
    either.  Phases are entered with ``with field.phase("locator"): ...`` by
    the pipelines; operations outside any phase land in "other".
    """

    def __init__(self, base: GF2m):
        self.base = base
        self.counts = OpCounts()
        self._phase = "other"
        # mirrored read-only attributes
        self.m = base.m
        self.modulus = base.modulus
        self.q = base.q
        self.n = base.n
        self.alpha = base.alpha
        self.exp_table = base.exp_table
        self.log_table = base.log_table

    @contextmanager
    def phase(self, name: str):
        prev = self._phase
        self._phase = name
        try:
            yield self
        finally:
            self._phase = prev

    def add(self, a, b):
        self.counts.bump(self._phase, "add")
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        self.counts.bump(self._phase, "mul")
        return self.base.mul(a, b)

    def inv(self, a):
        self.counts.bump(self._phase, "inv")
        return self.base.inv(a)

    def div(self, a, b):
        self.counts.bump(self._phase, "div")
        return self.base.div(a, b)

    def pow(self, a, k):
        self.counts.bump(self._phase, "mul")
        return self.base.pow(a, k)

    def alpha_pow(self, k):
        return self.base.alpha_pow(k)

    def log(self, a):
        return self.base.log(a)

    def to_hex(self, a):
        return self.base.to_hex(a)

    def to_log_notation(self, a):
        return self.base.to_log_notation(a)

    def descriptor(self):
        return self.base.descriptor()

    def __repr__(self):
        return f"CountingField({self.base!r})"
