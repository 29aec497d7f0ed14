"""Shared fixtures: the GF(16) reference field and hand-checked instances.

The golden instances are small decode scenarios over GF(16)/0x13 whose
intermediate values were verified by independent hand computation
(exponent arithmetic on the log table); tests freeze those values.
"""

import pytest

from rslab.gf import GF2m
from rslab.rscode import CodeSpec


@pytest.fixture(scope="session")
def gf16():
    return GF2m(4, 0x13)


@pytest.fixture(scope="session")
def gf8():
    return GF2m(3, 0xB)


@pytest.fixture(scope="session")
def gf256():
    return GF2m(8)


@pytest.fixture(scope="session")
def rs15_9(gf16):
    return CodeSpec(gf16, 9)


@pytest.fixture(scope="session")
def rs15_5(gf16):
    return CodeSpec(gf16, 5)


@pytest.fixture(scope="session")
def rs7_5(gf8):
    return CodeSpec(gf8, 5)


def word_from_terms(n, field, terms):
    """terms: {position: exponent-or-None}; None marks the unit element."""
    w = [0] * n
    for pos, k in terms.items():
        w[pos] = 1 if k is None else field.alpha_pow(k)
    return w


@pytest.fixture(scope="session")
def three_error_word(gf16):
    """a^2 x^2 + a x^8 + a^7 x^13: decodes cleanly at t=4 (RS(15,9))."""
    return word_from_terms(15, gf16, {2: 2, 8: 1, 13: 7})


@pytest.fixture(scope="session")
def five_error_word(gf16):
    """a^3 x + a^3 x^2 + a^14 x^10 + a^5 x^12 + a^8 x^13: weight 5 > t=4;
    ungated fast PGZ mis-corrects it to a non-codeword."""
    return word_from_terms(15, gf16, {1: 3, 2: 3, 10: 14, 12: 5, 13: 8})


@pytest.fixture(scope="session")
def deficit_word(gf16):
    """a^6 + a^3 x + a^4 x^2 + x^7 on RS(15,5): weight 4 > t=2; the locator
    picks up an irreducible quadratic factor, so Chien comes up short."""
    return word_from_terms(15, gf16, {0: 6, 1: 3, 2: 4, 7: None})


@pytest.fixture(scope="session")
def degree_gap_word(gf16):
    """a^3 x + a x^2 + x^10 on RS(15,5): weight 3 > t=2; the final degree
    function value exceeds deg(sigma), the degree-mismatch malfunction."""
    return word_from_terms(15, gf16, {1: 3, 2: 1, 10: None})
