"""Special functions and constants consumed by the energy formulas.

Bernoulli numbers follow the convention of the generating function

    1/(e^v - 1) = sum_n B_n v^(n-1) / n!,

so that ``B_1 = -1/2``.  Using the opposite sign convention for ``B_1``
silently flips every odd term of the large-deformation expansions, so
everything downstream relies on this choice.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

BERNOULLI_MAX = 64

#: Catalan's constant, sum_n (-1)^n / (2n + 1)^2.
CATALAN = 0.915965594177219015054603514932384110774

# Euler-Maclaurin for sums of n^-s starts at this index; the correction
# series is truncated after EM_TERMS Bernoulli terms.
_EM_START = 10
_EM_TERMS = 12


def _bernoulli_table(nmax):
    # sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1, B_0 = 1
    table = [Fraction(1)]
    for n in range(1, nmax + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * table[k]
        table.append(-acc / (n + 1))
    return tuple(table)


_BERNOULLI = _bernoulli_table(BERNOULLI_MAX)


def bernoulli(n: int) -> Fraction:
    """Return the exact Bernoulli number ``B_n`` (with ``B_1 = -1/2``)."""
    if n < 0 or n > BERNOULLI_MAX:
        raise DomainError(f"Bernoulli index {n} outside [0, {BERNOULLI_MAX}]")
    return _BERNOULLI[n]


def zeta_tail(s: float, start: int) -> float:
    """Sum of ``n**-s`` over all integers ``n >= start``.

    The first few terms are summed directly and the rest is handled by the
    Euler-Maclaurin formula, which converges very quickly once the starting
    index is ten or more.
    """
    if s <= 1:
        raise DomainError(f"tail sum diverges for s = {s}")
    if start < 1:
        raise DomainError(f"start index must be >= 1, got {start}")
    m = max(start, _EM_START)
    head = [n ** -s for n in range(m - 1, start - 1, -1)]
    terms = [m ** (1 - s) / (s - 1), 0.5 * m ** -s]
    rising = s  # s (s+1) ... (s+2k-2)
    for k in range(1, _EM_TERMS + 1):
        coef = float(_BERNOULLI[2 * k]) / math.factorial(2 * k)
        terms.append(coef * rising * m ** (-s - 2 * k + 1))
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return math.fsum(head + terms[::-1])


def zeta_by_summation(s: int) -> float:
    """Riemann zeta at an integer ``s >= 2`` by accelerated direct summation."""
    if s < 2:
        raise DomainError(f"zeta(s) requires s >= 2, got {s}")
    return zeta_tail(float(s), 1)


def zeta_from_bernoulli(s: int) -> float:
    """zeta(2n) = (-1)^(n+1) B_2n (2 pi)^2n / (2 (2n)!) for even ``s``."""
    if s < 2 or s % 2:
        raise DomainError(f"Bernoulli identity needs even s >= 2, got {s}")
    # keep the rational part exact; only the power of pi is rounded
    ratio = abs(_BERNOULLI[s]) * 2 ** (s - 1) / math.factorial(s)
    return float(ratio) * math.pi ** s


def zeta(s: int) -> float:
    """Riemann zeta function at integer ``s >= 2``."""
    if s < 2:
        raise DomainError(f"zeta(s) requires s >= 2, got {s}")
    if s % 2 == 0 and s <= BERNOULLI_MAX:
        return zeta_from_bernoulli(s)
    return zeta_by_summation(s)


def gamma_half(twice_x: int) -> float:
    """Gamma function at ``x = twice_x / 2`` for positive integer ``twice_x``.

    Built by the recurrence ``Gamma(x + 1) = x Gamma(x)`` from
    ``Gamma(1) = 1`` or ``Gamma(1/2) = sqrt(pi)``.

    >>> gamma_half(6)
    2.0
    """
    if twice_x <= 0:
        raise DomainError(f"gamma_half needs twice_x >= 1, got {twice_x}")
    if twice_x % 2 == 0:
        value, x = 1.0, 1.0
    else:
        value, x = math.sqrt(math.pi), 0.5
    while 2 * x < twice_x:
        value *= x
        x += 1.0
    return value


def _agm_sequence(k, kp):
    """AGM iteration for modulus k; returns (a_N, sum 2^(n-1) c_n^2)."""
    a, b = 1.0, kp
    weighted = [0.5 * k * k]
    power = 0.5
    for _ in range(64):
        c = 0.5 * (a - b)
        # a and b can stall one ulp apart; the doubling weight would then
        # amplify that rounding residue into the sum
        if abs(c) <= 2.3e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        power *= 2.0
        weighted.append(power * c * c)
    return a, math.fsum(weighted)


def _complement(k):
    return math.sqrt((1.0 - k) * (1.0 + k))


def elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus ``k``."""
    if not (0.0 <= k < 1.0 - 1e-12):
        raise DomainError(f"elliptic_K needs 0 <= k < 1 - 1e-12, got {k}")
    a, _ = _agm_sequence(k, _complement(k))
    return math.pi / (2.0 * a)


def elliptic_E(k: float) -> float:
    """Complete elliptic integral of the second kind, modulus ``k``."""
    if not (0.0 <= k <= 1.0):
        raise DomainError(f"elliptic_E needs 0 <= k <= 1, got {k}")
    if k == 1.0:
        return 1.0
    a, s = _agm_sequence(k, _complement(k))
    return math.pi / (2.0 * a) * (1.0 - s)


def elliptic_KE(k, kp=None):
    """Both complete integrals from one AGM pass; ``kp`` overrides sqrt(1-k^2).

    No domain guard: callers near ``k = 1`` must cope with large K.
    """
    if kp is None:
        kp = _complement(k)
    a, s = _agm_sequence(k, kp)
    K = math.pi / (2.0 * a)
    return K, K * (1.0 - s)


def catalan() -> float:
    """Catalan's constant G."""
    return CATALAN


def catalan_partial_sum(terms: int) -> float:
    """Partial sum of the alternating series defining Catalan's constant."""
    return math.fsum((-1) ** n / (2 * n + 1) ** 2 for n in range(terms))
