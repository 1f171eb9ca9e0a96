"""Truncated-sum evaluation of the fermionic integral and its q-deformation.

The partial sum ``S_N = sum_{x < d p^N} (-1)^x f(x)`` is evaluated in blocks
of ``p^k`` consecutive integers with numpy and reduced exactly mod ``p^M``.
Because the arithmetic is exact the block results can be combined in any
order, so ``workers > 1`` gives bit-identical answers.

Truncation depth: for every term of the DSL class, ``f(x + d p^N) - f(x)`` has
valuation at least ``N``.  Writing ``S_N`` as the average of the integrals of
``f`` and of its translate by ``d p^N`` (an odd shift) shows
``S_N = I(f) mod p^N``.  :func:`fermionic_integral` starts at
``N = M + guard`` anyway and also demands ``S_N = S_{N+1} mod p^M``.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, PrecisionError
from .padic import PadicNumber, PrecisionPolicy, check_prime, make, one, p_pow, pow_int
from .ud import (
    UDFunction,
    characters_of,
    check_prime_of,
    check_uniformly_differentiable,
    compile_term,
    evaluate,
    scalar_prec,
    twist,
)

__all__ = [
    "TruncationReport",
    "fermionic_sum",
    "fermionic_sum_X",
    "fermionic_integral",
    "fermionic_q_sum",
    "q_bracket",
    "q_riemann_sum",
    "multivariate_fermionic_sum",
]

# block length cap; blocks are powers of p so every sum length is a multiple
BLOCK_LIMIT = 1 << 16


@dataclass(frozen=True)
class TruncationReport:
    N_used: int
    achieved_prec: int
    stabilized: bool

    def to_json(self) -> dict:
        return {"N_used": self.N_used, "achieved_prec": self.achieved_prec, "stabilized": self.stabilized}


def _resolve_prec(f: UDFunction, p: int, prec: int | None, default: int) -> int:
    sp = scalar_prec(f)
    if prec is None:
        prec = sp if sp is not None else default
    elif sp is not None:
        prec = min(prec, sp)
    if prec < 1:
        raise PrecisionError(f"precision must be >= 1, got {prec}")
    return prec


def _check_d(d: int, p: int) -> None:
    if not isinstance(d, int) or d < 1 or d % 2 == 0:
        raise DomainError(f"d must be an odd positive integer, got {d!r}")
    if math.gcd(d, p) != 1:
        raise DomainError(f"d = {d} must be prime to p = {p}")


def _block_length(p: int, d: int, N: int) -> int:
    k = 0
    while k < N and p ** (k + 1) * d <= BLOCK_LIMIT:
        k += 1
    return d * p**k


def _alternating_sum(f: UDFunction, p: int, d: int, N: int, m: int, workers: int = 1) -> int:
    """``sum_{x < d p^N} (-1)^x f(x) mod m`` by blocks of p^k terms."""
    total = d * p**N
    length = _block_length(p, d, N)
    ev = compile_term(f, p, m, length)

    def block(start: int) -> int:
        v = ev(start)
        if not isinstance(v, np.ndarray):
            s = int(v) if length % 2 else 0
        else:
            s = int(v[0::2].sum()) - int(v[1::2].sum())
        # blocks have odd length, so block j starts with sign (-1)^j
        return s if start % 2 == 0 else -s

    starts = range(0, total, length)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(block, starts))
    else:
        parts = map(block, starts)
    return sum(parts) % m


def fermionic_sum(f: UDFunction, N: int, p: int, prec: int | None = None, workers: int = 1) -> PadicNumber:
    """Alternating partial sum over ``0 <= x < p^N``.

    ``prec`` defaults to the smallest precision among the scalars of ``f``, or
    ``N`` when ``f`` carries no p-adic scalars.
    """
    return fermionic_sum_X(f, 1, N, p, prec, workers)


def fermionic_sum_X(f: UDFunction, d: int, N: int, p: int, prec: int | None = None, workers: int = 1) -> PadicNumber:
    """Alternating partial sum over ``0 <= x < d p^N`` (the space X_d)."""
    check_prime(p)
    _check_d(d, p)
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    check_prime_of(f, p)
    prec = _resolve_prec(f, p, prec, N)
    m = p_pow(p, prec)
    return make(p, prec, _alternating_sum(f, p, d, N, m, workers))


def fermionic_integral(
    f: UDFunction,
    p: int,
    policy: PrecisionPolicy,
    d: int = 1,
    max_extra: int = 4,
    workers: int = 1,
) -> tuple[PadicNumber, TruncationReport]:
    """Integral of ``f`` against the fermionic measure on X_d, mod p^M.

    Starts at ``N = M + guard`` and raises ``N`` until two consecutive partial
    sums agree mod ``p^M``; gives up with :class:`ConvergenceError` after
    ``max_extra`` extra steps.
    """
    check_prime(p)
    _check_d(d, p)
    check_prime_of(f, p)
    check_uniformly_differentiable(f, p)
    for chi in characters_of(f):
        if d % chi.modulus:
            raise DomainError(f"character modulus {chi.modulus} must divide d = {d} to be periodic on X_d")
    M = _resolve_prec(f, p, policy.working_prec, policy.working_prec)
    m = p_pow(p, M)
    N0 = M + policy.guard_digits
    current = _alternating_sum(f, p, d, N0, m, workers)
    for N in range(N0, N0 + max_extra + 1):
        following = _alternating_sum(f, p, d, N + 1, m, workers)
        if following == current:
            return make(p, M, current), TruncationReport(N, M, True)
        current = following
    raise ConvergenceError(
        f"partial sums of {f} did not stabilize mod {p}^{M} for N in [{N0}, {N0 + max_extra + 1}]"
    )


def q_bracket(n: int, q: PadicNumber) -> PadicNumber:
    """``[n]_q = 1 + q + ... + q^(n-1)`` by binary splitting (no division)."""
    if n < 0:
        raise DomainError(f"q-bracket needs n >= 0, got {n}")
    if n == 0:
        return q * 0
    if n == 1:
        return one(q.p, q.prec)
    half = q_bracket(n // 2, q)
    s = half * (pow_int(q, n // 2) + 1)
    return s * q + 1 if n % 2 else s


def _check_q(q: PadicNumber) -> None:
    if (q - 1).valuation < 1:
        raise DomainError(f"q must satisfy |q - 1|_p < 1, got {q}")


def fermionic_q_sum(f: UDFunction, q: PadicNumber, N: int, prec: int | None = None) -> PadicNumber:
    """``(1/[p^N]_{-q}) sum_{x < p^N} (-q)^x f(x)``, the mu_{-q} partial sum."""
    _check_q(q)
    p = q.p
    g = f * twist(q)
    numerator = fermionic_sum(g, N, p, prec)
    return numerator / q_bracket(p**N, -q)


def q_riemann_sum(f: UDFunction, q: PadicNumber, N: int, prec: int | None = None) -> PadicNumber:
    """``(1/[p^N]_q) sum_{x < p^N} q^x f(x)`` for general q near 1.

    ``[p^N]_q`` has valuation N, so the quotient loses N digits.
    """
    _check_q(q)
    p = q.p
    check_prime_of(f, p)
    prec = _resolve_prec(f, p, prec, q.prec)
    prec = min(prec, q.prec)
    m = p_pow(p, prec)
    length = p**N
    step = _block_length(p, 1, N)
    ev = compile_term(f * twist(q), p, m, step)
    s = 0
    for start in range(0, length, step):
        v = ev(start)
        s += int(v.sum()) if isinstance(v, np.ndarray) else int(v) * step
    return make(p, prec, s % m) / q_bracket(length, q.with_prec(prec))


def multivariate_fermionic_sum(f: UDFunction, r: int, N: int, p: int, prec: int | None = None) -> PadicNumber:
    """Brute-force ``sum over y_1..y_r < p^N of (-1)^(y_1+..+y_r) f(y_1+..+y_r)``.

    Enumerates all ``p^(rN)`` tuples; intended as a small-scale oracle.
    """
    check_prime(p)
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    prec = _resolve_prec(f, p, prec, N)
    m = p_pow(p, prec)
    L = p**N
    ev = compile_term(f, p, m, r * (L - 1) + 1)
    table = ev(0)
    if not isinstance(table, np.ndarray):
        table = [int(table)] * (r * (L - 1) + 1)
    else:
        table = [int(v) for v in table]
    s = 0
    for ys in itertools.product(range(L), repeat=r):
        t = sum(ys)
        s += -table[t] if t & 1 else table[t]
    return make(p, prec, s % m)


def boundary_sum(f: UDFunction, n: int, p: int, prec: int) -> PadicNumber:
    """``2 * sum_{x < n} (-1)^(n-1-x) f(x)``, the right side of the shift identity."""
    s = make(p, prec, 0)
    for x in range(n):
        v = evaluate(f, x, p, prec)
        s = s + v if (n - 1 - x) % 2 == 0 else s - v
    return 2 * s
