"""Executable identity checks over parameter grids.

Each check returns a :class:`VerificationReport` listing every grid point,
whether it passed, and both sides of the identity when it did not.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import DirichletCharacter, parse_character
from .egf import TruncatedEGF, egf_exp_linear, egf_inv, egf_mul, egf_scale_arg, euler_egf
from .errors import DomainError
from .euler import (
    bernoulli_analogue,
    distribution_sides,
    euler_higher_order,
    euler_numbers,
    generalized_euler_numbers,
)
from .measure import (
    boundary_sum,
    fermionic_integral,
    fermionic_q_sum,
    fermionic_sum,
    multivariate_fermionic_sum,
)
from .padic import PadicNumber, PrecisionPolicy, make, pow_int
from .ud import Char, X, evaluate, random_function, shift, twist

CHECKS = (
    "theorem1",
    "theorem2",
    "witt",
    "distribution",
    "egf9",
    "theorem4",
    "higher_order",
    "qlimit",
    "bernoulli",
)


@dataclass
class CaseResult:
    params: dict
    passed: bool
    lhs: PadicNumber | None = None
    rhs: PadicNumber | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"params": self.params, "passed": self.passed}
        if self.lhs is not None:
            out["lhs"] = self.lhs.to_json()
        if self.rhs is not None:
            out["rhs"] = self.rhs.to_json()
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    check: str
    identity: str
    grid: str
    achieved_prec: int
    cases: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "identity": self.identity,
            "grid": self.grid,
            "achieved_prec": self.achieved_prec,
            "passed": self.passed,
            "n_cases": len(self.cases),
            "n_failed": len(self.failures),
            "cases": [c.to_json() for c in self.cases],
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def render_text(self, timing: bool = False) -> str:
        lines = [
            f"check:    {self.check}",
            f"identity: {self.identity}",
            f"grid:     {self.grid}",
            f"precision: {self.achieved_prec}",
        ]
        for c in self.cases:
            params = ", ".join(f"{k}={v}" for k, v in c.params.items())
            line = f"  [{'PASS' if c.passed else 'FAIL'}] {params}"
            if c.detail:
                line += f"  ({c.detail})"
            if not c.passed and c.lhs is not None:
                line += f"\n         lhs = {c.lhs}\n         rhs = {c.rhs}"
            lines.append(line)
        lines.append(f"result: {len(self.cases) - len(self.failures)}/{len(self.cases)} passed")
        if timing:
            lines.append(f"wall time: {self.wall_time:.3f} s")
        return "\n".join(lines)


def agree(a: PadicNumber, b: PadicNumber, prec: int) -> bool:
    """a = b mod p^prec, with both sides actually known to that precision."""
    d = a - b
    if d.prec < prec:
        return False
    return d.is_zero or d.val >= prec


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def corpus(p: int, prec: int, trials: int, seed: int):
    """The seeded random function corpus shared by the shift-identity checks."""
    rng = random.Random(f"{seed}:{p}:{prec}")
    return [random_function(rng, p, prec) for _ in range(trials)]


@_timed
def check_theorem1(p: int, prec: int, trials: int = 100, seed: int = 0, guard: int = 2) -> VerificationReport:
    policy = PrecisionPolicy(prec, guard)
    report = VerificationReport(
        "theorem1",
        "I(f(x+1)) + I(f) = 2 f(0)",
        f"{trials} random functions, seed {seed}, p={p}",
        prec,
    )
    for i, f in enumerate(corpus(p, prec, trials, seed)):
        a, _ = fermionic_integral(f, p, policy)
        b, _ = fermionic_integral(shift(f, 1), p, policy)
        lhs = a + b
        rhs = 2 * evaluate(f, 0, p, prec)
        report.cases.append(CaseResult({"trial": i, "f": str(f)}, (lhs - rhs).is_zero, lhs, rhs))
    return report


@_timed
def check_theorem2(
    p: int, prec: int, trials: int = 100, seed: int = 0, n_max: int = 10, guard: int = 2
) -> VerificationReport:
    policy = PrecisionPolicy(prec, guard)
    report = VerificationReport(
        "theorem2",
        "I(f(x+n)) + (-1)^(n-1) I(f) = 2 sum_{x<n} (-1)^(n-1-x) f(x)",
        f"{trials} random functions, seed {seed}, p={p}, n=1..{n_max}",
        prec,
    )
    for i, f in enumerate(corpus(p, prec, trials, seed)):
        base, _ = fermionic_integral(f, p, policy)
        for n in range(1, n_max + 1):
            shifted, _ = fermionic_integral(shift(f, n), p, policy)
            lhs = shifted + base if n % 2 else shifted - base
            rhs = boundary_sum(f, n, p, prec)
            report.cases.append(CaseResult({"trial": i, "n": n, "f": str(f)}, (lhs - rhs).is_zero, lhs, rhs))
    return report


def _scalar(p: int, prec: int, v) -> PadicNumber:
    return v if isinstance(v, PadicNumber) else make(p, prec, Fraction(v))


@_timed
def check_witt(p: int, prec: int, lambdas=None, max_n: int = 8, guard: int = 2) -> VerificationReport:
    """Recurrence, series and truncated-sum routes to the twisted Euler numbers."""
    lambdas = [1, 1 + p, 2] if lambdas is None else lambdas
    policy = PrecisionPolicy(prec, guard)
    report = VerificationReport(
        "witt",
        "I(lambda^x x^n) = E_n(lambda), coefficients of 2/(lambda e^t + 1)",
        f"lambda in {[str(l) for l in lambdas]} with lambda+1 a unit, n<={max_n}, p={p}",
        prec,
    )
    for lam_raw in lambdas:
        lam = _scalar(p, prec, lam_raw)
        if not (lam + 1).is_unit():
            continue
        rec = euler_numbers(lam, max_n)
        ser = euler_egf(lam, max_n)
        for n in range(max_n + 1):
            params = {"lambda": str(lam_raw), "n": n}
            f = twist(lam) * X**n
            try:
                meas, _ = fermionic_integral(f, p, policy)
            except DomainError as exc:
                raw = fermionic_sum(f, prec + guard, p, prec)
                report.cases.append(
                    CaseResult(params, False, rec[n], raw, f"measure route rejected: {exc}; raw partial sum shown as rhs")
                )
                continue
            ok = agree(rec[n], ser[n], prec) and agree(rec[n], meas, prec)
            detail = "" if ok else f"series = {ser[n]}"
            report.cases.append(CaseResult(params, ok, rec[n], meas, detail))
    return report


def _coprime(Fs, p):
    return [F for F in Fs if math.gcd(F, p) == 1]


@_timed
def check_distribution(p: int, prec: int, Fs=(1, 3, 5), max_n: int = 6, lambdas=None, xs=(0, 1, 2)) -> VerificationReport:
    lambdas = [1, 1 + p] if lambdas is None else lambdas
    Fs = _coprime(Fs, p)
    report = VerificationReport(
        "distribution",
        "E_n(lambda:x) = F^n sum_{a<F} (-1)^a lambda^a E_n(lambda^F : (x+a)/F)",
        f"lambda in {[str(l) for l in lambdas]}, x in {list(xs)}, n<={max_n}, F in {Fs}, p={p}",
        prec,
    )
    for lam_raw in lambdas:
        lam = _scalar(p, prec, lam_raw)
        for x in xs:
            xp = make(p, prec, x)
            for F in Fs:
                for n in range(max_n + 1):
                    lhs, rhs = distribution_sides(lam, xp, n, F)
                    params = {"lambda": str(lam_raw), "x": x, "F": F, "n": n}
                    report.cases.append(CaseResult(params, agree(lhs, rhs, prec), lhs, rhs))
    return report


def egf9_sides(lam: PadicNumber, x: PadicNumber, F: int, order: int):
    """Both sides of ``2e^(xt)/(lam e^t+1) = 2 sum_a (-1)^a lam^a e^((x+a)t) / (lam^F e^(Ft) + 1)``."""
    lhs = egf_mul(egf_exp_linear(x, order), euler_egf(lam, order))
    numer = None
    lam_a = pow_int(lam, 0)
    for a in range(F):
        term = egf_exp_linear(x + a, order) * lam_a
        numer = term if numer is None else (numer + term if a % 2 == 0 else numer - term)
        lam_a = lam_a * lam
    one = make(lam.p, lam.prec, 1)
    denom = egf_scale_arg(egf_exp_linear(one, order), F) * pow_int(lam, F) + 1
    rhs = egf_mul(numer * 2, egf_inv(denom))
    return lhs, rhs


@_timed
def check_egf9(p: int, prec: int, Fs=(1, 3, 5), order: int = 10, lambdas=None, xs=(0, 1, 2)) -> VerificationReport:
    lambdas = [1, 1 + p] if lambdas is None else lambdas
    Fs = _coprime(Fs, p)
    report = VerificationReport(
        "egf9",
        "2e^(xt)/(lambda e^t+1) = 2 sum_{a<F} (-1)^a lambda^a e^((x+a)t) / (lambda^F e^(Ft)+1)",
        f"lambda in {[str(l) for l in lambdas]}, x in {list(xs)}, F in {Fs}, through t^{order}, p={p}",
        prec,
    )
    for lam_raw in lambdas:
        lam = _scalar(p, prec, lam_raw)
        for x in xs:
            for F in Fs:
                lhs, rhs = egf9_sides(lam, make(p, prec, x), F, order)
                bad = [n for n in range(order + 1) if not agree(lhs[n], rhs[n], prec)]
                params = {"lambda": str(lam_raw), "x": x, "F": F}
                if bad:
                    n = bad[0]
                    report.cases.append(CaseResult(params, False, lhs[n], rhs[n], f"first mismatch at t^{n}"))
                else:
                    report.cases.append(CaseResult(params, True))
    return report


@_timed
def check_theorem4(p: int, prec: int, chis=("quad:3", "quad:5"), max_n: int = 6, guard: int = 2) -> VerificationReport:
    policy = PrecisionPolicy(prec, guard)
    report = VerificationReport(
        "theorem4",
        "I_X(chi(x) x^n) = E_{n,chi}",
        f"chi in {list(chis)}, n<={max_n}, p={p}",
        prec,
    )
    for item in chis:
        chi = item if isinstance(item, DirichletCharacter) else parse_character(item, p, prec)
        if math.gcd(chi.modulus, p) != 1:
            continue
        table = generalized_euler_numbers(chi, max_n)
        for n in range(max_n + 1):
            meas, rep = fermionic_integral(Char(chi) * X**n, p, policy, d=chi.modulus)
            params = {"chi": chi.label, "n": n}
            report.cases.append(
                CaseResult(params, agree(table[n], meas, prec), table[n], meas, f"N_used={rep.N_used}")
            )
    return report


@_timed
def check_higher_order(p: int = 3, N: int = 4, r: int = 2, lam=1, x: int = 0, max_n: int = 3) -> VerificationReport:
    """Series power against the brute-force r-fold alternating sum at depth N."""
    prec = N
    report = VerificationReport(
        "higher_order",
        "(2/(lambda e^t+1))^r e^(xt) = r-fold I(lambda^(y1+..+yr) (x+y1+..+yr)^n)",
        f"r={r}, lambda={lam}, x={x}, n<={max_n}, p={p}, N={N} ({p}^{r * N} terms per n)",
        prec,
    )
    lamp = _scalar(p, prec, lam)
    table = euler_higher_order(lamp, r, make(p, prec, x), max_n)
    for n in range(max_n + 1):
        f = shift(X**n, x) if x else X**n
        if lamp != make(p, prec, 1):
            f = twist(lamp) * f
        oracle = multivariate_fermionic_sum(f, r, N, p, prec)
        report.cases.append(CaseResult({"n": n}, agree(table[n], oracle, prec), table[n], oracle))
    return report


@_timed
def check_qlimit(p: int, prec: int, ks=(2, 3, 4), trials: int = 10, seed: int = 0, N: int | None = None) -> VerificationReport:
    N = prec if N is None else N
    report = VerificationReport(
        "qlimit",
        "v_p(I_{-q} partial sum - I_{-1} partial sum) >= v_p(q - 1)",
        f"q = 1 + {p}^k, k in {list(ks)}, {trials} random functions, seed {seed}, N={N}, p={p}",
        prec,
    )
    for i, f in enumerate(corpus(p, prec, trials, seed)):
        plain = fermionic_sum(f, N, p, prec)
        for k in ks:
            q = make(p, prec, 1 + p**k)
            deformed = fermionic_q_sum(f, q, N, prec)
            gap = (deformed - plain).valuation
            gap_s = "inf" if gap == math.inf else str(gap)
            report.cases.append(
                CaseResult({"trial": i, "k": k}, gap >= k, deformed, plain, f"valuation gap {gap_s}")
            )
    return report


@_timed
def check_bernoulli(p: int, prec: int, ws=None, order: int = 10) -> VerificationReport:
    ws = [2, p + 2] if ws is None else ws
    report = VerificationReport(
        "bernoulli",
        "(w e^t - 1) * sum B_n(w) t^n/n! = t",
        f"w in {[str(w) for w in ws]}, through t^{order}, p={p}",
        prec,
    )
    for w_raw in ws:
        w = _scalar(p, prec, w_raw)
        table = bernoulli_analogue(w, order)
        one = make(p, prec, 1)
        left = egf_mul(egf_exp_linear(one, order) * w - 1, _series(table))
        for n in range(order + 1):
            want = make(p, prec, 1 if n == 1 else 0)
            report.cases.append(CaseResult({"w": str(w_raw), "n": n}, agree(left[n], want, prec), left[n], want))
    return report


def _series(table) -> TruncatedEGF:
    return TruncatedEGF(table.p, table.values)


RUNNERS = {
    "theorem1": check_theorem1,
    "theorem2": check_theorem2,
    "witt": check_witt,
    "distribution": check_distribution,
    "egf9": check_egf9,
    "theorem4": check_theorem4,
    "higher_order": check_higher_order,
    "qlimit": check_qlimit,
    "bernoulli": check_bernoulli,
}
