"""Explicit boundedness constants, the (alpha, beta) decision table, and the
counterexample divergence probes.

The bounded/unbounded/compact classification is total on alpha > 0 and
deterministic; the constants are evaluated by 1-D maximization of the
radial profile, since every certified bound depends on |z| only.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Least-squares divergence exponents above this threshold count as divergent.
DIVERGENCE_THRESHOLD = 0.05

# A fitted log-term coefficient above this counts as a detected logarithmic
# correction (itself divergent even at exponent 0).
LOG_DETECTION_THRESHOLD = 0.5

_T_HI = 1.0 - 1e-9
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _sup_on_unit_interval(fn, n_coarse: int = 4096) -> float:
    """Supremum of fn over [0, 1), by coarse scan plus golden-section polish.

    Boundary suprema are reported as the value at 1 - 1e-9.
    """
    t = np.linspace(0.0, _T_HI, n_coarse + 1)
    vals = np.array([fn(x) for x in t])
    k = int(np.argmax(vals))
    lo = t[max(k - 1, 0)]
    hi = t[min(k + 1, n_coarse)]
    # golden-section refinement of the bracketing interval
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > 1e-10:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    return float(max(vals[k], fc, fd))


def _alternating_sum(ceil_alpha: int, t: float) -> float:
    """sum_{k=1..K} C(K, k) (-t)^(k-1) = (1 - (1-t)^K) / t, with the
    removable limit K at t = 0."""
    if t < 1e-8:
        return float(ceil_alpha)
    return (1.0 - (1.0 - t) ** ceil_alpha) / t


def _log_ratio_over_t(t: float) -> float:
    """log((1+t)/(1-t)) / t, with the removable limit 2 at t = 0."""
    if t < 1e-8:
        return 2.0
    return math.log((1.0 + t) / (1.0 - t)) / t


def bound_constant(alpha: float, beta: float) -> float:
    """Operator-norm bound for the bounded regimes of the decision table.

    beta <= alpha < 1:  sup (1+t)^alpha (1-t)^(alpha-beta) / (1-alpha)
    beta <= 1 < alpha:  sup (1+t)^alpha (1-t)^(1-beta) / (alpha-1)
                            * sum_{k=1..ceil(alpha)} C(ceil(alpha),k)(-t)^(k-1)
    beta < alpha = 1:   sup (1-t)^(1-beta) log((1+t)/(1-t)) / t
    """
    if beta <= alpha < 1:
        return _sup_on_unit_interval(
            lambda t: (1.0 + t) ** alpha * (1.0 - t) ** (alpha - beta) / (1.0 - alpha)
        )
    if beta <= 1 < alpha:
        ca = math.ceil(alpha)
        return _sup_on_unit_interval(
            lambda t: (1.0 + t) ** alpha
            * (1.0 - t) ** (1.0 - beta)
            / (alpha - 1.0)
            * _alternating_sum(ca, t)
        )
    if beta < alpha == 1:
        return _sup_on_unit_interval(
            lambda t: (1.0 - t) ** (1.0 - beta) * _log_ratio_over_t(t)
        )
    raise DomainError(f"no certified bound for alpha={alpha}, beta={beta}")


@dataclass(frozen=True)
class Classification:
    """Verdict flags plus the regime tags that justify them."""

    verdict: tuple[str, ...]
    source: tuple[str, ...]

    @property
    def bounded(self) -> bool:
        return "Bounded" in self.verdict

    def to_json(self) -> str:
        return json.dumps({"verdict": "+".join(self.verdict), "source": " / ".join(self.source)})


def classify(alpha: float, beta: float) -> Classification:
    """Total, deterministic decision table on alpha > 0, beta real."""
    if not alpha > 0:
        raise DomainError("classify requires alpha > 0")
    if beta > alpha:
        return Classification(("Unbounded",), ("counterexample: identity function, beta > alpha",))
    if beta == alpha:
        if alpha >= 1:
            return Classification(("Unbounded",), ("counterexample: principal log, beta = alpha >= 1",))
        return Classification(
            ("Bounded", "Compact", "EssentialNormZero"),
            ("essential norm zero for beta = alpha < 1 (hence compact, hence bounded)",),
        )
    # now beta < alpha
    if alpha < 1:
        return Classification(
            ("Bounded", "Compact", "EssentialNormZero"),
            ("bounded for beta <= alpha < 1", "compact for beta < alpha < 1"),
        )
    if alpha == 1:
        return Classification(
            ("Bounded", "Compact", "EssentialNormZero"),
            ("bounded for beta < alpha = 1", "compact for beta < alpha = 1"),
        )
    # alpha > 1
    if beta > 1:
        return Classification(("Unbounded",), ("counterexample: z/(1-z)^(alpha-1), 1 < beta < alpha",))
    if beta == 1:
        return Classification(
            ("Bounded", "Compact", "EssentialNormZero"),
            ("bounded for beta <= 1 < alpha", "essential norm zero for beta = 1 < alpha"),
        )
    return Classification(
        ("Bounded", "Compact", "EssentialNormZero"),
        ("bounded for beta <= 1 < alpha", "compact for beta < 1 < alpha"),
    )


@dataclass(frozen=True)
class ProbeReport:
    """Sampled values with a fitted divergence/decay exponent."""

    samples: tuple[tuple[float, float], ...]
    fitted_exponent: float
    verdict: str
    log_coefficient: float = 0.0
    labels: tuple[str, ...] = ()

    def to_json(self) -> str:
        return json.dumps(
            {
                "samples": [[t, v] for t, v in self.samples],
                "fitted_exponent": self.fitted_exponent,
                "log_coefficient": self.log_coefficient,
                "verdict": self.verdict,
                "labels": list(self.labels),
            }
        )

    def samples_to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "value"])
            writer.writerows(self.samples)


def _fit_divergence(ts, values):
    """Regress log(value) on L = -log(1-t) and log(L).

    Returns (exponent, log_coefficient).  The log(L) regressor separates a
    genuine logarithmic correction from the power-law exponent, which a
    plain linear fit would absorb as bias.
    """
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    big_l = -np.log1p(-ts)
    design = np.column_stack([big_l, np.log(big_l), np.ones_like(big_l)])
    coef, *_ = np.linalg.lstsq(design, np.log(values), rcond=None)
    return float(coef[0]), float(coef[1])


_EXAMPLE_TAGS = ("Ex26", "Ex27", "Ex28")


def counterexample_probe(alpha: float, beta: float, which: str, t_list) -> ProbeReport:
    """Sample the displayed counterexample quantity along z = t and fit its
    divergence exponent.

    Ex26 (beta > alpha):        (1+t)^alpha / (1-t)^(beta-alpha)
    Ex27 (beta >= alpha >= 1):  same times |log(1-t)| / t
    Ex28 (beta > 1):            (1+t)^(alpha+1) / (1-t)^(beta-1)
    """
    if which not in _EXAMPLE_TAGS:
        raise DomainError(f"unknown probe {which!r}")
    ts = sorted(float(t) for t in t_list)
    if not ts or ts[0] <= 0 or ts[-1] >= 1:
        raise DomainError("t_list must lie in (0, 1)")

    if which == "Ex26":
        if not beta > alpha:
            raise DomainError("Ex26 requires beta > alpha")
        values = [(1.0 + t) ** alpha / (1.0 - t) ** (beta - alpha) for t in ts]
    elif which == "Ex27":
        if not beta >= alpha >= 1:
            raise DomainError("Ex27 requires beta >= alpha >= 1")
        values = [
            (1.0 + t) ** alpha / (1.0 - t) ** (beta - alpha) * abs(math.log(1.0 - t)) / t
            for t in ts
        ]
    else:
        if not beta > 1:
            raise DomainError("Ex28 requires beta > 1")
        values = [(1.0 + t) ** (alpha + 1.0) / (1.0 - t) ** (beta - 1.0) for t in ts]

    exponent, log_coef = _fit_divergence(ts, values)
    diverges = exponent > DIVERGENCE_THRESHOLD or log_coef > LOG_DETECTION_THRESHOLD
    return ProbeReport(
        samples=tuple(zip(ts, values)),
        fitted_exponent=exponent,
        log_coefficient=log_coef,
        verdict="diverges" if diverges else "bounded",
        labels=(which,),
    )


def default_probe_ts(t_max: float = 0.9999, n: int = 12) -> list[float]:
    """Sample abscissas clustering toward 1, spanning up to t_max.

    Sampling starts no lower than t = 0.9 so that the slowly varying
    (1+t)-factors of the probe quantities are effectively constant and do
    not bias the fitted exponent.
    """
    lmax = -math.log1p(-t_max)
    lmin = min(-math.log1p(-0.9), 0.5 * lmax)
    return [1.0 - math.exp(-(lmin + (lmax - lmin) * k / (n - 1))) for k in range(n)]


def one_minus_power_bound(n: int) -> float:
    """z-independent majorant of sup |1 - (1 - b z)^(1/n)| over the disk:

    |1 - exp(ln2/n)| + exp(ln2/n) * ((cos(pi/2n) - 1)^2 + sin^2(pi/2n))^(1/2)
    """
    if n < 1:
        raise DomainError("one_minus_power_bound requires n >= 1")
    e = math.exp(math.log(2.0) / n)
    ang = math.pi / (2.0 * n)
    return abs(1.0 - e) + e * math.hypot(math.cos(ang) - 1.0, math.sin(ang))
