"""Empirical compactness and essential-norm probes.

Null families realize bounded sequences that converge to 0 uniformly on
compact subsets of the disk; compactness of the operator is witnessed by
the decay of the image norms, and essential norm zero by the decay of the
distance to the dilation approximants.  All probe values are grid
estimates, hence lower bounds of the operator quantities; verdicts are
trend-based with explicit thresholds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import BlochParams, SampleGrid, seminorm_estimate
from .bounds import ProbeReport
from .errors import DomainError
from .operators import SymbolGBeta, apply_generalized, compact_approximant
from .series import DEFAULT_ORDER, PowerSeries, eval_on_points

# Probe verdicts require decay below this fraction of the initial value.
DECAY_FACTOR = 0.1

# Compact-subset check: members must fall below this sup on |z| <= 1/2.
NULL_SUP_THRESHOLD = 1e-3

_HALF_DISK = 0.5 * np.exp(1j * np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False))


@dataclass(frozen=True)
class NullFamily:
    """Normalized sequence in the zero-at-origin Bloch space converging to 0
    on compact subsets."""

    kind: str
    members: tuple[PowerSeries, ...]
    normalization: tuple[float, ...]
    verified_null: bool
    degenerate: bool = False


def _half_disk_sup(f: PowerSeries) -> float:
    return float(np.max(np.abs(eval_on_points(f, _HALF_DISK))))


def truncated_log_witness(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Truncation of -log(1-z), the extremal witness of the log regime."""
    c = np.zeros(order + 1, dtype=np.complex128)
    c[1:] = 1.0 / np.arange(1, order + 1)
    return PowerSeries(c)


def null_family(
    kind: str,
    m_max: int,
    p: BlochParams,
    g: SampleGrid,
    base: PowerSeries | None = None,
    order: int = DEFAULT_ORDER,
) -> NullFamily:
    """Construct the monomial or dilation family, normalized to unit
    estimated seminorm, and verify the compact-subset decay numerically.

    Degenerate dilation families (for example a linear base, which dilation
    merely rescales) are flagged, not rejected.
    """
    if m_max < 1:
        raise DomainError("null_family requires m_max >= 1")
    members = []
    norms = []
    if kind == "monomial":
        for m in range(1, m_max + 1):
            f = PowerSeries.monomial(m, order=max(order, 2 * m))
            nrm = seminorm_estimate(f, p, g).value
            members.append(f.scale(1.0 / nrm))
            norms.append(nrm)
        degenerate = False
    elif kind == "dilation":
        if base is None:
            base = truncated_log_witness(order)
        if base.coeffs[0] != 0:
            raise DomainError("dilation base must vanish at the origin")
        for m in range(1, m_max + 1):
            r = 1.0 - 2.0 ** (-m)
            f = PowerSeries(base.coeffs * r ** np.arange(base.order + 1))
            nrm = seminorm_estimate(f, p, g).value
            members.append(f.scale(1.0 / nrm))
            norms.append(nrm)
        # a linear base dilates to a scalar multiple of itself: constant family
        degenerate = base.order < 2 or np.all(base.coeffs[2:] == 0)
    else:
        raise DomainError(f"unknown family kind {kind!r}")
    verified = _half_disk_sup(members[-1]) < NULL_SUP_THRESHOLD
    return NullFamily(
        kind=kind,
        members=tuple(members),
        normalization=tuple(norms),
        verified_null=verified,
        degenerate=degenerate,
    )


def _decay_verdict(values: list[float], ok: str, bad: str) -> str:
    """Consistent when the tail past the first factor-10 drop stays
    monotonically decreasing (up to estimation noise)."""
    first = values[0]
    k0 = None
    for i, v in enumerate(values):
        if v < DECAY_FACTOR * first:
            k0 = i
            break
    if k0 is None:
        return bad
    tail = values[k0:]
    noise = 1e-9 * (1.0 + first)
    if all(tail[i + 1] <= tail[i] + noise for i in range(len(tail) - 1)):
        return ok
    return bad


def compactness_probe(
    s: SymbolGBeta, p: BlochParams, fam: NullFamily, g: SampleGrid
) -> ProbeReport:
    """Image norms of the operator along the null family; a compact operator
    sends the family to 0 in norm."""
    values = [
        seminorm_estimate(apply_generalized(f, s), p, g).value for f in fam.members
    ]
    ms = np.arange(1, len(values) + 1, dtype=float)
    pos = [(m, v) for m, v in zip(ms, values) if v > 0]
    if len(pos) >= 2:
        logm = np.log([m for m, _ in pos])
        logv = np.log([v for _, v in pos])
        slope = float(np.polyfit(logm, logv, 1)[0])
    else:
        slope = -math.inf
    verdict = (
        "compact-consistent"
        if all(v == 0 for v in values)
        else _decay_verdict(values, "compact-consistent", "inconsistent")
    )
    return ProbeReport(
        samples=tuple(zip(ms, values)),
        fitted_exponent=slope,
        verdict=verdict,
        labels=(fam.kind,),
    )


def default_test_family(
    p: BlochParams, g: SampleGrid, m_max: int = 32, order: int = DEFAULT_ORDER
) -> list[PowerSeries]:
    """Normalized monomials z^m, m <= m_max, plus the normalized truncation
    of -log(1-z): the extremal witnesses of the counterexample regimes."""
    members = []
    for m in range(1, m_max + 1):
        f = PowerSeries.monomial(m, order=max(order, 2 * m))
        members.append(f.scale(1.0 / seminorm_estimate(f, p, g).value))
    w = truncated_log_witness(order)
    members.append(w.scale(1.0 / seminorm_estimate(w, p, g).value))
    return members


def essential_norm_probe(
    s: SymbolGBeta,
    p: BlochParams,
    dilations: list[float],
    test_family: list[PowerSeries],
    g: SampleGrid,
) -> ProbeReport:
    """Empirical lower bound of the distance from the operator to its
    dilation approximant, maximized over the test family, per dilation.

    Decay toward 0 with the dilation is the essential-norm-zero signature.
    """
    ds = list(dilations)
    if any(not 0 < d < 1 for d in ds) or any(b <= a for a, b in zip(ds, ds[1:])):
        raise DomainError("dilations must be increasing in (0, 1)")
    samples = []
    argmax_labels = []
    for d in ds:
        best = 0.0
        best_i = 0
        for i, f in enumerate(test_family):
            diff = apply_generalized(f, s) - compact_approximant(f, s, d)
            v = seminorm_estimate(diff, p, g).value
            if v > best:
                best = v
                best_i = i
        samples.append((d, best))
        argmax_labels.append(f"member-{best_i}")
    values = [v for _, v in samples]
    # decay rate of the distance in -log(1-s)
    pos = [(d, v) for d, v in samples if v > 0]
    if len(pos) >= 2:
        x = [-math.log1p(-d) for d, _ in pos]
        y = [math.log(v) for _, v in pos]
        slope = float(np.polyfit(x, y, 1)[0])
    else:
        slope = -math.inf
    verdict = _decay_verdict(values, "essential-norm-zero-consistent", "inconsistent")
    return ProbeReport(
        samples=tuple(samples),
        fitted_exponent=slope,
        verdict=verdict,
        labels=tuple(argmax_labels),
    )
