"""Polarized character expansions for equivariant vector spaces.

Pi_i (1 - e^{-w_i})^{-1} has exactly one expansion whose support pairs
boundedly below against a chosen direction alpha: factors with
<w, alpha> < 0 expand geometrically in e^{-w}, factors with positive
pairing flip to -sum_{k>=1} e^{kw}.  The expansion is assembled factor
by factor under an exact window budget (a term survives a stage only if
the remaining factors' minimal pairings cannot push it past the window),
so the declared window carries no silent truncation.  Every expansion is
multiplied back against Pi (1 - e^{-w_i}) before it is returned.
"""

from .characters import ConeSeries, FormalCharacter
from .errors import (DiracforgeError, NonGenericPolarization, NotIntegral,
                     NonTrivialBaseAction, PolarizationViolated)
from .characters import polarizationWitness
from .rationals import ZERO, rat, rat_str


def _weight_str(w):
    return ",".join(rat_str(c) for c in w)


def polarizedExpand(system, fiberWeights, alpha, window):
    """The alpha-polarized expansion of Pi (1 - e^{-w_i})^{-1} as a
    ConeSeries, complete for pairings up to window.  An empty weight list
    gives the unit series, which is complete outright."""
    alpha = system.weight(alpha)
    if not any(alpha):
        raise DiracforgeError("zero direction cannot polarize")
    factors = []
    total_min = ZERO
    for w in fiberWeights:
        w = system.weight(w)
        d = system.innerProduct(w, alpha)
        if d == 0:
            raise NonGenericPolarization(
                "fiber weight (%s) pairs to zero with the direction"
                % _weight_str(w))
        if d < 0:
            # sum_{k>=0} e^{-kw}: steps of -w, each raising the pairing by -d
            factors.append((tuple(-c for c in w), -d, 1, 0))
        else:
            # flipped: -sum_{k>=1} e^{kw}
            factors.append((w, d, -1, 1))
            total_min += d
    if not factors:
        return ConeSeries(system, {system.zeroWeight(): 1}, alpha, 0, None)
    window = rat(window)

    mins = [step if k0 else ZERO for _, step, _, k0 in factors]
    entries = {system.zeroWeight(): 1}
    for idx, (wstep, step, sign, k0) in enumerate(factors):
        budget = window - sum(mins[idx + 1:], ZERO)
        new = {}
        for u, m in entries.items():
            pu = system.innerProduct(u, alpha)
            k = k0
            while pu + k * step <= budget:
                v = tuple(a + k * b for a, b in zip(u, wstep))
                c = new.get(v, 0) + m * sign
                if c:
                    new[v] = c
                else:
                    new.pop(v, None)
                k += 1
        entries = new
    series = ConeSeries(system, entries, alpha, -total_min, window)

    # defining property: multiplying back yields 1 on the shrunk window
    if window - total_min >= 0:
        chk = series
        for w in fiberWeights:
            chk = chk.mulOneMinusExp(system.weight(w))
        unit = {system.zeroWeight(): 1}
        if chk.entries != unit:
            raise DiracforgeError("expansion failed the multiply-back check")
    return series


def vectorSpaceIndex(system, fiberWeights, alpha, shift, window):
    """e^{shift} times the polarized expansion; a positive <shift, alpha>
    makes the result strictly polarized."""
    shift = system.weight(shift)
    if not system.isIntegral(shift):
        raise NotIntegral("shift (%s) is not a lattice weight"
                          % _weight_str(shift))
    return polarizedExpand(system, fiberWeights, alpha, window).shift(shift)


def bundleIndex(system, baseCharacter, fiberWeights, alpha, shift, window,
                requirePolarized=True):
    """Convolution of a finite base character with the shifted fiber
    expansion.  With requirePolarized the base must carry the trivial
    torus action, which is the hypothesis under which the result is
    polarized; pass False to convolve anyway (windows still certified)."""
    if baseCharacter.basis != FormalCharacter.WEIGHT:
        raise DiracforgeError("bundle base must be a weight-basis character")
    if requirePolarized:
        for w in baseCharacter.entries:
            if any(w):
                raise NonTrivialBaseAction(
                    "base weight (%s) is nonzero; polarization is only "
                    "guaranteed over a trivially acted base" % _weight_str(w))
    fiber = vectorSpaceIndex(system, fiberWeights, alpha, shift, window)
    out = None
    for wb, m in sorted(baseCharacter.entries.items()):
        term = fiber.shift(wb).scale(m)
        out = term if out is None else out + term
    if out is None:
        return ConeSeries(system, {}, system.weight(alpha), 0, None)
    return out


def vanishingCheck(series, alpha, strict=True):
    """Certify polarization of a series (strict by default) and, in the
    strict case, that the trivial weight has coefficient zero."""
    ok, witness = polarizationWitness(series, alpha, strict)
    if not ok:
        raise PolarizationViolated(
            "weight (%s) carries multiplicity %d on the wrong side"
            % (_weight_str(witness), series.entries[witness]))
    report = {"strict": bool(strict), "polarized": True}
    if strict:
        c0 = series.coefficient(series.system.zeroWeight())
        if c0 != 0:
            raise PolarizationViolated(
                "trivial weight has coefficient %d in a strictly polarized "
                "series" % c0)
        report["trivialCoefficient"] = 0
    return report
