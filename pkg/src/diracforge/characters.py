"""Characters, weight multiplicities, and truncated cone series.

The two container types:

* FormalCharacter - finitely supported integer multiplicities over the
  weight lattice, either in the weight basis (a function on weights) or in
  the irreducible basis (a virtual decomposition into V_lambda's).
* ConeSeries - a formal series over the weight lattice with a declared
  polarizing direction, a support bound (offset), and a completeness
  window.  window=None means the stored entries are the entire series.
  No entry inside the certified range is ever silently missing; operations
  shrink windows instead of guessing.

Irreducible characters come from the Freudenthal recursion; decompositions
use greedy highest-weight peeling.
"""

import itertools

from . import cache
from .errors import (NotDominant, NotIntegral, SystemMismatch,
                     WindowTooSmall, DiracforgeError)
from .liecore import weightToStrings, weightFromStrings
from .rationals import rat, ZERO, rat_str, rat_from_str, is_integer


class FormalCharacter:
    WEIGHT = "weight-basis"
    IRREDUCIBLE = "irreducible-basis"

    def __init__(self, system, entries, basis=WEIGHT):
        if basis not in (self.WEIGHT, self.IRREDUCIBLE):
            raise DiracforgeError("unknown basis flag %r" % basis)
        self.system = system
        self.basis = basis
        self.entries = {system.weight(w): int(m) for w, m in entries.items()
                        if int(m) != 0}

    def coefficient(self, w):
        return self.entries.get(self.system.weight(w), 0)

    def support(self):
        return sorted(self.entries)

    def dimension(self):
        if self.basis == self.WEIGHT:
            return sum(self.entries.values())
        return sum(m * weylDimension(self.system, lam)
                   for lam, m in self.entries.items())

    def isZero(self):
        return not self.entries

    def mapWeights(self, fn, system=None):
        out = {}
        for w, m in self.entries.items():
            v = fn(w)
            out[v] = out.get(v, 0) + m
        return FormalCharacter(system or self.system, out, self.basis)

    def __add__(self, other):
        self._compat(other)
        out = dict(self.entries)
        for w, m in other.entries.items():
            out[w] = out.get(w, 0) + m
        return FormalCharacter(self.system, out, self.basis)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return FormalCharacter(self.system,
                               {w: k * m for w, m in self.entries.items()},
                               self.basis)

    def convolve(self, other):
        """Pointwise product of class functions; weight basis only."""
        self._compat(other)
        if self.basis != self.WEIGHT:
            raise DiracforgeError("convolve needs weight-basis operands")
        out = {}
        for w1, m1 in self.entries.items():
            for w2, m2 in other.entries.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                c = out.get(w, 0) + m1 * m2
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
        return FormalCharacter(self.system, out)

    def _compat(self, other):
        if self.system != other.system:
            raise SystemMismatch("characters live on different systems")
        if self.basis != other.basis:
            raise DiracforgeError("basis flags differ")

    def isWeylInvariant(self):
        for w, m in self.entries.items():
            for v in self.system.weylOrbit(w):
                if self.entries.get(v, 0) != m:
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, FormalCharacter)
                and self.system == other.system
                and self.basis == other.basis
                and self.entries == other.entries)

    def __repr__(self):
        items = ", ".join("(%s): %d" % (",".join(weightToStrings(w)), m)
                          for w, m in sorted(self.entries.items()))
        return "FormalCharacter<%s|%s>{%s}" % (self.system.label, self.basis, items)

    # file format: header "<label> <basis-flag>", then "<coords p/q,...> <mult>"
    def to_lines(self):
        lines = ["%s %s" % (self.system.label, self.basis)]
        for w in self.support():
            lines.append("%s %d" % (",".join(weightToStrings(w)), self.entries[w]))
        return lines

    @classmethod
    def from_lines(cls, lines, system=None):
        header = lines[0].split()
        if len(header) != 2:
            raise DiracforgeError("bad character header: %r" % lines[0])
        label, basis = header
        if system is None:
            from .liecore import systemFromLabel
            system = systemFromLabel(label)
        entries = {}
        for ln in lines[1:]:
            ln = ln.strip()
            if not ln:
                continue
            coords, mult = ln.split()
            w = weightFromStrings(coords.split(","))
            entries[w] = entries.get(w, 0) + int(mult)
        return cls(system, entries, basis)


def trivialCharacter(rs, basis=FormalCharacter.WEIGHT):
    return FormalCharacter(rs, {rs.zeroWeight(): 1}, basis)


# ------------------------------------------------------------- irreducibles

def _require_dominant_integral(rs, lam):
    lam = rs.weight(lam)
    if not rs.isIntegral(lam):
        raise NotIntegral("weight (%s) is not integral"
                          % ",".join(weightToStrings(lam)))
    if not rs.isDominant(lam):
        raise NotDominant("weight (%s) is not dominant"
                          % ",".join(weightToStrings(lam)))
    return lam


def weylDimension(rs, lam):
    """Product formula over positive roots; independent of Freudenthal."""
    lam = _require_dominant_integral(rs, lam)
    lam_rho = tuple(a + b for a, b in zip(lam, rs.rho))
    num = rat(1)
    den = rat(1)
    for a in rs.positiveRoots:
        num *= rs.innerProduct(lam_rho, a)
        den *= rs.innerProduct(rs.rho, a)
    d = num / den
    if not is_integer(d):
        raise AssertionError("non-integral dimension %s" % rat_str(d))
    return int(d)


def dominantWeightsBelow(rs, lam):
    """All dominant mu with lam - mu in the nonnegative-integer root lattice."""
    lam = rs.weight(lam)
    nsimple = len(rs.simple_positions)
    if nsimple == 0:
        return [lam]
    simple_set = set(rs.simple_positions)
    proj = tuple(lam[i] if i in simple_set else ZERO for i in range(rs.rank))
    # the inverse-transpose Cartan has nonnegative entries, so dominance of mu
    # pins each root coefficient of lam - mu below the coefficient of proj
    top = rs.rootCoefficients(proj)
    bounds = [max(int(c), 0) for c in top]
    out = []
    simple = rs.simpleRoots
    for cvec in itertools.product(*(range(b + 1) for b in bounds)):
        mu = list(lam)
        for j, c in enumerate(cvec):
            if c:
                for i in range(rs.rank):
                    mu[i] -= c * simple[j][i]
        mu = tuple(mu)
        if rs.isDominant(mu):
            out.append(mu)
    return sorted(out)


def irreducibleCharacter(rs, lam):
    """Weight multiplicities of the irreducible with highest weight lam.

    Freudenthal recursion over the dominant chamber, then orbit expansion.
    Results are cached on disk keyed by (system, lam); see cache.py.
    """
    lam = _require_dominant_integral(rs, lam)

    cached = cache.load(rs, lam)
    if cached is not None:
        entries = {weightFromStrings(k.split(",")): v
                   for k, v in cached["entries"].items()}
        return FormalCharacter(rs, entries)

    rho = rs.rho
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    target = rs.innerProduct(lam_rho, lam_rho)
    dominants = dominantWeightsBelow(rs, lam)

    def height(mu):
        c = rs.rootCoefficients(tuple(a - b for a, b in zip(lam, mu)))
        return sum(c, start=ZERO)

    dominants.sort(key=lambda mu: (height(mu), mu))
    mult = {lam: 1}

    def weight_mult(v):
        dom, _ = rs.makeDominant(v)
        return mult.get(dom, 0)

    for mu in dominants:
        if mu == lam:
            continue
        mu_rho = tuple(a + b for a, b in zip(mu, rho))
        denom = target - rs.innerProduct(mu_rho, mu_rho)
        if denom == 0:
            raise AssertionError("vanishing Freudenthal denominator")
        acc = ZERO
        for alpha in rs.positiveRoots:
            k = 1
            while True:
                v = tuple(a + k * b for a, b in zip(mu, alpha))
                m = weight_mult(v)
                if m == 0:
                    # root strings through a weight diagram have no gaps
                    break
                acc += 2 * m * rs.innerProduct(v, alpha)
                k += 1
        val = acc / denom
        if not is_integer(val) or val < 0:
            raise AssertionError("Freudenthal produced %s at (%s)"
                                 % (rat_str(val), ",".join(weightToStrings(mu))))
        if val:
            mult[mu] = int(val)

    entries = {}
    for mu, m in mult.items():
        for v in rs.weylOrbit(mu):
            entries[v] = m
    chi = FormalCharacter(rs, entries)

    doc = {"system": cache.system_key(rs),
           "lambda": ",".join(weightToStrings(lam)),
           "entries": {",".join(weightToStrings(w)): m
                       for w, m in sorted(chi.entries.items())}}
    cache.store(rs, lam, doc)
    return chi


def fullWeightMultiset(rs, lam):
    """Weight-basis character of V_lam (alias kept for callers that think
    of it as a multiset rather than a function)."""
    return irreducibleCharacter(rs, lam)


# ----------------------------------------------------------- decompositions

def decomposeCharacter(chi):
    """Greedy highest-weight peel of a weight-basis character.

    Returns a FormalCharacter in the irreducible basis.  Works for any
    virtual character (integer coefficients, signs allowed); raises if the
    input is not one.
    """
    rs = chi.system
    if chi.basis == FormalCharacter.IRREDUCIBLE:
        return chi
    rest = dict(chi.entries)
    out = {}
    while rest:
        # a dominant support weight maximizing |mu+rho|^2 is extremal
        best = None
        best_key = None
        for w in rest:
            if not rs.isDominant(w):
                continue
            w_rho = tuple(a + b for a, b in zip(w, rs.rho))
            key = (rs.innerProduct(w_rho, w_rho), w)
            if best is None or key > best_key:
                best, best_key = w, key
        if best is None:
            raise DiracforgeError("no dominant weight left to peel; "
                                  "input is not a virtual character")
        m = rest[best]
        piece = irreducibleCharacter(rs, best)
        for w, pm in piece.entries.items():
            nv = rest.get(w, 0) - m * pm
            if nv:
                rest[w] = nv
            else:
                rest.pop(w, None)
        out[best] = out.get(best, 0) + m
    return FormalCharacter(rs, out, FormalCharacter.IRREDUCIBLE)


def tensorDecompose(rs, lam, mu):
    """V_lam (x) V_mu as {dominant weight: multiplicity}."""
    lam = _require_dominant_integral(rs, lam)
    mu = _require_dominant_integral(rs, mu)
    prod = irreducibleCharacter(rs, lam).convolve(irreducibleCharacter(rs, mu))
    dec = decomposeCharacter(prod)
    if any(m <= 0 for m in dec.entries.values()):
        raise AssertionError("tensor product decomposed with negative parts")
    if dec.dimension() != weylDimension(rs, lam) * weylDimension(rs, mu):
        raise AssertionError("tensor decomposition lost dimension")
    return dict(dec.entries)


def restrictCharacter(pair, lam):
    """Branch V_lam from G to the equal-rank subgroup H of the pair,
    as {dominant H-weight: multiplicity}."""
    g, h = pair.g, pair.h
    lam = _require_dominant_integral(g, lam)
    chi = irreducibleCharacter(g, lam)
    restricted = chi.mapWeights(pair.weightToH, system=h)
    dec = decomposeCharacter(restricted)
    if any(m <= 0 for m in dec.entries.values()):
        raise AssertionError("restriction decomposed with negative parts")
    if dec.dimension() != chi.dimension():
        raise AssertionError("restriction lost dimension")
    return dict(dec.entries)


def trivialMultiplicity(chi):
    """Multiplicity of the trivial representation in a virtual character."""
    if chi.basis == FormalCharacter.IRREDUCIBLE:
        return chi.coefficient(chi.system.zeroWeight())
    return decomposeCharacter(chi).coefficient(chi.system.zeroWeight())


def dualWeight(rs, lam):
    """Highest weight of the dual of V_lam."""
    lam = _require_dominant_integral(rs, lam)
    dom, _ = rs.makeDominant(tuple(-c for c in lam))
    return dom


# --------------------------------------------------------------- cone series

class ConeSeries:
    """Lattice series with a polarizing direction and explicit certification.

    Completeness contract: every lattice weight w with
        lower <= <w, polarizer> <= window
    has its exact coefficient stored (absent = 0).  window=None means the
    stored entries are the entire series.  lower=None means certified all
    the way down, backed by the support bound: offset=None claims nothing,
    otherwise every support weight satisfies <w, polarizer> >= -offset.
    """

    def __init__(self, system, entries, polarizer, offset, window, lower=None):
        self.system = system
        self.polarizer = system.weight(polarizer)
        self.offset = None if offset is None else rat(offset)
        self.window = None if window is None else rat(window)
        self.lower = None if lower is None else rat(lower)
        self.entries = {}
        for w, m in entries.items():
            m = int(m)
            if m == 0:
                continue
            w = system.weight(w)
            p = self.pairing(w)
            if self.window is not None and p > self.window:
                continue  # beyond the certified window: drop, never guess
            if self.lower is not None and p < self.lower:
                continue
            if self.offset is not None and p < -self.offset:
                raise DiracforgeError(
                    "weight (%s) violates the declared support bound"
                    % ",".join(weightToStrings(w)))
            self.entries[w] = m

    def pairing(self, w):
        return self.system.innerProduct(w, self.polarizer)

    def coefficient(self, w):
        w = self.system.weight(w)
        p = self.pairing(w)
        if self.window is not None and p > self.window:
            raise WindowTooSmall("coefficient at pairing %s lies past window %s"
                                 % (rat_str(p), rat_str(self.window)))
        if self.lower is not None and p < self.lower:
            raise WindowTooSmall("coefficient at pairing %s lies below %s"
                                 % (rat_str(p), rat_str(self.lower)))
        return self.entries.get(w, 0)

    def support(self):
        return sorted(self.entries)

    def isZero(self):
        return not self.entries

    def isComplete(self):
        return self.window is None

    def minSupportPairing(self):
        if not self.entries:
            return None
        return min(self.pairing(w) for w in self.entries)

    def scale(self, k):
        return ConeSeries(self.system,
                          {w: k * m for w, m in self.entries.items()},
                          self.polarizer, self.offset, self.window, self.lower)

    def shift(self, beta):
        """Multiply by e^beta: translate support and all certified bounds."""
        beta = self.system.weight(beta)
        d = self.pairing(beta)
        entries = {tuple(a + b for a, b in zip(w, beta)): m
                   for w, m in self.entries.items()}
        return ConeSeries(self.system, entries, self.polarizer,
                          None if self.offset is None else self.offset - d,
                          None if self.window is None else self.window + d,
                          None if self.lower is None else self.lower + d)

    def __add__(self, other):
        if self.system != other.system or self.polarizer != other.polarizer:
            raise SystemMismatch("cone series are not aligned")
        if self.window is None:
            window = other.window
        elif other.window is None:
            window = self.window
        else:
            window = min(self.window, other.window)
        if self.offset is None or other.offset is None:
            offset = None
            lows = [b for b in (self.lower, other.lower) if b is not None]
            lower = max(lows) if lows else None
        else:
            offset = max(self.offset, other.offset)
            lower = None
        entries = dict(self.entries)
        for w, m in other.entries.items():
            entries[w] = entries.get(w, 0) + m
        return ConeSeries(self.system, entries, self.polarizer,
                          offset, window, lower)

    def __sub__(self, other):
        return self + other.scale(-1)

    def mulOneMinusExp(self, w):
        """Multiply by (1 - e^{-w}).

        Coefficient at u needs the input at u and at u+w, so the window
        drops by <w,polarizer> when that pairing is positive; the support
        bound widens by the same amount, and any lower certification edge
        rises when the pairing is negative.
        """
        w = self.system.weight(w)
        d = self.pairing(w)
        entries = dict(self.entries)
        for v, m in self.entries.items():
            u = tuple(a - b for a, b in zip(v, w))
            c = entries.get(u, 0) - m
            if c:
                entries[u] = c
            else:
                entries.pop(u, None)
        window = None if self.window is None else self.window - max(d, ZERO)
        offset = None if self.offset is None else self.offset + max(d, ZERO)
        lower = None if self.lower is None else self.lower + max(-d, ZERO)
        return ConeSeries(self.system, entries, self.polarizer,
                          offset, window, lower)

    def equalOnInterval(self, other, lo, hi):
        """Exact coefficient comparison for lo <= pairing <= hi.

        Returns (True, None) or (False, witness weight); raises
        WindowTooSmall when either side cannot certify the interval.
        """
        lo, hi = rat(lo), rat(hi)
        for s in (self, other):
            if s.window is not None and hi > s.window:
                raise WindowTooSmall("interval top %s past window %s"
                                     % (rat_str(hi), rat_str(s.window)))
            if s.lower is not None and lo < s.lower:
                raise WindowTooSmall("interval bottom %s below certified %s"
                                     % (rat_str(lo), rat_str(s.lower)))
            if s.lower is None and s.offset is None and s.window is not None:
                raise WindowTooSmall("series claims no support bound")
        keys = set()
        for s in (self, other):
            keys.update(w for w in s.entries if lo <= s.pairing(w) <= hi)
        for w in sorted(keys):
            if self.entries.get(w, 0) != other.entries.get(w, 0):
                return False, w
        return True, None

    # header: "<label> cone-series polarizer=... offset=... window=... [lower=...]"
    def to_lines(self):
        head = "%s cone-series polarizer=%s offset=%s window=%s" % (
            self.system.label,
            ",".join(weightToStrings(self.polarizer)),
            "none" if self.offset is None else rat_str(self.offset),
            "none" if self.window is None else rat_str(self.window))
        if self.lower is not None:
            head += " lower=%s" % rat_str(self.lower)
        lines = [head]
        for w in self.support():
            lines.append("%s %d" % (",".join(weightToStrings(w)), self.entries[w]))
        return lines

    @classmethod
    def from_lines(cls, lines, system=None):
        head = lines[0].split()
        if len(head) < 5 or head[1] != "cone-series":
            raise DiracforgeError("bad cone-series header: %r" % lines[0])
        if system is None:
            from .liecore import systemFromLabel
            system = systemFromLabel(head[0])
        fields = dict(part.split("=", 1) for part in head[2:])
        polarizer = weightFromStrings(fields["polarizer"].split(","))
        offset = None if fields["offset"] == "none" else rat_from_str(fields["offset"])
        window = None if fields["window"] == "none" else rat_from_str(fields["window"])
        lower = rat_from_str(fields["lower"]) if "lower" in fields else None
        entries = {}
        for ln in lines[1:]:
            ln = ln.strip()
            if not ln:
                continue
            coords, mult = ln.split()
            w = weightFromStrings(coords.split(","))
            entries[w] = entries.get(w, 0) + int(mult)
        return cls(system, entries, polarizer, offset, window, lower)

    def __eq__(self, other):
        return (isinstance(other, ConeSeries)
                and self.system == other.system
                and self.polarizer == other.polarizer
                and self.offset == other.offset
                and self.window == other.window
                and self.lower == other.lower
                and self.entries == other.entries)

    def __repr__(self):
        return "ConeSeries<%s|%d terms|window %s>" % (
            self.system.label, len(self.entries),
            "none" if self.window is None else rat_str(self.window))


def characterToSeries(chi, polarizer):
    """Embed a finite weight-basis character as a complete cone series."""
    if chi.basis != FormalCharacter.WEIGHT:
        raise DiracforgeError("need a weight-basis character")
    sigma = ConeSeries(chi.system, chi.entries, polarizer, None, None)
    low = sigma.minSupportPairing()
    sigma.offset = ZERO if low is None else max(-low, ZERO)
    return sigma


def _aligned(system, alpha, polarizer):
    """Is alpha a positive rational multiple of polarizer?"""
    t = None
    for a, p in zip(alpha, polarizer):
        if (a == 0) != (p == 0):
            return False
        if p != 0:
            r = a / p
            if r <= 0 or (t is not None and r != t):
                return False
            t = r
    return t is not None


def polarizationWitness(sigma, alpha, strict=False):
    """Certify that sigma is supported on <., alpha> >= 0 (> 0 when strict).

    Returns (True, None) or (False, offending weight).  A truncated series
    can only be certified along its own polarizer with a window reaching
    the zero level; anything else raises WindowTooSmall.
    """
    alpha = sigma.system.weight(alpha)
    if not any(alpha):
        raise DiracforgeError("zero direction cannot polarize")
    if not sigma.isComplete():
        if sigma.offset is None:
            raise WindowTooSmall("two-sided series cannot certify polarization")
        if not _aligned(sigma.system, alpha, sigma.polarizer):
            raise WindowTooSmall("direction is not certified by this series")
        if sigma.window < 0:
            raise WindowTooSmall("window stops short of the zero level")
        # weights past the window pair strictly above window >= 0 already
    for w in sigma.support():
        p = sigma.system.innerProduct(w, alpha)
        if p < 0 or (strict and p == 0):
            return False, w
    return True, None


def isPolarized(sigma, alpha, strict=False):
    ok, _ = polarizationWitness(sigma, alpha, strict)
    return ok
