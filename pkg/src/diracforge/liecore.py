"""Root systems, Weyl groups, and weight arithmetic for types A/B/C/D and tori.

Conventions, fixed once and used by every downstream module:

* Weights are plain tuples of exact rationals in fundamental-weight
  coordinates (torus factors contribute bare character coordinates).
* cartan[i][j] = 2(alpha_i, alpha_j)/(alpha_j, alpha_j), so row i is the
  fundamental-coordinate vector of the simple root alpha_i and the simple
  reflection is s_i(lam) = lam - lam_i * alpha_i.
* The invariant inner product is normalized so long roots have squared
  length 2 in every simple factor ("long-root-2"); standalone torus blocks
  get the identity gram.  Subgroup systems built by equalRankPair override
  the gram with the one inherited from the ambient group.
* Simple factors follow Bourbaki node ordering.
"""

from .rationals import rat, ZERO, ONE, rat_str, rat_from_str, is_integer
from .exactmat import ExactMatrix
from .errors import (UnsupportedType, SystemMismatch, IncompatiblePair,
                     NotIntegral)

NORMALIZATION = "long-root-2"

_FAMILIES = ("A", "B", "C", "D", "Torus")


def _cartan_block(family, rank):
    """Integer Cartan matrix rows for one simple factor."""
    if family == "A":
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                 for j in range(rank)] for i in range(rank)]
    if family == "B":  # alpha_1 long, alpha_2 short
        return [[2, -2], [-1, 2]]
    if family == "C":
        return [[2, -1], [-2, 2]]
    if family == "D":  # node 2 is the branch node
        return [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    raise UnsupportedType(family)


def _half_lengths(family, rank):
    """d_i = <alpha_i, alpha_i>/2 under the long-root-2 normalization."""
    if family == "B":
        return [rat(1), rat(1, 2)]
    if family == "C":
        return [rat(1, 2), rat(1)]
    return [rat(1)] * rank


def _check_supported(family, rank):
    ok = ((family == "A" and 1 <= rank <= 4)
          or (family == "B" and rank == 2)
          or (family == "C" and rank == 2)
          or (family == "D" and rank == 4)
          or (family == "Torus" and 0 <= rank <= 4))
    if not ok:
        raise UnsupportedType("unsupported factor %s_%d" % (family, rank))


class WeylElement:
    """A Weyl-group element as a word in simple reflections.

    Applying the reflections in word order (left to right) to the original
    weight produces the image; sign = (-1)^len(word), valid because every
    word produced here is reduced.
    """

    __slots__ = ("word", "sign")

    def __init__(self, word=()):
        self.word = tuple(word)
        self.sign = -1 if len(self.word) % 2 else 1

    def __repr__(self):
        if not self.word:
            return "WeylElement(e)"
        return "WeylElement(%s)" % "*".join("s%d" % (i + 1) for i in self.word)


class RootSystem:
    def __init__(self, factors, gram=None, label=None):
        factors = tuple((f, int(r)) for f, r in factors)
        if not factors:
            raise UnsupportedType("empty factor list")
        for f, r in factors:
            if f not in _FAMILIES:
                raise UnsupportedType("unknown family %r" % (f,))
            _check_supported(f, r)
        self.factors = factors
        self.rank = sum(r for _, r in factors)
        self.label = label if label is not None else self._default_label()

        # global positions of simple-root coordinates, factor by factor
        self.simple_positions = []
        offset = 0
        blocks = []
        for f, r in factors:
            blocks.append((f, r, offset))
            if f != "Torus":
                self.simple_positions.extend(range(offset, offset + r))
            offset += r
        self._blocks = blocks

        self.cartanMatrix = self._assemble_cartan()
        self.simpleRoots = self._simple_roots_full()
        self.gram = self._assemble_gram() if gram is None else \
            [[rat(x) for x in row] for row in gram]
        if len(self.gram) != self.rank or any(len(r) != self.rank for r in self.gram):
            raise SystemMismatch("gram size != rank")
        self._root_coef_mat = self._root_coefficient_matrix()
        self.positiveRoots = self._positive_closure()
        self.rho = tuple(ONE if i in set(self.simple_positions) else ZERO
                         for i in range(self.rank))
        half = self.rhoFromPositiveRoots()
        if half != self.rho:
            raise AssertionError("rho consistency failed: %r vs %r" % (half, self.rho))

    # -- construction helpers --------------------------------------------

    def _default_label(self):
        return "x".join(("T%d" % r if f == "Torus" else "%s%d" % (f, r))
                        for f, r in self.factors)

    def _assemble_cartan(self):
        n = len(self.simple_positions)
        cm = [[0] * n for _ in range(n)]
        base = 0
        for f, r, _ in self._blocks:
            if f == "Torus":
                continue
            block = _cartan_block(f, r)
            for i in range(r):
                for j in range(r):
                    cm[base + i][base + j] = block[i][j]
            base += r
        return cm

    def _simple_roots_full(self):
        roots = []
        for k, pos in enumerate(self.simple_positions):
            coords = [ZERO] * self.rank
            for m, pos2 in enumerate(self.simple_positions):
                coords[pos2] = rat(self.cartanMatrix[k][m])
            roots.append(tuple(coords))
        return roots

    def _assemble_gram(self):
        g = [[ZERO] * self.rank for _ in range(self.rank)]
        for f, r, off in self._blocks:
            if f == "Torus":
                for i in range(r):
                    g[off + i][off + i] = ONE
                continue
            a = ExactMatrix.from_rows(_cartan_block(f, r))
            ainv = a.solve(ExactMatrix.identity(r))
            d = _half_lengths(f, r)
            for i in range(r):
                for j in range(r):
                    g[off + i][off + j] = d[i] * ainv.get(j, i)[0]
        for i in range(self.rank):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise AssertionError("gram not symmetric")
        return g

    def _positive_closure(self):
        roots = set(self.simpleRoots)
        frontier = list(roots)
        nsimple = len(self.simple_positions)
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(nsimple):
                    w = self.reflect(i, v)
                    if w not in roots:
                        roots.add(w)
                        nxt.append(w)
            frontier = nxt
        pos = []
        for v in roots:
            coeffs = self.rootCoefficients(v)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                pos.append(v)
        pos.sort()
        return tuple(pos)

    def _root_coefficient_matrix(self):
        n = len(self.simple_positions)
        if n == 0:
            return None
        m = ExactMatrix.from_rows(
            [[self.simpleRoots[j][p] for j in range(n)]
             for p in self.simple_positions])
        return m.solve(ExactMatrix.identity(n))

    # -- weights ------------------------------------------------------------

    def weight(self, coords):
        coords = tuple(rat(c) for c in coords)
        if len(coords) != self.rank:
            raise SystemMismatch(
                "weight has %d coords, system %s has rank %d"
                % (len(coords), self.label, self.rank))
        return coords

    def zeroWeight(self):
        return (ZERO,) * self.rank

    def isIntegral(self, lam):
        return all(is_integer(c) for c in self.weight(lam))

    def isDominant(self, lam):
        lam = self.weight(lam)
        return all(lam[p] >= 0 for p in self.simple_positions)

    def isDominantRegular(self, lam):
        lam = self.weight(lam)
        return all(lam[p] > 0 for p in self.simple_positions)

    def innerProduct(self, lam, mu):
        lam = self.weight(lam)
        mu = self.weight(mu)
        total = ZERO
        for i in range(self.rank):
            if not lam[i]:
                continue
            row = self.gram[i]
            for j in range(self.rank):
                if mu[j]:
                    total += lam[i] * row[j] * mu[j]
        return total

    def norm2(self, lam):
        return self.innerProduct(lam, lam)

    def rootCoefficients(self, v):
        """Expansion of v over the simple roots; None if v is outside their span."""
        v = self.weight(v)
        if self._root_coef_mat is None:
            return None if any(v) else ()
        simple_set = set(self.simple_positions)
        for i in range(self.rank):
            if i not in simple_set and v[i]:
                return None
        col = ExactMatrix.from_rows([[v[p]] for p in self.simple_positions])
        c = self._root_coef_mat * col
        return tuple(c.get(i, 0)[0] for i in range(len(self.simple_positions)))

    # -- Weyl group ---------------------------------------------------------

    def reflect(self, i, lam):
        """Simple reflection s_i, i indexing simpleRoots."""
        lam = self.weight(lam)
        c = lam[self.simple_positions[i]]
        if not c:
            return lam
        alpha = self.simpleRoots[i]
        return tuple(x - c * a for x, a in zip(lam, alpha))

    def makeDominant(self, lam):
        lam = self.weight(lam)
        word = []
        nsimple = len(self.simple_positions)
        while True:
            for i in range(nsimple):
                if lam[self.simple_positions[i]] < 0:
                    lam = self.reflect(i, lam)
                    word.append(i)
                    break
            else:
                return lam, WeylElement(word)

    def weylOrbit(self, lam):
        lam = self.weight(lam)
        seen = {lam}
        frontier = [lam]
        nsimple = len(self.simple_positions)
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(nsimple):
                    w = self.reflect(i, v)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(seen)

    def signedOrbit(self, lam):
        """[(w(lam), sign(w))] for regular lam; raises on singular input."""
        out = []
        for v in self.weylOrbit(lam):
            dom, w = self.makeDominant(v)
            if not self.isDominantRegular(dom):
                raise NotIntegral("signedOrbit needs a regular weight")
            out.append((v, w.sign))
        return out

    def isRegular(self, lam):
        lam = self.weight(lam)
        return all(self.innerProduct(lam, a) != 0 for a in self.positiveRoots)

    def weylGroupOrder(self):
        return len(self.weylOrbit(self.rho))

    def rhoFromPositiveRoots(self):
        acc = [ZERO] * self.rank
        for a in self.positiveRoots:
            for i in range(self.rank):
                acc[i] += a[i]
        return tuple(c / 2 for c in acc)

    # -- serialization --------------------------------------------------------

    def to_json(self):
        return {"factors": [{"family": f, "rank": r} for f, r in self.factors]}

    def __eq__(self, other):
        return (isinstance(other, RootSystem)
                and self.factors == other.factors
                and self.gram == other.gram)

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "RootSystem(%s)" % self.label


# ---------------------------------------------------------------- builders

def buildRootSystem(family, rank):
    if family == "T":
        family = "Torus"
    return RootSystem([(family, rank)])


def productSystem(*systems):
    factors = []
    for s in systems:
        factors.extend(s.factors)
    return RootSystem(factors)


def systemFromLabel(label):
    """Parse labels like "A2", "T1", "A1xT1", "Torus2"."""
    factors = []
    for part in label.split("x"):
        part = part.strip()
        if part.startswith("Torus"):
            fam, num = "Torus", part[5:]
        elif part[:1] in ("A", "B", "C", "D"):
            fam, num = part[0], part[1:]
        elif part[:1] == "T":
            fam, num = "Torus", part[1:]
        else:
            raise UnsupportedType("cannot parse factor %r" % part)
        if not num.isdigit():
            raise UnsupportedType("cannot parse rank in %r" % part)
        factors.append((fam, int(num)))
    return RootSystem(factors)


def systemFromJSON(doc):
    try:
        factors = [(f["family"], int(f["rank"])) for f in doc["factors"]]
    except (KeyError, TypeError) as exc:
        raise UnsupportedType("bad root-system descriptor: %s" % exc) from None
    return RootSystem(factors)


def weightToStrings(lam):
    return [rat_str(c) for c in lam]


def weightFromStrings(parts):
    return tuple(rat_from_str(p) for p in parts)


# spec-level free functions; thin delegates kept for a stable API surface

def innerProduct(rs, lam, mu):
    return rs.innerProduct(lam, mu)


def makeDominant(rs, lam):
    return rs.makeDominant(lam)


def isRegular(rs, lam):
    return rs.isRegular(lam)


def weylOrbit(rs, lam):
    return rs.weylOrbit(lam)


# ------------------------------------------------------------ equal-rank pairs

def _integer_kernel(rows, n):
    """Basis of {c in Z^n : M c = 0} for an integer matrix given by rows.

    Column-reduction with unimodular operations; the returned vectors are a
    lattice basis of the full kernel (saturated), not merely Q-independent
    integer solutions.
    """
    m = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    fixed = 0  # columns consumed by pivots

    def colop_sub(j, k, q):  # col_j -= q * col_k
        for row in m:
            row[j] -= q * row[k]
        for row in u:
            row[j] -= q * row[k]

    def colswap(j, k):
        for row in m:
            row[j], row[k] = row[k], row[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    for r in range(len(m)):
        while True:
            live = [j for j in range(fixed, n) if m[r][j] != 0]
            if not live:
                break
            piv = min(live, key=lambda j: abs(m[r][j]))
            done = True
            for j in live:
                if j == piv:
                    continue
                q = m[r][j] // m[r][piv]
                colop_sub(j, piv, q)
                if m[r][j] != 0:
                    done = False
            if done:
                colswap(fixed, piv)
                fixed += 1
                break
    basis = []
    for j in range(fixed, n):
        vec = [u[i][j] for i in range(n)]
        lead = next((x for x in vec if x != 0), 1)
        if lead < 0:
            vec = [-x for x in vec]
        basis.append(vec)
    return basis


class EqualRankPair:
    """An equal-rank subgroup H of G sharing the maximal torus.

    H is described by the subset of simple roots of G it keeps; the
    complement of the kept coroots contributes central torus coordinates.
    Coordinates of H-weights: kept fundamental coordinates first (in G
    order), then the integral central charges.  The gram on H-coordinates is
    inherited from G, so norms agree on the shared torus.
    """

    def __init__(self, g, keep, label=None):
        self.g = g
        keep = tuple(sorted(set(keep)))
        nsimple = len(g.simple_positions)
        if any(k < 0 or k >= nsimple for k in keep):
            raise IncompatiblePair("keep index out of range")
        self.keep = keep
        self.label = label

        if len(keep) == nsimple:
            self.h = g
            self._toH = ExactMatrix.identity(g.rank)
        else:
            if any(f == "Torus" for f, _ in g.factors) and keep:
                raise IncompatiblePair(
                    "proper keep-subsets are supported for pure simple groups")
            if keep and any(f != "A" for f, _ in g.factors):
                raise IncompatiblePair(
                    "proper keep-subsets are supported for type A factors")
            rows = [g.cartanMatrix[s] for s in keep]
            charges = (_integer_kernel(rows, nsimple) if keep
                       else [[1 if j == i else 0 for j in range(nsimple)]
                             for i in range(nsimple)])
            if len(charges) != nsimple - len(keep):
                raise IncompatiblePair("central charge lattice has wrong rank")
            hfactors = []
            run = 0
            for idx in range(nsimple + 1):
                if idx < nsimple and idx in keep:
                    run += 1
                    continue
                if run:
                    hfactors.append(("A", run))
                    run = 0
            ncharges = len(charges)
            if ncharges:
                hfactors.append(("Torus", ncharges))
            toH_rows = [[ONE if j == g.simple_positions[s] else ZERO
                         for j in range(g.rank)] for s in keep]
            for c in charges:
                row = [ZERO] * g.rank
                for j, cj in enumerate(c):
                    row[g.simple_positions[j]] = rat(cj)
                toH_rows.append(row)
            self._toH = ExactMatrix.from_rows(toH_rows)
            toG = self._toH.solve(ExactMatrix.identity(g.rank))
            gramH = [[ZERO] * g.rank for _ in range(g.rank)]
            for i in range(g.rank):
                for j in range(g.rank):
                    acc = ZERO
                    for a in range(g.rank):
                        ca = toG.get(a, i)[0]
                        if not ca:
                            continue
                        for b in range(g.rank):
                            cb = toG.get(b, j)[0]
                            if cb:
                                acc += ca * g.gram[a][b] * cb
                    gramH[i][j] = acc
            self.h = RootSystem(hfactors, gram=gramH)
            self._toG = toG

        if len(keep) == nsimple:
            self._toG = ExactMatrix.identity(g.rank)

        keepset = set(keep)
        self.pRoots = []
        for a in g.positiveRoots:
            coeffs = g.rootCoefficients(a)
            if any(coeffs[j] for j in range(len(coeffs)) if j not in keepset):
                self.pRoots.append(a)
        self.pRoots = tuple(self.pRoots)

        self.rhoG_H = self.weightToH(g.rho)
        self.shift = tuple(a - b for a, b in zip(self.rhoG_H, self.h.rho))
        if not all(is_integer(c) for c in self.shift):
            raise IncompatiblePair(
                "rho_G - rho_H is not an integral H-weight: %r" % (self.shift,))

    def weightToH(self, lam):
        lam = self.g.weight(lam)
        col = ExactMatrix.from_rows([[c] for c in lam])
        out = self._toH * col
        return tuple(out.get(i, 0)[0] for i in range(self.g.rank))

    def weightToG(self, lam):
        lam = self.h.weight(lam)
        col = ExactMatrix.from_rows([[c] for c in lam])
        out = self._toG * col
        return tuple(out.get(i, 0)[0] for i in range(self.g.rank))

    def pWeightsH(self):
        return tuple(self.weightToH(a) for a in self.pRoots)

    def isTrivial(self):
        return len(self.keep) == len(self.g.simple_positions)

    def __repr__(self):
        return "EqualRankPair(%s)" % (self.label or
                                      "%s:keep=%s" % (self.g.label, list(self.keep)))


def equalRankPair(g, spec):
    """Build a pair from a short spec: "T", "full", "u2", or "keep=0,2"."""
    nsimple = len(g.simple_positions)
    if spec in ("T", "torus"):
        return EqualRankPair(g, (), label="%s:T" % g.label)
    if spec in ("full", "g"):
        return EqualRankPair(g, range(nsimple), label="%s:full" % g.label)
    if spec == "u2":
        if g.factors != (("A", 2),):
            raise IncompatiblePair("the u2 shorthand applies to A2 only")
        return EqualRankPair(g, (0,), label="A2:u2")
    if spec.startswith("keep="):
        keep = tuple(int(t) for t in spec[5:].split(",") if t != "")
        return EqualRankPair(g, keep,
                             label="%s:keep=%s" % (g.label, spec[5:]))
    raise IncompatiblePair("unknown pair spec %r" % spec)


def pairFromLabel(label):
    gpart, _, hpart = label.partition(":")
    if not hpart:
        raise IncompatiblePair("pair label must look like G:H, got %r" % label)
    return equalRankPair(systemFromLabel(gpart), hpart)
