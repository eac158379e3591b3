"""Compact frames: explicit matrix models of the Lie algebra.

A CompactFrame carries an orthogonal (not orthonormal) basis of the compact
form, realized in the block-diagonal defining representation:

    iH_p          for each Cartan coordinate p (simple coroot or torus line),
    A_b = E - F   and
    B_b = i(E + F) for each positive root b.

All entries are Gaussian rationals.  The invariant form is B(X,Y) = -tr(XY)
on the defining blocks; for type A factors this gives long roots squared
length 2 on the nose, and torus lines the identity gram, so frame norms agree
exactly with the weight-space normalization.  Basis-summed operator formulas
downstream contract through the inverse of the frame gram instead of
pretending the frame is orthonormal.

Only type A simple factors (plus tori) have defining blocks here; the
B/C/D root systems stay available in liecore but have no frame.
"""

from .errors import (UnsupportedType, NotOrthogonal, BadStructureConstants,
                     SystemMismatch)
from .exactmat import ExactMatrix, commutator
from .liecore import RootSystem
from .rationals import rat, ZERO

CARTAN, ROOT_A, ROOT_B = "iH", "A", "B"


def _a_root_span(factor_rank, coeffs):
    """Positive A_m root with simple coefficients (0..1 run) -> (j, k) with
    b = eps_j - eps_k on the factor's diagonal block."""
    ones = [i for i, c in enumerate(coeffs) if c == 1]
    if not ones or any(c not in (0, 1) for c in coeffs):
        raise BadStructureConstants("not an A-family positive root")
    j, top = ones[0], ones[-1]
    if ones != list(range(j, top + 1)):
        raise BadStructureConstants("root support is not an interval")
    return j, top + 1


class CompactFrame:
    """Orthogonal frame of the compact form of a (type A + torus) system."""

    def __init__(self, rs):
        for fam, rank in rs.factors:
            if fam not in ("A", "Torus"):
                raise UnsupportedType(
                    "no defining-block frame for family %s; "
                    "only type A factors and tori carry one" % fam)
        self.system = rs
        self._build_directions()
        self._build_gram()
        self._bracket_cache = {}

    # ------------------------------------------------------------ directions

    def _build_directions(self):
        rs = self.system
        blocks = []   # (offset, size) per factor
        offset = 0
        for fam, rank in rs.factors:
            size = rank + 1 if fam == "A" else 1  # torus factors split below
            if fam == "Torus":
                blocks.append(("Torus", offset, rank))
                offset += rank
            else:
                blocks.append(("A", offset, size))
                offset += size
        self.matrixSize = offset
        self.factorBlocks = tuple(blocks)

        # coordinate position -> owning factor block and local index
        owner = {}
        pos = 0
        for bi, (fam, rank) in enumerate(rs.factors):
            for local in range(rank):
                owner[pos] = (bi, local)
                pos += 1

        names = []
        mats = []
        dir_factor = []
        n = self.matrixSize
        for p in range(rs.rank):
            bi, local = owner[p]
            dir_factor.append(bi)
            fam, boff, _ = blocks[bi]
            m = ExactMatrix.zeros(n, n)
            if fam == "A":
                # simple coroot H = e_ii - e_{i+1,i+1}, taken times i
                m.put(boff + local, boff + local, (ZERO, rat(1)))
                m.put(boff + local + 1, boff + local + 1, (ZERO, rat(-1)))
            else:
                m.put(boff + local, boff + local, (ZERO, rat(1)))
            names.append((CARTAN, p))
            mats.append(m)

        simple_set = rs.simple_positions
        factor_of_simple = {}
        idx = 0
        pos = 0
        for bi, (fam, rank) in enumerate(rs.factors):
            for local in range(rank):
                if fam == "A":
                    factor_of_simple[pos] = (bi, local)
                pos += 1

        self.rootPairs = []
        for beta in rs.positiveRoots:
            coeffs = rs.rootCoefficients(beta)
            # locate the unique simple factor carrying this root
            support = [i for i, c in enumerate(coeffs) if c]
            bi0, _ = factor_of_simple[simple_set[support[0]]]
            fam, boff, bsize = blocks[bi0]
            local_coeffs = []
            for i, c in enumerate(coeffs):
                bi, local = factor_of_simple[simple_set[i]]
                if bi == bi0:
                    local_coeffs.append(c)
                elif c:
                    raise BadStructureConstants("root crosses factor blocks")
            j, k = _a_root_span(bsize - 1, local_coeffs)
            e = ExactMatrix.zeros(n, n)
            e.put(boff + j, boff + k, rat(1))
            f = ExactMatrix.zeros(n, n)
            f.put(boff + k, boff + j, rat(1))
            a_mat = e - f
            b_mat = (e + f).scale((ZERO, rat(1)))
            self.rootPairs.append((len(names), beta))
            names.append((ROOT_A, beta))
            mats.append(a_mat)
            names.append((ROOT_B, beta))
            mats.append(b_mat)
            dir_factor.extend((bi0, bi0))

        self.directionFactor = tuple(dir_factor)
        self.names = tuple(names)
        self.matrices = tuple(mats)
        self.dim = len(mats)
        self._index = {nm: i for i, nm in enumerate(names)}

    def index(self, name):
        return self._index[name]

    def cartanIndices(self):
        return tuple(range(self.system.rank))

    # ------------------------------------------------------------------ form

    def form(self, x, y):
        """Invariant form -tr(xy) of two defining-block matrices."""
        t = (x * y).trace()
        if t[1] != 0:
            raise BadStructureConstants("form produced an imaginary trace")
        return -t[0]

    def _build_gram(self):
        d = self.dim
        g = [[self.form(self.matrices[a], self.matrices[b]) for b in range(d)]
             for a in range(d)]
        # root directions must be orthogonal to everything but themselves,
        # with squared length 2; the Cartan block is the coroot gram
        for a in range(d):
            na = self.names[a]
            for b in range(d):
                if a == b:
                    continue
                if (na[0], self.names[b][0]) != (CARTAN, CARTAN):
                    assert g[a][b] == 0, (na, self.names[b])
            if na[0] != CARTAN:
                assert g[a][a] == 2
        self.gram = tuple(tuple(row) for row in g)
        gm = ExactMatrix.from_rows([[c for c in row] for row in g])
        inv = gm.solve(ExactMatrix.identity(d))
        assert inv is not None
        self.gramInverse = tuple(tuple(inv.get(i, j)[0] for j in range(d))
                                 for i in range(d))

    # -------------------------------------------------------------- brackets

    def bracketCoefficients(self, a, b):
        """[u_a, u_b] expanded over the frame, via the dual frame."""
        key = (a, b)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        if a == b:
            coef = (ZERO,) * self.dim
            self._bracket_cache[key] = coef
            return coef
        if (b, a) in self._bracket_cache:
            coef = tuple(-c for c in self._bracket_cache[(b, a)])
            self._bracket_cache[key] = coef
            return coef
        m = commutator(self.matrices[a], self.matrices[b])
        raw = [self.form(m, self.matrices[c]) for c in range(self.dim)]
        coef = tuple(sum((self.gramInverse[c][e] * raw[e]
                          for e in range(self.dim)), start=ZERO)
                     for c in range(self.dim))
        # the frame must close: reconstruct and compare exactly
        recon = ExactMatrix.zeros(self.matrixSize, self.matrixSize)
        for c, co in enumerate(coef):
            if co:
                recon = recon + self.matrices[c].scale(co)
        if recon != m:
            raise BadStructureConstants(
                "bracket of %s and %s left the frame span"
                % (self.names[a], self.names[b]))
        self._bracket_cache[key] = coef
        return coef

    def structureConstants(self):
        return tuple(tuple(self.bracketCoefficients(a, b)
                           for b in range(self.dim))
                     for a in range(self.dim))

    def bracketMatrix(self, coef_x, coef_y):
        """Bracket of two frame-coefficient vectors, as coefficients."""
        out = [ZERO] * self.dim
        for a, ca in enumerate(coef_x):
            if not ca:
                continue
            for b, cb in enumerate(coef_y):
                if not cb:
                    continue
                f = self.bracketCoefficients(a, b)
                s = ca * cb
                for c in range(self.dim):
                    if f[c]:
                        out[c] += s * f[c]
        return tuple(out)

    def directionWeight(self, a):
        """Torus weight content of a frame direction: zero on the Cartan,
        the pair (A_b, B_b) spans weights +-b."""
        nm = self.names[a]
        if nm[0] == CARTAN:
            return self.system.zeroWeight()
        return nm[1]


def buildFrame(rs):
    return CompactFrame(rs)


class PairFrame:
    """The frame of g split along an equal-rank pair: h gets the whole
    Cartan plus the kept root pairs, p the complementary root pairs."""

    def __init__(self, pair):
        self.pair = pair
        self.frame = buildFrame(pair.g)
        proots = set(pair.pRoots)
        self.pIndices = tuple(i for i, nm in enumerate(self.frame.names)
                              if nm[0] != CARTAN and nm[1] in proots)
        self.hIndices = tuple(i for i in range(self.frame.dim)
                              if i not in set(self.pIndices))
        for a in self.pIndices:
            for b in self.hIndices:
                if self.frame.gram[a][b] != 0:
                    raise NotOrthogonal("p and h directions are not "
                                        "form-orthogonal")
        self.pGram = tuple(tuple(self.frame.gram[a][b] for b in self.pIndices)
                           for a in self.pIndices)
        self.hGram = tuple(tuple(self.frame.gram[a][b] for b in self.hIndices)
                           for a in self.hIndices)
        d = len(self.pIndices)
        if d:
            gm = ExactMatrix.from_rows([[c for c in row] for row in self.pGram])
            inv = gm.solve(ExactMatrix.identity(d))
            self.pGramInverse = tuple(tuple(inv.get(i, j)[0] for j in range(d))
                                      for i in range(d))
        else:
            self.pGramInverse = ()
        dh = len(self.hIndices)
        gh = ExactMatrix.from_rows([[c for c in row] for row in self.hGram])
        invh = gh.solve(ExactMatrix.identity(dh))
        self.hGramInverse = tuple(tuple(invh.get(i, j)[0] for j in range(dh))
                                  for i in range(dh))
        self._check_reductive()

    def _check_reductive(self):
        # [h, p] must land in p: no h-component in any such bracket
        pset = set(self.pIndices)
        for a in self.hIndices:
            for b in self.pIndices:
                coef = self.frame.bracketCoefficients(a, b)
                for c, co in enumerate(coef):
                    if co and c not in pset:
                        raise NotOrthogonal(
                            "[h, p] escaped p at directions %s, %s"
                            % (self.frame.names[a], self.frame.names[b]))

    def pProjection(self, coef):
        """Restrict a full-frame coefficient vector to the p block."""
        return tuple(coef[i] for i in self.pIndices)

    def pBracketInP(self, i, j):
        """p-component of [p_i, p_j] (frame-local p indices)."""
        coef = self.frame.bracketCoefficients(self.pIndices[i],
                                              self.pIndices[j])
        return self.pProjection(coef)

    def hBracketOnP(self, hi, j):
        """[h_hi, p_j] as p-coefficients; guaranteed inside p."""
        coef = self.frame.bracketCoefficients(self.hIndices[hi],
                                              self.pIndices[j])
        return self.pProjection(coef)

    def pWeight(self, i):
        """H-weight of the i-th p-direction's root pair."""
        return self.pair.weightToH(self.frame.directionWeight(self.pIndices[i]))
