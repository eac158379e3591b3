"""Clifford algebra modules over the Gaussian rationals.

Sign convention throughout: c(e)^2 = -|e|^2 (wedge minus contraction).

buildClifford(n) is the Euclidean module: n anticommuting matrices of size
2^floor(n/2) squaring to -I, built from iterated 2x2 blocks.

For the orthogonal-but-not-orthonormal frames of structure.py the same
machinery runs against the frame gram: the form is congruence-diagonalized
(no square roots), the diagonal directions are paired into exact 2x2 block
generators, and the generators are mapped back to the original frame
directions, so c(e_a)c(e_b) + c(e_b)c(e_a) = -2 G_ab holds entry-exactly.

Pairing needs matched square classes.  A leftover direction whose norm is
not a rational square has no irreducible module over Q(i); the builder then
doubles (appends a matched auxiliary direction, builds the even module,
drops the auxiliary gamma) and records that the module is the double of the
irreducible one.  The Z2-grading exists exactly when all directions pair
off within their square classes; otherwise it is recorded as absent with
the obstruction.

Every module carries its positive Hermitian form (diagonal, rational);
c(e) is skew-adjoint with respect to it.
"""

from . import structure as _structure
from .errors import (TooLarge, CliffordConstructionError,
                     BadStructureConstants, DimensionMismatch)
from .exactmat import ExactMatrix, anticommutator
from .rationals import rat, ZERO, exact_sqrt, squarefree_core


def _pair_block(d1, d2):
    """Generators for two directions of norms d1, d2 in the same square
    class (d2 = d1 r^2): 2x2 matrices squaring to -d1, -d2, anticommuting,
    with diagonal product (so torus actions stay diagonal downstream)."""
    r = exact_sqrt(d2 / d1)
    b1 = ExactMatrix.from_rows([[ZERO, -d1], [rat(1), ZERO]])
    b2 = ExactMatrix.from_rows([[ZERO, (ZERO, d1 * r)], [(ZERO, r), ZERO]])
    return b1, b2


def _conic_point(d1, d2, bound=48):
    """Rational (x, y) with x^2 + d1 y^2 = d2, by bounded search."""
    for den in range(1, bound + 1):
        for num in range(0, bound + 1):
            y = rat(num, den)
            rest = d2 - d1 * y * y
            if rest < 0:
                break
            x = exact_sqrt(rest)
            if x is not None:
                return x, y
    return None


def _mixed_block(d1, d2):
    """Generators for a final block whose norms sit in different square
    classes; exists whenever x^2 + d1 y^2 = d2 has a rational point."""
    pt = _conic_point(d1, d2)
    if pt is None:
        raise CliffordConstructionError(
            "no rational point found on x^2 + %s y^2 = %s" % (d1, d2))
    x, y = pt
    b1 = ExactMatrix.from_rows([[ZERO, -d1], [rat(1), ZERO]])
    b2 = ExactMatrix.from_rows([[(ZERO, x), (ZERO, d1 * y)],
                                [(ZERO, y), (ZERO, -x)]])
    return b1, b2


class CliffordModule:
    """gamma[a] realizes c(e_a) for the a-th input direction.

    size: matrix size; grading: ExactMatrix or None (gradingReason says
    why); form: positive diagonal Hermitian form making every gamma
    skew-adjoint; doubled: True when the module is twice the irreducible.
    """

    def __init__(self, gram, gamma, grading, grading_reason, form, doubled,
                 pivot_data):
        self.dim = len(gram)
        self.gram = gram
        self.gamma = tuple(gamma)
        self.size = gamma[0].nrows if gamma else form.nrows
        self.grading = grading
        self.gradingReason = grading_reason
        self.form = form
        self.doubled = doubled
        self.pivotData = pivot_data
        self._check()

    def _check(self):
        d = self.dim
        ident = ExactMatrix.identity(self.size)
        zero = ExactMatrix.zeros(self.size)
        for a in range(d):
            for b in range(a, d):
                if anticommutator(self.gamma[a], self.gamma[b]) \
                        != ident.scale(-2 * self.gram[a][b]):
                    raise CliffordConstructionError(
                        "relation failed at directions %d, %d" % (a, b))
            if not self.gamma[a].is_skewadjoint_wrt(self.form):
                raise CliffordConstructionError(
                    "generator %d is not skew-adjoint for the form" % a)
        if self.grading is not None:
            if self.grading * self.grading != ident:
                raise CliffordConstructionError("grading does not square to 1")
            for g in self.gamma:
                if anticommutator(self.grading, g) != zero:
                    raise CliffordConstructionError(
                        "grading fails to anticommute")
            if d and self.grading.trace() != (ZERO, ZERO):
                raise CliffordConstructionError("grading eigenspaces unbalanced")

    def withGradingSign(self, sign):
        if self.grading is None:
            raise CliffordConstructionError("module has no grading")
        if sign == 1:
            return self
        return CliffordModule(self.gram, self.gamma,
                              self.grading.scale(rat(-1)), self.gradingReason,
                              self.form, self.doubled, self.pivotData)

    def cliffordOf(self, coef):
        """c(v) for v = sum coef_a e_a over the input directions."""
        out = ExactMatrix.zeros(self.size)
        for a, c in enumerate(coef):
            if c:
                out = out + self.gamma[a].scale(c)
        return out


def _orthogonalize(gram):
    """Square-root-free Gram-Schmidt.  Returns (back, norms) where
    back[j][k] expands input direction e_j over the orthogonal pivots v_k
    and norms[k] = <v_k, v_k> > 0."""
    d = len(gram)
    v_in_e = []
    norms = []

    def form(x, y):
        return sum((x[i] * gram[i][j] * y[j]
                    for i in range(d) for j in range(d)
                    if x[i] and gram[i][j] and y[j]), start=ZERO)

    for k in range(d):
        vec = [ZERO] * d
        vec[k] = rat(1)
        e_k = tuple(vec)
        for j in range(k):
            c = form(e_k, v_in_e[j]) / norms[j]
            if c:
                for i in range(d):
                    vec[i] -= c * v_in_e[j][i]
        n = form(vec, vec)
        if n <= 0:
            raise CliffordConstructionError("frame gram is not positive definite")
        v_in_e.append(tuple(vec))
        norms.append(n)
    vmat = ExactMatrix.from_rows([[v_in_e[k][i] for i in range(d)]
                                  for k in range(d)])
    inv = vmat.solve(ExactMatrix.identity(d))
    back = [[inv.get(j, k)[0] for k in range(d)] for j in range(d)]
    return back, norms


def _plan_blocks(norms, pair_hints):
    """Group pivot indices into 2x2 blocks: hinted adjacent pairs first
    (root pairs share a class by construction), then remaining pivots by
    square class; at most one mixed block (last) or one odd leftover."""
    used = set()
    blocks = []
    for a, b in pair_hints:
        if squarefree_core(norms[a]) != squarefree_core(norms[b]):
            raise CliffordConstructionError("hinted pair has mismatched classes")
        blocks.append((a, b, "same"))
        used.update((a, b))
    by_class = {}
    for i, n in enumerate(norms):
        if i in used:
            continue
        by_class.setdefault(squarefree_core(n), []).append(i)
    singles = []
    for cls in sorted(by_class):
        members = by_class[cls]
        while len(members) >= 2:
            blocks.append((members.pop(0), members.pop(0), "same"))
        if members:
            singles.append(members[0])
    if len(singles) > 2:
        raise CliffordConstructionError(
            "more than two unpaired norm classes; no exact module at this size")
    if len(singles) == 2:
        blocks.append((singles[0], singles[1], "mixed"))
        return blocks, None
    return blocks, (singles[0] if singles else None)


def buildCliffordFrame(gram, pair_hints=()):
    """Clifford module for an exact symmetric positive-definite gram.

    pair_hints: index pairs that must share a 2x2 block (used for the
    (A_b, B_b) root pairs so torus actions come out diagonal); hinted
    directions must already be orthogonal to everything else.
    """
    d = len(gram)
    if d > 12:
        raise TooLarge("frame has %d directions; 12 is the desk-scale limit" % d)
    gram = tuple(tuple(rat(c) for c in row) for row in gram)
    if d == 0:
        return CliffordModule(gram, [], ExactMatrix.identity(1), None,
                              ExactMatrix.identity(1), False,
                              {"norms": (), "blocks": (), "leftover": None})
    back, norms = _orthogonalize(gram)
    for a, b in pair_hints:
        if back[a][a] != 1 or back[b][b] != 1 \
                or any(back[a][k] for k in range(d) if k != a) \
                or any(back[b][k] for k in range(d) if k != b):
            raise CliffordConstructionError("hinted pair is not orthogonal")
    blocks, leftover = _plan_blocks(norms, pair_hints)

    doubled = False
    odd_root = None
    if leftover is not None:
        odd_root = exact_sqrt(norms[leftover])
        if odd_root is None:
            # no irreducible module over Q(i): append a matched auxiliary
            # direction and drop its gamma, doubling the module
            blocks.append((leftover, None, "aux"))
            doubled = True

    nblocks = len(blocks)
    size = 2 ** nblocks
    J = ExactMatrix.diag([rat(-1), rat(1)])
    eye2 = ExactMatrix.identity(2)

    def lift(mat, slot):
        out = None
        for t in range(nblocks):
            piece = mat if t == slot else (J if t < slot else eye2)
            out = piece if out is None else out.kron(piece)
        return out if out is not None else ExactMatrix.identity(1)

    pivot_gamma = {}
    form_factors = []
    for t, (a, b, kind) in enumerate(blocks):
        if kind == "same":
            b1, b2 = _pair_block(norms[a], norms[b])
        elif kind == "mixed":
            b1, b2 = _mixed_block(norms[a], norms[b])
        else:
            b1, b2 = _pair_block(norms[a], norms[a])
        pivot_gamma[a] = lift(b1, t)
        if b is not None:
            pivot_gamma[b] = lift(b2, t)
        form_factors.append(ExactMatrix.diag([rat(1), norms[a]]))

    if leftover is not None and not doubled:
        # single unpaired direction with square norm: i * sqrt(norm) times
        # the full parity chain anticommutes with every block generator
        parity = ExactMatrix.identity(1)
        for _ in range(nblocks):
            parity = parity.kron(J)
        pivot_gamma[leftover] = parity.scale((ZERO, odd_root))

    form = ExactMatrix.identity(1)
    for f in form_factors:
        form = form.kron(f)

    grading = None
    reason = None
    if leftover is not None or doubled:
        reason = "odd direction count"
    else:
        disc = rat(1)
        for n in norms:
            disc *= n
        if exact_sqrt(disc) is None:
            reason = "discriminant class %s is not a square" % squarefree_core(disc)
        else:
            grading = ExactMatrix.identity(1)
            for _ in range(nblocks):
                grading = grading.kron(J)

    gamma = []
    for j in range(d):
        g = ExactMatrix.zeros(size)
        for k in range(d):
            if back[j][k]:
                g = g + pivot_gamma[k].scale(back[j][k])
        gamma.append(g)

    pivot_data = {"norms": tuple(norms), "blocks": tuple(blocks),
                  "leftover": leftover}
    return CliffordModule(gram, gamma, grading, reason, form, doubled,
                          pivot_data)


def buildClifford(n):
    """Euclidean module: n gammas of size 2^floor(n/2), identity form."""
    if not 1 <= n <= 12:
        raise TooLarge("Euclidean Clifford size limit is 12 directions")
    gram = [[rat(1) if i == j else ZERO for j in range(n)] for i in range(n)]
    cl = buildCliffordFrame(gram)
    if cl.size <= 8:
        # the commutant solve is cubic in size^2; only affordable when small
        k = commutantDimension(cl)
        if k != 1:
            raise CliffordConstructionError("commutant dimension %d" % k)
    return cl


def commutantDimension(cl):
    """Dimension of {X : X gamma_a = gamma_a X for all a}, solved exactly."""
    n = cl.size
    ident = ExactMatrix.identity(n)
    rows = []
    for g in cl.gamma:
        op = g.kron(ident) - ident.kron(g.transpose())
        for i in range(op.nrows):
            rows.append(op.row(i))
    if not rows:
        return n * n
    stacked = ExactMatrix.from_rows(rows)
    return stacked.nullspace().ncols


# ----------------------------------------------------------------- spin rep

class RawStructure:
    """Bare (gram, structure constants) carrier for spinRepresentation
    when no matrix frame is involved (toy and abelian cases)."""

    def __init__(self, gram, f):
        self.dim = len(gram)
        self.gram = tuple(tuple(rat(c) for c in row) for row in gram)
        self._f = tuple(tuple(tuple(rat(c) for c in col) for col in row)
                        for row in f)
        gm = ExactMatrix.from_rows([[c for c in row] for row in self.gram])
        inv = gm.solve(ExactMatrix.identity(self.dim))
        if inv is None:
            raise BadStructureConstants("gram is singular")
        self.gramInverse = tuple(tuple(inv.get(i, j)[0] for j in range(self.dim))
                                 for i in range(self.dim))

    def bracketCoefficients(self, a, b):
        return self._f[a][b]


def _validate_structure(structure):
    d = structure.dim
    f = [[structure.bracketCoefficients(a, b) for b in range(d)]
         for a in range(d)]
    g = structure.gram
    for a in range(d):
        for b in range(d):
            if any(x + y for x, y in zip(f[a][b], f[b][a])):
                raise BadStructureConstants("brackets are not antisymmetric")
            for c in range(d):
                # invariance: <[a,b],c> + <b,[a,c]> = 0 (gives skewness)
                lhs = sum((f[a][b][e] * g[e][c] for e in range(d)
                           if f[a][b][e]), start=ZERO)
                rhs = sum((g[b][e] * f[a][c][e] for e in range(d)
                           if f[a][c][e]), start=ZERO)
                if lhs + rhs != 0:
                    raise BadStructureConstants("form is not invariant")
    # projected structures (ad^p) are deliberately non-Lie; they opt out
    if d <= 9 and getattr(structure, "requireJacobi", True):
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    acc = [ZERO] * d
                    for e in range(d):
                        if f[b][c][e]:
                            for x in range(d):
                                if f[a][e][x]:
                                    acc[x] += f[a][e][x] * f[b][c][e]
                        if f[c][a][e]:
                            for x in range(d):
                                if f[b][e][x]:
                                    acc[x] += f[b][e][x] * f[c][a][e]
                        if f[a][b][e]:
                            for x in range(d):
                                if f[c][e][x]:
                                    acc[x] += f[c][e][x] * f[a][b][e]
                    if any(acc):
                        raise BadStructureConstants("Jacobi identity fails")
    return f


def spinRepresentation(structure, cl):
    """ad(X_a) = (1/4) sum_{b,c} (G^-1)_{bc} c(X_b) c([X_a, X_c]).

    The contraction runs through the dual frame, reducing to the familiar
    orthonormal-basis formula when G = I; the factor order (Clifford of the
    basis vector first, bracket second) is the one that satisfies
    [ad(X), c(Y)] = c([X, Y]) under the minus sign convention.
    """
    d = structure.dim
    if cl.dim != d:
        raise DimensionMismatch("Clifford module has %d directions, "
                                "structure has %d" % (cl.dim, d))
    f = _validate_structure(structure)
    ginv = structure.gramInverse
    quarter = rat(1, 4)
    ads = []
    for a in range(d):
        acc = ExactMatrix.zeros(cl.size)
        for c in range(d):
            bracket = f[a][c]
            if not any(bracket):
                continue
            cbr = cl.cliffordOf(bracket)
            for b in range(d):
                w = ginv[b][c]
                if w:
                    acc = acc + (cl.gamma[b] * cbr).scale(w * quarter)
        ads.append(acc)
    return ads


# ---------------------------------------------------------------- pair split

class PStructure:
    """The p block with p-projected brackets: the structure behind ad^p.
    Not a Lie algebra (projection breaks Jacobi), which is the point."""

    requireJacobi = False

    def __init__(self, pframe):
        self.pframe = pframe
        self.dim = len(pframe.pIndices)
        self.gram = pframe.pGram
        self.gramInverse = pframe.pGramInverse

    def bracketCoefficients(self, a, b):
        return self.pframe.pBracketInP(a, b)


def hSpinAction(pframe, s_p, h_local):
    """Spin action on S_p of the h-frame direction with local index
    h_local: (1/4) sum (Gp^-1)_{bc} c(u_b) c([Y, u_c]); lands in p exactly
    because [h, p] is inside p."""
    d = len(pframe.pIndices)
    acc = ExactMatrix.zeros(s_p.size)
    ginv = pframe.pGramInverse
    quarter = rat(1, 4)
    for c in range(d):
        br = pframe.hBracketOnP(h_local, c)
        if not any(br):
            continue
        cbr = s_p.cliffordOf(br)
        for b in range(d):
            w = ginv[b][c]
            if w:
                acc = acc + (s_p.gamma[b] * cbr).scale(w * quarter)
    return acc


def spinorWeights(pair, pframe, s_p):
    """G-weights of the S_p basis vectors, read off the (diagonal) torus
    spin action."""
    rank = pair.g.rank
    cartan_local = [pframe.hIndices.index(p) for p in range(rank)]
    actions = [hSpinAction(pframe, s_p, cartan_local[p]) for p in range(rank)]
    for m in actions:
        for i in range(m.nrows):
            for j in range(m.ncols):
                if i != j and m.get(i, j) != (ZERO, ZERO):
                    raise CliffordConstructionError(
                        "torus spin action is not diagonal")
    weights = []
    for v in range(s_p.size):
        coords = []
        for p in range(rank):
            re, im = actions[p].get(v, v)
            if re != 0:
                raise CliffordConstructionError("torus eigenvalue not imaginary")
            coords.append(im)
        weights.append(tuple(coords))
    return weights


def _fix_grading_sign(pair, pframe, s_p):
    """Orient the S_p grading so the highest spinor weight (the rho-shift
    of the pair, in G coordinates) sits in the + eigenspace."""
    weights = spinorWeights(pair, pframe, s_p)
    target = pair.weightToG(pair.shift)
    hits = [v for v, w in enumerate(weights) if w == target]
    if len(hits) != 1:
        raise CliffordConstructionError("rho-shift spinor weight not unique")
    sign = s_p.grading.get(hits[0], hits[0])[0]
    return s_p if sign == 1 else s_p.withGradingSign(-1)


class SpinorEmbedding:
    """Cl(g)-module structure on S_h (x) S_p: h-directions act through
    c_h (x) grading_p, p-directions through 1 (x) c_p.  basisChange is the
    identity because this tensor model is the package's spinor model for
    pair computations; gammaFull is indexed like the ambient frame."""

    def __init__(self, pframe, s_h, s_p):
        self.pairFrame = pframe
        self.gramFull = pframe.frame.gram
        id_h = ExactMatrix.identity(s_h.size)
        gammas = [None] * pframe.frame.dim
        for local, a in enumerate(pframe.hIndices):
            gammas[a] = s_h.gamma[local].kron(s_p.grading)
        for local, a in enumerate(pframe.pIndices):
            gammas[a] = id_h.kron(s_p.gamma[local])
        self.gammaFull = tuple(gammas)
        self.size = s_h.size * s_p.size
        self.form = s_h.form.kron(s_p.form)
        self.basisChange = ExactMatrix.identity(self.size)
        ident = ExactMatrix.identity(self.size)
        for a in range(pframe.frame.dim):
            for b in range(a, pframe.frame.dim):
                if anticommutator(gammas[a], gammas[b]) \
                        != ident.scale(-2 * self.gramFull[a][b]):
                    raise CliffordConstructionError(
                        "tensor model broke a Clifford relation")


def splitCliffordForPair(pair):
    """(S_h, S_p, embedding) for an equal-rank pair.

    S_p is built with the root pairs sharing blocks (torus-diagonal) and
    its grading oriented by the rho shift; S_h covers the whole Cartan plus
    the kept root pairs.  The embedding realizes Cl(g) on S_h (x) S_p.
    """
    pframe = _structure.PairFrame(pair)
    hint_p = tuple((2 * i, 2 * i + 1) for i in range(len(pair.pRoots)))
    s_p = buildCliffordFrame(pframe.pGram, hint_p)
    if s_p.dim:
        if s_p.grading is None:
            raise CliffordConstructionError("p spinors must be graded")
        s_p = _fix_grading_sign(pair, pframe, s_p)
    kept_pairs = (len(pframe.hIndices) - pair.g.rank) // 2
    rank = pair.g.rank
    hint_h = tuple((rank + 2 * i, rank + 2 * i + 1) for i in range(kept_pairs))
    s_h = buildCliffordFrame(pframe.hGram, hint_h)
    return s_h, s_p, SpinorEmbedding(pframe, s_h, s_p)
