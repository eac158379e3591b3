"""Cubic Dirac operators and their exact spectral checks.

All sums over the frame are dual contracted: sum_i X_i (x) X_i in an
orthonormal basis becomes sum_{a,b} (G^-1)_{ab} X_a (x) X_b here, so the
operators are basis independent without ever leaving Q(i).

The square identities are exact matrix statements and are checked as
such.  The full operator satisfies D^2 = Cas_V + |rho|^2 with the Casimir
acting through pi alone; the report of verifyKostantIdentity audits this
against the tensor-diagonal reading of the Casimir and against the two
candidate values for the affine constant (they agree by the strange
formula, which is part of the audit's point).
"""

import itertools

from .characters import FormalCharacter, decomposeCharacter, weylDimension
from .clifford import (PStructure, hSpinAction, spinRepresentation,
                       spinorWeights, splitCliffordForPair)
from .errors import (DimensionMismatch, DiracforgeError, NotScalar,
                     SpectralMismatch, TooLarge)
from .exactmat import ExactMatrix, commutator
from .rationals import ZERO, rat, rat_str
from .reps import buildLieRep

RELATIVE_SIZE_LIMIT = 512


class BadOperator(DiracforgeError):
    """An operator failed one of its construction-time invariants."""


def _is_selfadjoint_wrt(m, form):
    return m.ctranspose() * form == form * m


def _scalar_of(mat):
    """The scalar when mat is exactly a real multiple of the identity."""
    n = mat.nrows
    s = mat.get(0, 0)
    if s[1] != 0:
        return None
    for i in range(n):
        for j in range(n):
            if mat.get(i, j) != (s if i == j else (ZERO, ZERO)):
                return None
    return s[0]


class DiracOperator:
    """matrix on V (x) S; grading (or None) anticommutes with it; form is
    the positive Hermitian form it is self-adjoint for; meta records what
    was built."""

    def __init__(self, matrix, grading, form, meta):
        self.matrix = matrix
        self.grading = grading
        self.form = form
        self.meta = meta
        if not _is_selfadjoint_wrt(matrix, form):
            raise BadOperator("operator is not self-adjoint for the form")
        if grading is not None:
            anti = grading * matrix + matrix * grading
            if anti != ExactMatrix.zeros(matrix.nrows):
                raise BadOperator("operator is not odd for the grading")

    def square(self):
        return self.matrix * self.matrix

    def kernel(self):
        return self.matrix.nullspace()


def cubicDirac(rep, cl, q):
    """D^q = sum (pi(X_i) (x) c(X_i) + q (x) ad(X_i) c(X_i)), contracted
    through the dual frame of rep's gram; q = 1/3 is the cubic operator."""
    frame = rep.frame
    if cl.dim != frame.dim:
        raise DimensionMismatch("Clifford module has %d directions, frame %d"
                                % (cl.dim, frame.dim))
    if cl.gram != frame.gram:
        raise DimensionMismatch("Clifford gram differs from the frame gram")
    q = rat(q)
    ginv = frame.gramInverse
    ads = spinRepresentation(frame, cl)
    n = rep.dimension * cl.size
    idv = ExactMatrix.identity(rep.dimension)
    total = ExactMatrix.zeros(n)
    for a in range(frame.dim):
        spin_part = ExactMatrix.zeros(cl.size)
        cli_part = ExactMatrix.zeros(cl.size)
        for b in range(frame.dim):
            w = ginv[a][b]
            if w:
                cli_part = cli_part + cl.gamma[b].scale(w)
        if q:
            spin_part = ads[a] * cli_part
        total = total + rep.pi[a].kron(cli_part) \
            + idv.kron(spin_part).scale(q)
    grading = None
    if cl.grading is not None:
        grading = idv.kron(cl.grading)
    form = rep.form.kron(cl.form)
    meta = {"lambda": rep.lam, "q": q, "relative": False}
    return DiracOperator(total, grading, form, meta)


def piCasimir(rep):
    """-sum (G^-1)_{ab} pi(X_a) pi(X_b); scalar <lam, lam + 2 rho> on an
    irreducible."""
    frame = rep.frame
    ginv = frame.gramInverse
    cas = ExactMatrix.zeros(rep.dimension)
    for a in range(frame.dim):
        for b in range(frame.dim):
            w = ginv[a][b]
            if w:
                cas = cas - (rep.pi[a] * rep.pi[b]).scale(w)
    return cas


def _adjoint_trace_24th(rs):
    """sum over simple factors of dim(factor) * <theta, theta + 2 rho>,
    divided by 24; the strange formula makes this |rho|^2."""
    total = ZERO
    rho2 = rs.innerProduct(rs.rho, rs.rho)
    # group positive roots by factor via their support
    owner = []
    for bi, (fam, rank) in enumerate(rs.factors):
        owner.extend([bi] * rank)
    by_factor = {}
    for beta in rs.positiveRoots:
        support = [p for p, c in enumerate(beta) if c]
        by_factor.setdefault(owner[support[0]], []).append(beta)
    for bi, roots in by_factor.items():
        theta = max(roots, key=lambda b: rs.innerProduct(b, rs.rho))
        cas = rs.innerProduct(theta, theta) \
            + 2 * rs.innerProduct(theta, rs.rho)
        dim_f = rs.factors[bi][1] + 2 * len(roots)
        total += rat(dim_f) * cas
    return total / 24, rho2


def verifyKostantIdentity(rep, cl):
    """Exact square identity for the full cubic operator.

    Hard-fails (NotScalar) unless D^2 is an exact scalar; reports the
    scalar against |lam + rho|^2 and audits the affine constant under the
    pi-only and tensor-diagonal Casimir readings."""
    rs = rep.system
    op = cubicDirac(rep, cl, rat(1, 3))
    sq = op.square()
    scalar = _scalar_of(sq)
    if scalar is None:
        raise NotScalar("D^2 is not scalar for lambda = %s" % (rep.lam,))
    shifted = tuple(l + r for l, r in zip(rep.lam, rs.rho))
    expected = rs.innerProduct(shifted, shifted)

    n = sq.nrows
    ident = ExactMatrix.identity(n)
    cas_v = piCasimir(rep)
    pi_only = sq - cas_v.kron(ExactMatrix.identity(cl.size))
    pi_const = _scalar_of(pi_only)

    ads = spinRepresentation(rep.frame, cl)
    ginv = rep.frame.gramInverse
    idv = ExactMatrix.identity(rep.dimension)
    deltas = [rep.pi[a].kron(ExactMatrix.identity(cl.size))
              + idv.kron(ads[a]) for a in range(rep.frame.dim)]
    diag_cas = ExactMatrix.zeros(n)
    for a in range(rep.frame.dim):
        for b in range(rep.frame.dim):
            w = ginv[a][b]
            if w:
                diag_cas = diag_cas - (deltas[a] * deltas[b]).scale(w)
    diag_const = _scalar_of(sq - diag_cas)

    trace_24th, rho2 = _adjoint_trace_24th(rs)
    empirical = pi_const if pi_const is not None else diag_const
    matched = []
    if empirical is not None:
        if empirical == rho2:
            matched.append("rhoNormSquared")
        if empirical == trace_24th:
            matched.append("twelfthAdjointTrace")
    return {
        "isScalarPerIsotypic": True,
        "scalars": {",".join(rat_str(c) for c in rep.lam): rat_str(scalar)},
        "scalar": scalar,
        "expected": expected,
        "scalarMatches": scalar == expected,
        "readings": {
            "piOnly": rat_str(pi_const) if pi_const is not None else "failure",
            "tensorDiagonal": rat_str(diag_const)
                              if diag_const is not None else "failure",
        },
        "candidates": {
            "rhoNormSquared": rat_str(rho2),
            "twelfthAdjointTrace": rat_str(trace_24th),
        },
        "affineConstant": rat_str(empirical)
                          if empirical is not None else "failure",
        "matchedCandidates": matched,
    }


def qSweepReport(rep, cl, qs=(rat(1, 3), rat(1, 2), rat(0), rat(1))):
    """Whether (D^q)^2 is scalar for each q; scalar only at 1/3 for
    nonabelian systems at regular weights.  Report, never an assertion."""
    out = {}
    for q in qs:
        sq = cubicDirac(rep, cl, q).square()
        s = _scalar_of(sq)
        out[rat_str(rat(q))] = rat_str(s) if s is not None else "non-scalar"
    return out


# ------------------------------------------------------------ relative case

class RelativePieces:
    """Everything the relative operator and its checks share: the rep,
    the pair frame, the p spinors, and the H-action on V (x) S_p."""

    def __init__(self, pair, lam):
        self.pair = pair
        self.rep = buildLieRep(pair.g, lam)
        s_h, s_p, emb = splitCliffordForPair(pair)
        self.s_p = s_p
        self.pframe = emb.pairFrame
        if self.rep.dimension * s_p.size > RELATIVE_SIZE_LIMIT:
            raise TooLarge("V (x) S_p exceeds the desk-scale limit")
        self.idv = ExactMatrix.identity(self.rep.dimension)
        self.ids = ExactMatrix.identity(s_p.size)
        self.spin_weights = spinorWeights(pair, self.pframe, s_p) \
            if s_p.dim else [tuple(ZERO for _ in range(pair.g.rank))]

    def hAction(self, local):
        """pi(Y) (x) 1 + 1 (x) spin(Y) for the local-th h direction."""
        a = self.pframe.hIndices[local]
        spin = hSpinAction(self.pframe, self.s_p, local) if self.s_p.dim \
            else ExactMatrix.zeros(1)
        return self.rep.pi[a].kron(self.ids) + self.idv.kron(spin)

    def tensorHWeights(self):
        """H-weight of each tensor basis vector, row-major V x S_p."""
        pair = self.pair
        out = []
        for wv in self.rep.weights:
            base = pair.weightToH(wv)
            for ws in self.spin_weights:
                spin_h = pair.weightToH(ws)
                out.append(tuple(a + b for a, b in zip(base, spin_h)))
        return out

    def raisingOps(self):
        """One raising operator per kept root pair of h."""
        ops = []
        rank = self.pair.g.rank
        half = rat(1, 2)
        for local, a in enumerate(self.pframe.hIndices):
            if a < rank or self.pframe.frame.names[a][0] != "A":
                continue
            ea = self.hAction(local)
            eb = self.hAction(local + 1)
            ops.append(ea.scale(half) + eb.scale((ZERO, -half)))
        return ops


def relativeCubicDirac(pair, lam, pieces=None):
    """D over the p block only: sum (pi (x) c + 1 (x) (1/3) ad^p c),
    dual contracted; graded by the p spinor grading; H-equivariance is
    checked exactly."""
    rp = pieces if pieces is not None else RelativePieces(pair, lam)
    rep, s_p, pframe = rp.rep, rp.s_p, rp.pframe
    n = rep.dimension * s_p.size
    total = ExactMatrix.zeros(n)
    if s_p.dim:
        ads = spinRepresentation(PStructure(pframe), s_p)
        ginv = pframe.pGramInverse
        third = rat(1, 3)
        for li, a in enumerate(pframe.pIndices):
            cli = ExactMatrix.zeros(s_p.size)
            for lj in range(len(pframe.pIndices)):
                w = ginv[li][lj]
                if w:
                    cli = cli + s_p.gamma[lj].scale(w)
            total = total + rep.pi[a].kron(cli) \
                + rp.idv.kron(ads[li] * cli).scale(third)
    grading = rp.idv.kron(s_p.grading) if s_p.dim \
        else ExactMatrix.identity(n)
    form = rep.form.kron(s_p.form)
    meta = {"lambda": rep.lam, "q": rat(1, 3), "relative": True}
    op = DiracOperator(total, grading, form, meta)
    zero = ExactMatrix.zeros(n)
    for local in range(len(pframe.hIndices)):
        if commutator(total, rp.hAction(local)) != zero:
            raise BadOperator("relative operator is not H-equivariant")
    return op


def spectralCheckRelative(pair, lam):
    """Blockwise exact check: D^2 acts on each H-isotypic W_mu as
    |lam + rho_G|^2 - |mu + rho_H|^2.  Returns the block report and the
    kernel candidates."""
    rp = RelativePieces(pair, lam)
    op = relativeCubicDirac(pair, lam, rp)
    sq = op.square()
    n = sq.nrows
    g, h = pair.g, pair.h

    hweights = rp.tensorHWeights()
    entries = {}
    for w in hweights:
        entries[w] = entries.get(w, 0) + 1
    isotypics = decomposeCharacter(FormalCharacter(h, entries)).entries

    shifted = tuple(l + r for l, r in zip(rp.rep.lam, g.rho))
    lam_norm = g.innerProduct(shifted, shifted)
    raising = rp.raisingOps()

    blocks = []
    candidates = []
    total_dim = 0
    for mu in sorted(isotypics):
        mult = isotypics[mu]
        total_dim += mult * weylDimension(h, mu)
        mu_shift = tuple(m + r for m, r in zip(mu, h.rho))
        expect = lam_norm - h.innerProduct(mu_shift, mu_shift)
        idx = [i for i, w in enumerate(hweights) if w == mu]
        stack = []
        for e in raising:
            for r in range(n):
                stack.append([e.get(r, c) for c in idx])
        if stack:
            hw = ExactMatrix.from_rows(stack).nullspace()
            vecs = [[hw.get(r, k) for r in range(len(idx))]
                    for k in range(hw.ncols)]
        else:
            vecs = [[(rat(1) if r == t else ZERO, ZERO)
                     for r in range(len(idx))] for t in range(len(idx))]
        if len(vecs) != mult:
            raise SpectralMismatch(
                "isotypic multiplicity %d but %d highest weight vectors"
                % (mult, len(vecs)))
        for coef in vecs:
            full = [(ZERO, ZERO)] * n
            for c, i in zip(coef, idx):
                full[i] = c
            for r in range(n):
                acc = (ZERO, ZERO)
                for i in idx:
                    z = _mulz(sq.get(r, i), full[i])
                    acc = (acc[0] + z[0], acc[1] + z[1])
                if acc != _mulz((expect, ZERO), full[r]):
                    raise SpectralMismatch(
                        "D^2 is not the predicted scalar on mu = %s" % (mu,))
        blocks.append({"mu": mu, "multiplicity": mult,
                       "scalar": expect, "match": True})
        if expect == 0:
            candidates.append(mu)
    if total_dim != n:
        raise SpectralMismatch("isotypic dimensions do not add up")
    return {"lambda": rp.rep.lam, "blocks": blocks,
            "kernelCandidates": candidates}


def _mulz(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _coordinate_ball(rs, norm_target):
    """Dominant integral lam with |lam + rho|^2 = norm_target, via the
    Cauchy-Schwarz coordinate bound |v_i| <= sqrt(target (G^-1)_ii)."""
    rank = rs.rank
    gm = ExactMatrix.from_rows([[rs.gram[i][j] for j in range(rank)]
                                for i in range(rank)])
    ginv = gm.solve(ExactMatrix.identity(rank))
    out = []
    if norm_target < 0:
        return out
    bounds = []
    for i in range(rank):
        cap = norm_target * ginv.get(i, i)[0]
        b = 0
        while rat(b * b) <= cap:
            b += 1
        bounds.append(b)
    axes = [range(-b, b + 1) for b in bounds]
    for shifted in itertools.product(*axes):
        v = tuple(rat(c) for c in shifted)
        if rs.innerProduct(v, v) != norm_target:
            continue
        lam = tuple(c - r for c, r in zip(v, rs.rho))
        if rs.isDominant(lam) and rs.isIntegral(lam):
            out.append(lam)
    return sorted(out)


def kernelIndex(pair, w_character):
    """Index of the Dirac operator family against a finite H-character:
    for each candidate lambda on the norm sphere of each summand, the
    graded kernel's H-multiplicities are counted exactly.  Returns a
    FormalCharacter over G in the irreducible basis."""
    h = pair.h
    if isinstance(w_character, FormalCharacter):
        summands = dict(decomposeCharacter(w_character).entries)
    else:
        summands = {h.weight(k): int(v) for k, v in dict(w_character).items()}
    result = {}
    for mu, mult in summands.items():
        mu = h.weight(mu)
        mu_shift = tuple(m + r for m, r in zip(mu, h.rho))
        target = h.innerProduct(mu_shift, mu_shift)
        for lam in _coordinate_ball(pair.g, target):
            plus, minus = _graded_kernel_multiplicity(pair, lam, mu)
            coef = mult * (plus - minus)
            if coef:
                result[lam] = result.get(lam, 0) + coef
    result = {k: v for k, v in result.items() if v}
    return FormalCharacter(pair.g, result, basis=FormalCharacter.IRREDUCIBLE)


def _graded_kernel_multiplicity(pair, lam, mu):
    """Multiplicity of the H-irreducible mu in ker D^+ and ker D^-."""
    rp = RelativePieces(pair, lam)
    op = relativeCubicDirac(pair, lam, rp)
    n = op.matrix.nrows
    hweights = rp.tensorHWeights()
    raising = rp.raisingOps()
    out = []
    for sign in (1, -1):
        idx = [i for i, w in enumerate(hweights)
               if w == mu and op.grading.get(i, i)[0] == sign]
        if not idx:
            out.append(0)
            continue
        stack = []
        for r in range(n):
            stack.append([op.matrix.get(r, c) for c in idx])
        for e in raising:
            for r in range(n):
                stack.append([e.get(r, c) for c in idx])
        out.append(ExactMatrix.from_rows(stack).nullspace().ncols)
    return out[0], out[1]
