"""Dense exact matrices over the Gaussian rationals.

A matrix keeps two flat row-major lists of rationals, one per component;
the imaginary list is ``None`` while the matrix is real, which quarters the
work in the common all-real products.  Scalars cross the API boundary as
``(re, im)`` pairs of backend rationals.

Adjointness is always relative to an explicitly recorded Hermitian form S:
``A`` is skew-adjoint for S when  A^H S + S A = 0  and self-adjoint when
A^H S = S A.  No orthonormalization is ever performed, so every check stays
inside exact arithmetic.
"""

from .rationals import ZERO, ONE, rat, rat_from_str, rat_str
from . import matops
from .errors import DimensionMismatch


def gauss(re=0, im=0):
    """Coerce to a Gaussian rational pair."""
    return (rat(re), rat(im))


def gauss_str(z):
    re, im = z
    if not im:
        return rat_str(re)
    tail = "i" if abs(im) == 1 else rat_str(abs(im)) + "i"
    if not re:
        return ("-" if im < 0 else "") + tail
    return rat_str(re) + ("-" if im < 0 else "+") + tail


def gauss_parse(s):
    s = s.strip().replace(" ", "")
    if not s.endswith("i"):
        return (rat_from_str(s), ZERO)
    body = s[:-1]
    # split off a real part if one precedes the imaginary term
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            re = rat_from_str(body[:k])
            rest = body[k:]
            if rest in ("+", "-"):
                rest += "1"
            return (re, rat_from_str(rest))
    if body in ("", "+"):
        return (ZERO, ONE)
    if body == "-":
        return (ZERO, -ONE)
    return (ZERO, rat_from_str(body))


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _gdiv(a, b):
    nrm = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / nrm, (a[1] * b[0] - a[0] * b[1]) / nrm)


class ExactMatrix:
    __slots__ = ("nrows", "ncols", "re", "im")

    def __init__(self, nrows, ncols, re, im=None):
        self.nrows = nrows
        self.ncols = ncols
        self.re = re
        self.im = im  # None means identically real

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, nrows, ncols=None):
        if ncols is None:
            ncols = nrows
        return cls(nrows, ncols, [ZERO] * (nrows * ncols))

    @classmethod
    def identity(cls, n, scale=None):
        s = rat(1) if scale is None else rat(scale)
        re = [ZERO] * (n * n)
        for i in range(n):
            re[i * n + i] = s
        return cls(n, n, re)

    @classmethod
    def diag(cls, values):
        n = len(values)
        m = cls.zeros(n, n)
        im = None
        for i, v in enumerate(values):
            z = v if isinstance(v, tuple) else gauss(v)
            m.re[i * n + i] = z[0]
            if z[1]:
                if im is None:
                    im = [ZERO] * (n * n)
                im[i * n + i] = z[1]
        m.im = im
        return m

    @classmethod
    def from_rows(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        re = []
        im = []
        any_im = False
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            for v in row:
                z = v if isinstance(v, tuple) else gauss(v)
                re.append(rat(z[0]))
                im.append(rat(z[1]))
                if z[1]:
                    any_im = True
        return cls(nrows, ncols, re, im if any_im else None)

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        """entries: dict {(i, j): gaussian pair or rational}."""
        m = cls.zeros(nrows, ncols)
        im = None
        for (i, j), v in entries.items():
            z = v if isinstance(v, tuple) else gauss(v)
            m.re[i * ncols + j] = rat(z[0])
            if z[1]:
                if im is None:
                    im = [ZERO] * (nrows * ncols)
                im[i * ncols + j] = rat(z[1])
        m.im = im
        return m

    # -- entry access ---------------------------------------------------

    def get(self, i, j):
        p = i * self.ncols + j
        return (self.re[p], ZERO if self.im is None else self.im[p])

    def put(self, i, j, z):
        if not isinstance(z, tuple):
            z = gauss(z)
        p = i * self.ncols + j
        self.re[p] = rat(z[0])
        if z[1]:
            if self.im is None:
                self.im = [ZERO] * (self.nrows * self.ncols)
            self.im[p] = rat(z[1])
        elif self.im is not None:
            self.im[p] = ZERO

    def row(self, i):
        return [self.get(i, j) for j in range(self.ncols)]

    def column(self, j):
        return [self.get(i, j) for i in range(self.nrows)]

    # -- structure ------------------------------------------------------

    def _maybe_collapse(self):
        if self.im is not None and not any(self.im):
            self.im = None
        return self

    def copy(self):
        return ExactMatrix(self.nrows, self.ncols, list(self.re),
                           None if self.im is None else list(self.im))

    def is_zero(self):
        return not any(self.re) and (self.im is None or not any(self.im))

    def is_real(self):
        return self.im is None or not any(self.im)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("ExactMatrix is unhashable")

    def scalar_of_identity(self):
        """Return z with self == z * I, or None."""
        if self.nrows != self.ncols or self.nrows == 0:
            return None
        z = self.get(0, 0)
        n = self.ncols
        for i in range(self.nrows):
            for j in range(n):
                want = z if i == j else (ZERO, ZERO)
                if self.get(i, j) != want:
                    return None
        return z

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("add: %dx%d vs %dx%d" % (
                self.nrows, self.ncols, other.nrows, other.ncols))
        re = [a + b for a, b in zip(self.re, other.re)]
        if self.im is None and other.im is None:
            im = None
        else:
            si = self.im or [ZERO] * len(self.re)
            oi = other.im or [ZERO] * len(other.re)
            im = [a + b for a, b in zip(si, oi)]
        return ExactMatrix(self.nrows, self.ncols, re, im)._maybe_collapse()

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix(self.nrows, self.ncols, [-a for a in self.re],
                           None if self.im is None else [-a for a in self.im])

    def scale(self, z):
        if not isinstance(z, tuple):
            z = gauss(z)
        zr, zi = rat(z[0]), rat(z[1])
        if not zi:
            re = [zr * a for a in self.re]
            im = None if self.im is None else [zr * a for a in self.im]
            return ExactMatrix(self.nrows, self.ncols, re, im)
        si = self.im or [ZERO] * len(self.re)
        re = [zr * a - zi * b for a, b in zip(self.re, si)]
        im = [zr * b + zi * a for a, b in zip(self.re, si)]
        return ExactMatrix(self.nrows, self.ncols, re, im)._maybe_collapse()

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self._matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def _matmul(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch("mul: %dx%d @ %dx%d" % (
                self.nrows, self.ncols, other.nrows, other.ncols))
        n, m, k = self.nrows, self.ncols, other.ncols
        if self.im is None and other.im is None:
            return ExactMatrix(n, k, matops.mul_real(self.re, other.re, n, m, k, ZERO))
        if self.im is None:
            re = matops.mul_real(self.re, other.re, n, m, k, ZERO)
            im = matops.mul_real(self.re, other.im, n, m, k, ZERO)
            return ExactMatrix(n, k, re, im)._maybe_collapse()
        if other.im is None:
            re = matops.mul_real(self.re, other.re, n, m, k, ZERO)
            im = matops.mul_real(self.im, other.re, n, m, k, ZERO)
            return ExactMatrix(n, k, re, im)._maybe_collapse()
        re, im = matops.mul_cplx(self.re, self.im, other.re, other.im, n, m, k, ZERO)
        return ExactMatrix(n, k, re, im)._maybe_collapse()

    def kron(self, other):
        n1, m1, n2, m2 = self.nrows, self.ncols, other.nrows, other.ncols
        out = ExactMatrix.zeros(n1 * n2, m1 * m2)
        im = None
        for i1 in range(n1):
            for j1 in range(m1):
                a = self.get(i1, j1)
                if not a[0] and not a[1]:
                    continue
                for i2 in range(n2):
                    for j2 in range(m2):
                        b = other.get(i2, j2)
                        if not b[0] and not b[1]:
                            continue
                        zr, zi = _gmul(a, b)
                        p = (i1 * n2 + i2) * (m1 * m2) + (j1 * m2 + j2)
                        out.re[p] = zr
                        if zi:
                            if im is None:
                                im = [ZERO] * (n1 * n2 * m1 * m2)
                            im[p] = zi
        out.im = im
        return out

    def transpose(self):
        n, m = self.nrows, self.ncols
        re = [ZERO] * (n * m)
        im = None if self.im is None else [ZERO] * (n * m)
        for i in range(n):
            for j in range(m):
                re[j * n + i] = self.re[i * m + j]
                if im is not None:
                    im[j * n + i] = self.im[i * m + j]
        return ExactMatrix(m, n, re, im)

    def conjugate(self):
        if self.im is None:
            return self.copy()
        return ExactMatrix(self.nrows, self.ncols, list(self.re),
                           [-a for a in self.im])._maybe_collapse()

    def ctranspose(self):
        return self.conjugate().transpose()

    def trace(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("trace of non-square")
        tr = ZERO
        ti = ZERO
        n = self.ncols
        for i in range(n):
            tr += self.re[i * n + i]
            if self.im is not None:
                ti += self.im[i * n + i]
        return (tr, ti)

    # -- adjointness w.r.t. a Hermitian form ---------------------------

    def is_skewadjoint_wrt(self, form):
        return (self.ctranspose() * form + form * self).is_zero()

    def is_selfadjoint_wrt(self, form):
        return (self.ctranspose() * form - form * self).is_zero()

    # -- elimination ----------------------------------------------------

    def _rows_for_rref(self):
        n, m = self.nrows, self.ncols
        rr = [list(self.re[i * m:(i + 1) * m]) for i in range(n)]
        if self.im is None:
            ri = [[ZERO] * m for _ in range(n)]
        else:
            ri = [list(self.im[i * m:(i + 1) * m]) for i in range(n)]
        return rr, ri

    def rref(self):
        """Return (reduced matrix, pivot column list)."""
        rr, ri = self._rows_for_rref()
        pivots = matops.rref_cplx(rr, ri, self.nrows, self.ncols, ZERO, ONE)
        re = [x for row in rr for x in row]
        im = [x for row in ri for x in row]
        out = ExactMatrix(self.nrows, self.ncols, re, im)._maybe_collapse()
        return out, pivots

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Columns spanning {x : self x = 0}, as an ncols x d matrix."""
        red, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        out = ExactMatrix.zeros(self.ncols, len(free))
        for c, j in enumerate(free):
            out.put(j, c, (ONE, ZERO))
            for r, pj in enumerate(pivots):
                v = red.get(r, j)
                out.put(pj, c, (-v[0], -v[1]))
        return out

    def solve(self, rhs):
        """Solve self @ x = rhs (rhs a matrix); None when inconsistent."""
        if rhs.nrows != self.nrows:
            raise DimensionMismatch("solve: rhs has %d rows, need %d" % (
                rhs.nrows, self.nrows))
        aug = ExactMatrix.zeros(self.nrows, self.ncols + rhs.ncols)
        for i in range(self.nrows):
            for j in range(self.ncols):
                aug.put(i, j, self.get(i, j))
            for j in range(rhs.ncols):
                aug.put(i, self.ncols + j, rhs.get(i, j))
        red, pivots = aug.rref()
        for p in pivots:
            if p >= self.ncols:
                return None
        x = ExactMatrix.zeros(self.ncols, rhs.ncols)
        for r, pj in enumerate(pivots):
            for j in range(rhs.ncols):
                x.put(pj, j, red.get(r, self.ncols + j))
        return x

    # -- serialization ----------------------------------------------------

    def to_strings(self):
        return [[gauss_str(self.get(i, j)) for j in range(self.ncols)]
                for i in range(self.nrows)]

    @classmethod
    def from_strings(cls, rows):
        return cls.from_rows([[gauss_parse(s) for s in row] for row in rows])

    def __repr__(self):
        if self.nrows * self.ncols > 64:
            return "<ExactMatrix %dx%d>" % (self.nrows, self.ncols)
        return "ExactMatrix(%r)" % (self.to_strings(),)


def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a


def block_diag(mats):
    n = sum(m.nrows for m in mats)
    k = sum(m.ncols for m in mats)
    out = ExactMatrix.zeros(n, k)
    r = c = 0
    for m in mats:
        for i in range(m.nrows):
            for j in range(m.ncols):
                v = m.get(i, j)
                if v[0] or v[1]:
                    out.put(r + i, c + j, v)
        r += m.nrows
        c += m.ncols
    return out


def hstack(mats):
    n = mats[0].nrows
    k = sum(m.ncols for m in mats)
    out = ExactMatrix.zeros(n, k)
    c = 0
    for m in mats:
        if m.nrows != n:
            raise DimensionMismatch("hstack row counts differ")
        for i in range(n):
            for j in range(m.ncols):
                v = m.get(i, j)
                if v[0] or v[1]:
                    out.put(i, c + j, v)
        c += m.ncols
    return out
