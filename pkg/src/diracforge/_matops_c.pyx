# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the ``_matops_py`` kernels.

Entries stay Python objects (Fraction or mpq), so the arithmetic is still
exact; compiling only strips interpreter overhead off the loop bookkeeping.
Any semantic change here must land in ``_matops_py`` too, step for step.
"""

BACKEND_NAME = "cython"


def mul_real(list a, list b, Py_ssize_t n, Py_ssize_t m, Py_ssize_t k, zero):
    """(n x m) @ (m x k) over one scalar component. Flat row-major lists."""
    cdef list out = [zero] * (n * k)
    cdef Py_ssize_t i, t, j, arow, orow, brow
    cdef object x, y
    for i in range(n):
        arow = i * m
        orow = i * k
        for t in range(m):
            x = a[arow + t]
            if not x:
                continue
            brow = t * k
            for j in range(k):
                y = b[brow + j]
                if y:
                    out[orow + j] += x * y
    return out


def mul_cplx(list ar, list ai, list br, list bi,
             Py_ssize_t n, Py_ssize_t m, Py_ssize_t k, zero):
    """Fused complex product; returns (real, imag) flat lists."""
    cdef list outr = [zero] * (n * k)
    cdef list outi = [zero] * (n * k)
    cdef Py_ssize_t i, t, j, arow, orow, brow, p
    cdef object xr, xi, yr, yi
    for i in range(n):
        arow = i * m
        orow = i * k
        for t in range(m):
            xr = ar[arow + t]
            xi = ai[arow + t]
            if not xr and not xi:
                continue
            brow = t * k
            for j in range(k):
                yr = br[brow + j]
                yi = bi[brow + j]
                if yr or yi:
                    p = orow + j
                    outr[p] += xr * yr - xi * yi
                    outi[p] += xr * yi + xi * yr
    return outr, outi


def rref_cplx(list rr, list ri, Py_ssize_t nrows, Py_ssize_t ncols,
              zero, one):
    """Reduced row echelon form over Q(i), in place on row lists.

    rr, ri are lists of row lists (real and imaginary parts).  Returns the
    list of pivot column indices.  Division by a Gaussian rational uses the
    conjugate over the squared norm, so everything stays exact.
    """
    cdef list pivots = []
    cdef Py_ssize_t row = 0
    cdef Py_ssize_t col, r, j, sel
    cdef list rrow, irow, trow, tirow
    cdef object pr, pi, nrm, fr, fi, xr, xi, cr, ci
    for col in range(ncols):
        sel = -1
        for r in range(row, nrows):
            if (<list>rr[r])[col] or (<list>ri[r])[col]:
                sel = r
                break
        if sel < 0:
            continue
        if sel != row:
            rr[row], rr[sel] = rr[sel], rr[row]
            ri[row], ri[sel] = ri[sel], ri[row]
        rrow = <list>rr[row]
        irow = <list>ri[row]
        pr = rrow[col]
        pi = irow[col]
        nrm = pr * pr + pi * pi
        # multiply the row by conj(pivot)/|pivot|^2
        fr = pr / nrm
        fi = -pi / nrm
        for j in range(col, ncols):
            xr = rrow[j]
            xi = irow[j]
            if xr or xi:
                rrow[j] = xr * fr - xi * fi
                irow[j] = xr * fi + xi * fr
        rrow[col] = one
        irow[col] = zero
        for r in range(nrows):
            if r == row:
                continue
            trow = <list>rr[r]
            tirow = <list>ri[r]
            cr = trow[col]
            ci = tirow[col]
            if not cr and not ci:
                continue
            for j in range(col, ncols):
                xr = rrow[j]
                xi = irow[j]
                if xr or xi:
                    trow[j] = trow[j] - (cr * xr - ci * xi)
                    tirow[j] = tirow[j] - (cr * xi + ci * xr)
            trow[col] = zero
            tirow[col] = zero
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return pivots
