"""Exact linear algebra over Q(i) on sparse vectors.

Vectors are dicts mapping basis symbols to nonzero Scalars.  Rank uses
fraction-free (Bareiss) elimination on rows scaled to Gaussian integers;
the incremental span used by the probes keeps a reduced echelon form.
"""

from math import lcm

from .scalar import ONE, ZERO, Scalar


def _denominator(c):
    return lcm(c.re.denominator, c.im.denominator)


def _integral_row(row):
    d = 1
    for c in row:
        if c:
            d = lcm(d, _denominator(c))
    return [c * d for c in row] if d != 1 else list(row)


def bareiss_rank(rows):
    """Rank of a dense matrix (list of lists of Scalars)."""
    m = [_integral_row(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    prev = ONE
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - f * row_p[c]) / prev
            row_r[col] = ZERO
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def dense(vectors, columns):
    return [[v.get(c, ZERO) for c in columns] for v in vectors]


def sparse_rank(vectors):
    cols = sorted({k for v in vectors for k in v}, key=repr)
    return bareiss_rank(dense(vectors, cols))


class EchelonBasis:
    """Reduced echelon basis of a growing subspace.

    ``priority`` orders candidate pivot columns (smallest first).  Putting
    the columns outside a window first makes the rows whose pivot lies
    inside the window a basis of the intersection with that window.
    """

    def __init__(self, priority=None):
        self.priority = priority or (lambda sym: (0, repr(sym)))
        self.rows = {}  # pivot symbol -> row (pivot coefficient 1)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        v = dict(vec)
        for piv, row in self.rows.items():
            c = v.get(piv)
            if c:
                for k, a in row.items():
                    nv = v.get(k, ZERO) - c * a
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec):
        """Insert vec; returns True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v, key=self.priority)
        inv = v[piv].inv()
        v = {k: a * inv for k, a in v.items()}
        # keep the basis fully reduced
        for p, row in self.rows.items():
            c = row.get(piv)
            if c:
                for k, a in v.items():
                    nv = row.get(k, ZERO) - c * a
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[piv] = v
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    def basis(self):
        """Rows in canonical (pivot priority) order."""
        return [dict(self.rows[p]) for p in sorted(self.rows, key=self.priority)]

    def basis_within(self, allowed):
        """Rows whose pivot lies in ``allowed`` (see class docstring)."""
        return [dict(self.rows[p]) for p in sorted(self.rows, key=self.priority) if p in allowed]


def scalar_multiple(v, w):
    """c with v == c*w, or None (w must be nonzero)."""
    if not w:
        raise ValueError("reference vector is zero")
    if set(v) != set(w):
        return None if v else (ZERO if w else None)
    k = next(iter(w))
    c = v[k] / w[k]
    for sym, a in w.items():
        if v[sym] != c * a:
            return None
    return c


def vec_add(*vecs, scales=None):
    out = {}
    for idx, v in enumerate(vecs):
        s = ONE if scales is None else Scalar.coerce(scales[idx])
        if not s:
            continue
        for k, a in v.items():
            nv = out.get(k, ZERO) + (a if s == ONE else a * s)
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out
