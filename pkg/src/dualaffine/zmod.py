"""Linear algebra over the ring Z/m.

Vectors are tuples of ints in ``[0, m)`` and act as row vectors.  A
submodule of ``(Z/m)^k`` is kept as a matrix in Howell normal form: an
echelon form whose pivots divide ``m``, whose entries above each pivot are
reduced, and which satisfies the Howell property

    for every row ``r`` with pivot ``p``, ``(m // p) * r`` lies in the span
    of the rows below ``r``.

The Howell property is what makes the naive top-down reduction of a vector
canonical over a ring with zero divisors, and it is also what lets kernels
and solutions be read off an augmented form (see :func:`left_kernel` and
:func:`solve`).
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    # s*a + t*b == g over the integers
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _combine(s: int, u: Vector, t: int, v: Vector, m: int) -> Vector:
    return tuple((s * x + t * y) % m for x, y in zip(u, v))


def _scale(c: int, u: Vector, m: int) -> Vector:
    return tuple((c * x) % m for x in u)


def unit_normalizer(a: int, m: int) -> int:
    """Return a unit ``u`` of Z/m with ``u * a == gcd(a, m) (mod m)``."""
    g = gcd(a, m)
    if m == 1:
        return 0
    mm = m // g
    a1 = (a // g) % mm
    u0 = pow(a1, -1, mm) if mm > 1 else 0
    for k in range(g):
        u = u0 + k * mm
        if gcd(u, m) == 1:
            return u % m
    raise ArithmeticError(f"no unit normalizes {a} modulo {m}")  # unreachable


def howell_form(rows: Iterable[Sequence[int]], m: int, ncols: int) -> Matrix:
    """Howell normal form of the row span of ``rows`` in ``(Z/m)^ncols``.

    Zero rows are dropped, so the zero submodule is the empty tuple.  The
    form is unique: two generating sets span the same submodule exactly when
    their Howell forms are equal.
    """
    work = []
    for r in rows:
        r = tuple(int(x) % m for x in r)
        if len(r) != ncols:
            raise ValueError(f"row {r} does not have {ncols} columns")
        if any(r):
            work.append(r)
    out: list[Vector] = []
    pivots: list[int] = []
    for c in range(ncols):
        pivot = None
        rest = []
        for r in work:
            if r[c] == 0:
                rest.append(r)
            elif pivot is None:
                pivot = r
            else:
                g, s, t = _egcd(pivot[c], r[c])
                u, v = -(r[c] // g), pivot[c] // g
                pivot, other = _combine(s, pivot, t, r, m), _combine(u, pivot, v, r, m)
                if any(other):
                    rest.append(other)
        if pivot is not None:
            pivot = _scale(unit_normalizer(pivot[c], m), pivot, m)
            annihilated = _scale(m // pivot[c], pivot, m)
            if any(annihilated):
                rest.append(annihilated)
            out.append(pivot)
            pivots.append(c)
        work = rest
    for i, c in enumerate(pivots):
        p = out[i][c]
        for j in range(i):
            q = out[j][c] // p
            if q:
                out[j] = _combine(1, out[j], -q, out[i], m)
    return tuple(out)


def pivot_columns(form: Matrix) -> list[tuple[int, int]]:
    """``(column, pivot value)`` for each row of a Howell form."""
    result = []
    for row in form:
        for c, x in enumerate(row):
            if x:
                result.append((c, x))
                break
    return result


def reduce_vector(v: Sequence[int], form: Matrix, m: int) -> Vector:
    """Canonical representative of ``v`` modulo the span of a Howell form."""
    v = tuple(int(x) % m for x in v)
    for row, (c, p) in zip(form, pivot_columns(form)):
        q = v[c] // p
        if q:
            v = _combine(1, v, -q, row, m)
    return v


def in_span(v: Sequence[int], form: Matrix, m: int) -> bool:
    return not any(reduce_vector(v, form, m))


def span_size(form: Matrix, m: int) -> int:
    size = 1
    for _, p in pivot_columns(form):
        size *= m // p
    return size


def quotient_representatives(form: Matrix, m: int, ncols: int) -> list[Vector]:
    """All canonical coset representatives of ``(Z/m)^ncols / span(form)``.

    Listed in lexicographic order.
    """
    bounds = [m] * ncols
    for c, p in pivot_columns(form):
        bounds[c] = p
    reps: list[Vector] = [()]
    for b in bounds:
        reps = [r + (x,) for r in reps for x in range(b)]
    return reps


def sum_forms(forms: Iterable[Matrix], m: int, ncols: int) -> Matrix:
    rows: list[Vector] = []
    for f in forms:
        rows.extend(f)
    return howell_form(rows, m, ncols)


def contains_form(big: Matrix, small: Matrix, m: int) -> bool:
    """Whether span(small) is a submodule of span(big)."""
    return all(in_span(r, big, m) for r in small)


def vec_mat(v: Sequence[int], mat: Sequence[Sequence[int]], m: int, ncols: int) -> Vector:
    """Row vector times matrix: ``sum_i v[i] * mat[i]``."""
    out = [0] * ncols
    for x, row in zip(v, mat):
        if x:
            for j, y in enumerate(row):
                out[j] += x * y
    return tuple(z % m for z in out)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], m: int, ncols: int) -> Matrix:
    return tuple(vec_mat(row, b, m, ncols) for row in a)


def left_kernel(mat: Sequence[Sequence[int]], m: int, ncols: int) -> Matrix:
    """Howell form of ``{x : x @ mat == 0}`` where ``mat`` has ``len(mat)`` rows.

    Works on the augmented matrix ``[mat | I]``: by the Howell property the
    rows whose first ``ncols`` entries vanish span exactly the vectors of the
    form ``(0 | x)`` in the row space, i.e. the kernel.
    """
    n = len(mat)
    augmented = [tuple(row) + tuple(int(i == j) for j in range(n)) for i, row in enumerate(mat)]
    form = howell_form(augmented, m, ncols + n)
    kernel = [row[ncols:] for row in form if not any(row[:ncols])]
    return howell_form(kernel, m, n)


def solve(mat: Sequence[Sequence[int]], b: Sequence[int], m: int, ncols: int) -> Vector | None:
    """Some ``x`` with ``x @ mat == b``, or ``None`` when there is none."""
    n = len(mat)
    augmented = [tuple(row) + tuple(int(i == j) for j in range(n)) for i, row in enumerate(mat)]
    form = howell_form(augmented, m, ncols + n)
    r = reduce_vector(tuple(b) + (0,) * n, form, m)
    if any(r[:ncols]):
        return None
    return tuple((-x) % m for x in r[ncols:])
