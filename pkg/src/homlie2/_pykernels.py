"""Pure-Python row reduction; the fallback when the compiled kernel is absent."""

from __future__ import annotations


def _rref_gf2(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    # pack each row into one int, bit c <-> column c
    packed = []
    for row in rows:
        v = 0
        for c, a in enumerate(row):
            if a:
                v |= 1 << c
        if v:
            packed.append(v)
    pivots: list[int] = []
    out: list[int] = []
    for c in range(ncols):
        bit = 1 << c
        for idx, v in enumerate(packed):
            if v & bit:
                break
        else:
            continue
        p = packed.pop(idx)
        packed = [w ^ p if w & bit else w for w in packed]
        out = [w ^ p if w & bit else w for w in out]
        packed = [w for w in packed if w]
        out.append(p)
        pivots.append(c)
        if not packed:
            break
    return [[(v >> c) & 1 for c in range(ncols)] for v in out], pivots


def rref_rows(rows: list[list[int]], ncols: int, field) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form of ``rows``; returns nonzero rows and pivot columns.

    Pivots are taken as the first nonzero entry scanning columns left to right.
    """
    if field.q == 2:
        return _rref_gf2(rows, ncols)
    mt = field.mul_table
    mul = field.mul
    inv = field.inv
    work = [list(r) for r in rows if any(r)]
    done: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ncols):
        for idx, row in enumerate(work):
            if row[c]:
                break
        else:
            continue
        prow = work.pop(idx)
        a = prow[c]
        if a != 1:
            ia = inv(a)
            prow = [mt[ia][x] for x in prow] if mt else [mul(ia, x) for x in prow]
        support = [j for j in range(c, ncols) if prow[j]]
        for group in (work, done):
            for row in group:
                f = row[c]
                if f:
                    if mt:
                        mf = mt[f]
                        for j in support:
                            row[j] ^= mf[prow[j]]
                    else:
                        for j in support:
                            row[j] ^= mul(f, prow[j])
        work = [r for r in work if any(r)]
        done.append(prow)
        pivots.append(c)
        if not work:
            break
    return done, pivots
