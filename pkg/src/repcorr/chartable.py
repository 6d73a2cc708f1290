"""Exact character tables of finite groups.

`character_table` runs the classic modular algorithm: build the class
multiplication matrices, split a simultaneous eigenbasis over F_p for a prime
p = 1 (mod exponent), p > 2*sqrt(|G|), then lift eigenvalue data back to exact
cyclotomic values in Q(zeta_exponent) through the discrete-log correspondence
between roots of unity in F_p and powers of zeta. Both orthogonality
relations are verified exactly before a table is returned, so a bug in the
modular stage cannot leak a wrong table.

Random choices (the eigenspace splitting combinations) come from a seeded
PRNG; if random combinations fail to split, a deterministic pass over every
class matrix finishes the job, which makes the result reproducible and the
abort path effectively unreachable.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .cyclo import Cyclo, parse_cyclo, zeta
from .errors import SpecError, VerificationError
from .groups import ClassData, Group, class_mult_coeffs, conjugacy, construct_group

__all__ = [
    "CharTable",
    "character_table",
    "load_table",
    "format_table",
    "tables_equal_up_to_row_order",
]

_MAX_RANDOM_SPLITS = 12


@dataclass(frozen=True)
class CharTable:
    group: Group
    classes: ClassData
    dims: tuple[int, ...]
    values: tuple[tuple[Cyclo, ...], ...]  # rows = irreps, columns = classes
    labels: tuple[str, ...]
    zeta_order: int

    @property
    def count(self) -> int:
        return len(self.dims)

    def value(self, row: int, class_index: int) -> Cyclo:
        return self.values[row][class_index]


# ---------------------------------------------------------------------------
# modular linear algebra helpers (dense, tiny matrices)


def _mat_vec(m: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(mi[k] * v[k] for k in range(len(v))) % p for mi in m]


def _kernel_mod(m: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {x : m x = 0} over F_p, deterministic echelon order."""
    rows = [row[:] for row in m]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for ri, pc in enumerate(pivots):
            vec[pc] = (-rows[ri][fc]) % p
        basis.append(vec)
    return basis


def _solve_in_span(basis: list[list[int]], targets: list[list[int]], p: int) -> list[list[int]]:
    """Express each target vector in the given (independent) basis.

    Returns the coordinate vectors; raises if a target is outside the span.
    """
    k = len(basis)
    n = len(basis[0])
    t = len(targets)
    aug = [[basis[j][i] for j in range(k)] + [tv[i] for tv in targets] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        sel = None
        for i in range(r, n):
            if aug[i][c] % p:
                sel = i
                break
        if sel is None:
            raise VerificationError("subspace basis is not independent")
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if any(x % p for x in aug[i][k:]):
            raise VerificationError("vector escaped its invariant subspace")
    return [[aug[ri][k + j] for ri in range(r)] for j in range(t)]


def _charpoly_mod(m: list[list[int]], p: int) -> list[int]:
    """det(m - x I) coefficients (constant first) via interpolation; needs
    p > deg. Falls back on the caller for tiny p."""
    k = len(m)
    pts = list(range(k + 1))
    vals = [_det_mod([[m[i][j] - (x if i == j else 0) for j in range(k)] for i in range(k)], p)
            for x in pts]
    # Lagrange interpolation over F_p
    coeffs = [0] * (k + 1)
    for i, xi in enumerate(pts):
        num = [1]
        denom = 1
        for j, xj in enumerate(pts):
            if i == j:
                continue
            num = _poly_mul_mod(num, [-xj % p, 1], p)
            denom = denom * (xi - xj) % p
        scale = vals[i] * pow(denom, -1, p) % p
        for d, c in enumerate(num):
            coeffs[d] = (coeffs[d] + scale * c) % p
    return coeffs


def _poly_mul_mod(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _det_mod(m: list[list[int]], p: int) -> int:
    m = [row[:] for row in m]
    n = len(m)
    det = 1
    for c in range(n):
        sel = None
        for i in range(c, n):
            if m[i][c] % p:
                sel = i
                break
        if sel is None:
            return 0
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            if m[i][c] % p:
                f = m[i][c] * inv % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return det % p


def _eigenvalues_mod(r: list[list[int]], p: int) -> list[int]:
    k = len(r)
    if p <= k + 1:
        return [lam for lam in range(p)
                if _det_mod([[r[i][j] - (lam if i == j else 0) for j in range(k)]
                             for i in range(k)], p) == 0]
    poly = _charpoly_mod(r, p)
    out = []
    for lam in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * lam + c) % p
        if acc == 0:
            out.append(lam)
    return out


# ---------------------------------------------------------------------------
# the algorithm proper


def _least_prime(exponent: int, order: int) -> int:
    bound = 2 * isqrt(order) + 1
    p = exponent + 1
    while True:
        if p > bound and p > 2 and _is_prime(p):
            return p
        p += exponent if exponent > 1 else 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def _primitive_root(p: int) -> int:
    factors = set()
    n = p - 1
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors.add(d)
            n //= d
        d += 1
    if n > 1:
        factors.add(n)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise VerificationError(f"no primitive root mod {p}")


def _split_subspace(basis: list[list[int]], amat: list[list[int]], p: int) -> list[list[list[int]]]:
    k = len(basis)
    images = [_mat_vec(amat, b, p) for b in basis]
    rcols = _solve_in_span(basis, images, p)
    # restriction matrix: column j = coordinates of A * basis[j]
    rmat = [[rcols[j][i] for j in range(k)] for i in range(k)]
    eigs = _eigenvalues_mod(rmat, p)
    pieces = []
    total = 0
    for lam in eigs:
        shifted = [[(rmat[i][j] - (lam if i == j else 0)) % p for j in range(k)] for i in range(k)]
        kern = _kernel_mod(shifted, p)
        if not kern:
            continue
        total += len(kern)
        lifted = []
        for w in kern:
            vec = [0] * len(basis[0])
            for j, c in enumerate(w):
                if c:
                    for t in range(len(vec)):
                        vec[t] = (vec[t] + c * basis[j][t]) % p
            lifted.append(vec)
        pieces.append(lifted)
    if total != k:
        raise VerificationError("class matrix failed to diagonalize over F_p")
    return pieces


def _omega_vectors(class_mats: list[list[list[int]]], p: int, seed: int) -> list[list[int]]:
    r = len(class_mats)
    rng = random.Random(seed)
    # start from the standard basis of F_p^r
    full = []
    for i in range(r):
        e = [0] * r
        e[i] = 1
        full.append(e)
    pending: list[list[list[int]]] = [full]
    finished: list[list[int]] = []

    def push(piece: list[list[int]]) -> None:
        if len(piece) == 1:
            finished.append(piece[0])
        else:
            pending.append(piece)

    for _ in range(_MAX_RANDOM_SPLITS):
        if not pending:
            break
        coefs = [rng.randrange(p) for _ in range(r)]
        amat = [[sum(coefs[i] * class_mats[i][j][k] for i in range(r)) % p
                 for k in range(r)] for j in range(r)]
        work, pending = pending, []
        for piece in work:
            for sub in _split_subspace(piece, amat, p):
                push(sub)
    if pending:
        # guaranteed full split: distinct central characters differ on some class
        for i in range(r):
            if not pending:
                break
            work, pending = pending, []
            for piece in work:
                for sub in _split_subspace(piece, class_mats[i], p):
                    push(sub)
    if pending:
        raise VerificationError(
            "eigenspace splitting did not converge; class algebra is inconsistent"
        )
    if len(finished) != r:
        raise VerificationError("wrong number of central characters")
    out = []
    for v in finished:
        if v[0] % p == 0:
            raise VerificationError("central character vanishes on the identity class")
        inv = pow(v[0], -1, p)
        out.append([x * inv % p for x in v])
    return out


def character_table(g: Group, cd: ClassData | None = None, seed: int = 0) -> CharTable:
    """Compute the exact character table of g.

    Rows are ordered with the trivial character first, then by (dimension,
    lexicographic value order); columns follow the conjugacy class order.
    """
    if cd is None:
        cd = conjugacy(g)
    r = cd.count
    e = cd.exponent
    n = g.order
    p = _least_prime(e, n)

    class_mats = [
        [list(class_mult_coeffs(g, cd, i, j)) for j in range(r)] for i in range(r)
    ]
    # (class_mats[i])[j][k] = a_ijk so that M_i omega = omega_i * omega
    omegas = _omega_vectors(class_mats, p, seed)

    size_inv = [pow(s, -1, p) for s in cd.sizes]
    rows = []
    for om in omegas:
        t2 = sum(om[j] * om[cd.inverse_class[j]] * size_inv[j] for j in range(r)) % p
        if t2 == 0:
            raise VerificationError("degree formula degenerated mod p")
        d2 = n * pow(t2, -1, p) % p
        dim = None
        for d in range(1, isqrt(n) + 1):
            if d * d % p == d2:
                dim = d
                break
        if dim is None:
            raise VerificationError("no integer degree matches the modular data")
        chi_hat = [dim * om[j] * size_inv[j] % p for j in range(r)]
        rows.append((dim, chi_hat))

    if sum(d * d for d, _ in rows) != n:
        raise VerificationError("sum of squared degrees misses the group order")

    z = pow(_primitive_root(p), (p - 1) // e, p)
    z_inv = pow(z, -1, p)
    z_inv_pows = [1] * e
    for s in range(1, e):
        z_inv_pows[s] = z_inv_pows[s - 1] * z_inv % p

    class_of_power = []
    for j in range(r):
        rep = cd.representatives[j]
        path = []
        x = 0
        for _ in range(e):
            path.append(cd.class_of[x])
            x = g.mult[x][rep]
        class_of_power.append(path)

    e_inv = pow(e, -1, p)
    table_rows: list[tuple[int, tuple[Cyclo, ...]]] = []
    for dim, chi_hat in rows:
        vals = []
        for j in range(r):
            powers = class_of_power[j]
            mults = []
            for s in range(e):
                acc = 0
                for l in range(e):
                    acc += chi_hat[powers[l]] * z_inv_pows[s * l % e]
                mults.append(acc % p * e_inv % p)
            if sum(mults) != dim:
                raise VerificationError("root-of-unity multiplicities failed to lift")
            vals.append(Cyclo.from_coeffs(e, mults))
        table_rows.append((dim, tuple(vals)))

    trivial = [row for row in table_rows if all(v.as_integer() == 1 for v in row[1])]
    if len(trivial) != 1:
        raise VerificationError("trivial character missing or duplicated")
    rest = [row for row in table_rows if row is not trivial[0]]
    rest.sort(key=lambda row: (row[0], tuple(v.coeffs() for v in row[1])))
    ordered = trivial + rest

    table = CharTable(
        group=g,
        classes=cd,
        dims=tuple(d for d, _ in ordered),
        values=tuple(vals for _, vals in ordered),
        labels=tuple(f"chi{i}" for i in range(r)),
        zeta_order=e,
    )
    verify_table(table)
    return table


def verify_table(t: CharTable) -> None:
    """Exact consistency checks: dimensions, both orthogonality relations."""
    n = t.group.order
    cd = t.classes
    r = cd.count
    if len(t.dims) != r or len(t.values) != r:
        raise VerificationError("table is not square")
    if sum(d * d for d in t.dims) != n:
        raise VerificationError("sum of squared dims must equal the group order")
    for i in range(r):
        if t.values[i][0].as_integer() != t.dims[i]:
            raise VerificationError(f"row {i}: identity value must equal the dimension")
    if any(v.as_integer() != 1 for v in t.values[0]):
        raise VerificationError("row 0 must be the trivial character")
    conj_rows = [tuple(v.conj() for v in row) for row in t.values]
    for i in range(r):
        for i2 in range(i, r):
            acc = Cyclo.from_rational(0)
            for j in range(r):
                acc = acc + t.values[i][j] * conj_rows[i2][j] * cd.sizes[j]
            want = n if i == i2 else 0
            if acc.as_integer() != want:
                raise VerificationError(
                    f"row orthogonality fails for rows {i}, {i2}"
                )
    for j in range(r):
        for j2 in range(j, r):
            acc = Cyclo.from_rational(0)
            for i in range(r):
                acc = acc + t.values[i][j] * conj_rows[i][j2]
            want = Fraction(n, cd.sizes[j]) if j == j2 else Fraction(0)
            if acc.as_rational() != want:
                raise VerificationError(
                    f"column orthogonality fails for classes {j}, {j2}"
                )


def _row_key(dim: int, vals: tuple[Cyclo, ...], conductor: int):
    return (dim, tuple((v.to_conductor(conductor).nums, v.to_conductor(conductor).den)
                       for v in vals))


def tables_equal_up_to_row_order(a: CharTable, b: CharTable) -> bool:
    if a.group.order != b.group.order or a.classes.count != b.classes.count:
        return False
    conductor = lcm(a.zeta_order, b.zeta_order)
    ka = sorted(_row_key(d, v, conductor) for d, v in zip(a.dims, a.values))
    kb = sorted(_row_key(d, v, conductor) for d, v in zip(b.dims, b.values))
    return ka == kb


# ---------------------------------------------------------------------------
# the table document format

_IRREP_RE = re.compile(r"^irrep\s+(\S+)\s+dim\s+(\d+)\s*:\s*(.+)$")


def format_table(t: CharTable) -> str:
    lines = [
        f"group {t.group.spec}",
        f"classes {t.classes.count}",
        f"zeta {t.zeta_order}",
    ]
    for label, dim, row in zip(t.labels, t.dims, t.values):
        vals = " | ".join(v.to_conductor(t.zeta_order).text() for v in row)
        lines.append(f"irrep {label} dim {dim} : {vals}")
    return "\n".join(lines) + "\n"


def load_table(text: str, order_cap: int | None = None) -> CharTable:
    """Parse and fully verify a character table document.

    Header lines `group`, `classes`, `zeta` in order, then one `irrep` line
    per row; the trivial character must come first. Any failed invariant
    raises VerificationError; malformed syntax raises SpecError.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 4:
        raise SpecError("table document too short")
    header: dict[str, str] = {}
    for ln in lines[:3]:
        parts = ln.split(None, 1)
        if len(parts) != 2 or parts[0] not in ("group", "classes", "zeta"):
            raise SpecError(f"bad header line {ln!r}")
        header[parts[0]] = parts[1]
    if set(header) != {"group", "classes", "zeta"}:
        raise SpecError("table document must declare group, classes and zeta")
    g = construct_group(header["group"], order_cap)
    cd = conjugacy(g)
    try:
        declared_classes = int(header["classes"])
        zeta_order = int(header["zeta"])
    except ValueError as exc:
        raise SpecError("classes and zeta must be integers") from exc
    if zeta_order < 1:
        raise SpecError("zeta order must be positive")
    if declared_classes != cd.count:
        raise VerificationError(
            f"document declares {declared_classes} classes, group has {cd.count}"
        )
    labels, dims, rows = [], [], []
    for ln in lines[3:]:
        m = _IRREP_RE.match(ln)
        if not m:
            raise SpecError(f"bad irrep line {ln!r}")
        labels.append(m.group(1))
        dims.append(int(m.group(2)))
        cells = [c.strip() for c in m.group(3).split("|")]
        if len(cells) != cd.count:
            raise VerificationError(
                f"irrep {m.group(1)!r} has {len(cells)} values, expected {cd.count}"
            )
        rows.append(tuple(parse_cyclo(c, zeta_order) for c in cells))
    if len(rows) != cd.count:
        raise VerificationError(f"expected {cd.count} irrep rows, found {len(rows)}")
    table = CharTable(
        group=g,
        classes=cd,
        dims=tuple(dims),
        values=tuple(rows),
        labels=tuple(labels),
        zeta_order=zeta_order,
    )
    verify_table(table)
    return table
