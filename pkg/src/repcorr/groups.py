"""Finite groups as explicit Cayley tables.

Groups are built from a small spec grammar:

    cyclic:<n> | product:[n1,n2,...] | dihedral:<n> | symmetric:<n>
    | perm:[(1 2 3)(4 5), ...]

Element 0 is always the identity; the remaining elements are ordered by
breadth-first closure over the generators in spec order, multiplying on the
right. That ordering is part of the contract: class indices, character table
columns and graph vertex numbering all inherit it.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from math import lcm

import numpy as np

from .errors import SpecError, VerificationError

__all__ = [
    "Group",
    "ClassData",
    "DEFAULT_ORDER_CAP",
    "construct_group",
    "conjugacy",
    "class_mult_coeffs",
    "parse_cycles",
]

DEFAULT_ORDER_CAP = 5040
ORDER_CAP_ENV = "REPCORR_ORDER_CAP"


@dataclass(frozen=True)
class Group:
    spec: str
    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...]
    generators: tuple[int, ...]
    # (parent, generator position) giving each element's BFS discovery step
    bfs_parent: tuple[tuple[int, int] | None, ...]

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mult[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(self.order))

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k):
            x = self.mult[x][a]
        return x

    def validate(self) -> None:
        """Full group-law check: identity, inverses, latin square, associativity."""
        n = self.order
        m = np.array(self.mult, dtype=np.int64)
        if m.shape != (n, n):
            raise VerificationError("mult table shape mismatch")
        if not (np.array_equal(m[0], np.arange(n)) and np.array_equal(m[:, 0], np.arange(n))):
            raise VerificationError("element 0 is not an identity")
        for a in range(n):
            if sorted(self.mult[a]) != list(range(n)):
                raise VerificationError(f"row {a} is not a permutation")
            if sorted(row[a] for row in self.mult) != list(range(n)):
                raise VerificationError(f"column {a} is not a permutation")
            if self.mult[a][self.inv[a]] != 0 or self.mult[self.inv[a]][a] != 0:
                raise VerificationError(f"bad inverse for element {a}")
        for a in range(n):
            left = m[m[a]]          # left[b, c] = m[m[a, b], c]
            right = m[a][m]         # right[b, c] = m[a, m[b, c]]
            if not np.array_equal(left, right):
                raise VerificationError(f"associativity fails at element {a}")


@dataclass(frozen=True)
class ClassData:
    classes: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    representatives: tuple[int, ...]
    inverse_class: tuple[int, ...]
    class_of: tuple[int, ...]
    exponent: int

    @property
    def count(self) -> int:
        return len(self.classes)


def _order_cap(override: int | None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(ORDER_CAP_ENV)
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise SpecError(f"{ORDER_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise SpecError(f"{ORDER_CAP_ENV} must be positive")
    return cap


def parse_cycles(text: str, n_points: int | None = None) -> tuple[int, ...]:
    """Parse disjoint-or-not cycle notation `(1 2 3)(4 5)` into a permutation
    tuple on 0-based points. `()` is the identity. Points are 1-based in the
    grammar. Cycles are applied right-to-left (rightmost acts first)."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\))+", text):
        raise SpecError(f"bad cycle notation {text!r}")
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", text):
        pts = [int(tok) for tok in body.split()]
        if any(p < 1 for p in pts):
            raise SpecError(f"cycle points are 1-based: {text!r}")
        if len(set(pts)) != len(pts):
            raise SpecError(f"repeated point inside a cycle: {text!r}")
        cycles.append([p - 1 for p in pts])
    top = max((p for c in cycles for p in c), default=-1) + 1
    n = n_points if n_points is not None else top
    if top > n:
        raise SpecError(f"cycle touches point beyond {n}: {text!r}")
    perm = list(range(n))
    for cyc in cycles:
        if len(cyc) < 2:
            continue
        c = list(range(n))
        for i, p in enumerate(cyc):
            c[p] = cyc[(i + 1) % len(cyc)]
        perm = [perm[c[x]] for x in range(n)]
    return tuple(perm)


def _cycle_string(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        out.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(out) if out else "()"


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p . q)(x) = p(q(x)): q acts first, matching left actions on points
    return tuple(p[q[x]] for x in range(len(p)))


def _closure(identity, gens, mul, label, spec: str, cap: int) -> Group:
    elements = [identity]
    index = {identity: 0}
    parents: list[tuple[int, int] | None] = [None]
    head = 0
    while head < len(elements):
        x = elements[head]
        for gpos, g in enumerate(gens):
            y = mul(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                parents.append((head, gpos))
                if len(elements) > cap:
                    raise SpecError(
                        f"group order exceeds cap {cap} while closing {spec!r}"
                    )
        head += 1
    n = len(elements)
    mult = tuple(
        tuple(index[mul(a, b)] for b in elements) for a in elements
    )
    inv = [0] * n
    for a in range(n):
        inv[a] = mult[a].index(0)
    gen_indices = tuple(index[g] for g in gens)
    return Group(
        spec=spec,
        order=n,
        mult=mult,
        inv=tuple(inv),
        labels=tuple(label(e) for e in elements),
        generators=gen_indices,
        bfs_parent=tuple(parents),
    )


_GROUP_RE = re.compile(r"^\s*(cyclic|product|dihedral|symmetric|perm)\s*:\s*(.+?)\s*$")


def construct_group(spec: str, order_cap: int | None = None) -> Group:
    m = _GROUP_RE.match(spec)
    if not m:
        raise SpecError(f"bad group spec {spec!r}")
    family, arg = m.group(1), m.group(2)
    cap = _order_cap(order_cap)

    if family == "cyclic":
        n = _positive_int(arg, spec)
        if n > cap:
            raise SpecError(f"group order {n} exceeds cap {cap}")
        return _closure(0, [1 % n], lambda a, b: (a + b) % n, str, spec, cap)

    if family == "product":
        factors = _int_list(arg, spec)
        if not factors or any(f < 1 for f in factors):
            raise SpecError(f"product factors must be positive: {spec!r}")
        gens = []
        for i in range(len(factors)):
            g = [0] * len(factors)
            g[i] = 1 % factors[i]
            gens.append(tuple(g))

        def pmul(a, b):
            return tuple((x + y) % f for x, y, f in zip(a, b, factors))

        return _closure(
            tuple([0] * len(factors)),
            gens,
            pmul,
            lambda e: "(" + ",".join(str(x) for x in e) + ")",
            spec,
            cap,
        )

    if family == "dihedral":
        n = _positive_int(arg, spec)
        if n < 2:
            raise SpecError(f"dihedral:<n> needs n >= 2, got {n}")

        def dmul(a, b):
            k1, f1 = a
            k2, f2 = b
            return ((k1 + (k2 if f1 == 0 else -k2)) % n, f1 ^ f2)

        def dlabel(e):
            k, f = e
            rot = "e" if k == 0 else ("r" if k == 1 else f"r^{k}")
            return rot if f == 0 else ("s" if k == 0 else f"s*{rot}")

        return _closure((0, 0), [(1, 0), (0, 1)], dmul, dlabel, spec, cap)

    if family == "symmetric":
        n = _positive_int(arg, spec)
        if not 2 <= n <= 6:
            raise SpecError(f"symmetric:<n> supports 2 <= n <= 6, got {n}")
        transposition = tuple([1, 0] + list(range(2, n)))
        ncycle = tuple(list(range(1, n)) + [0])
        gens = [transposition] if n == 2 else [transposition, ncycle]
        return _closure(
            tuple(range(n)), gens, _compose, _cycle_string, spec, cap
        )

    # perm:[(1 2 3)(4 5), ...]
    body = arg.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise SpecError(f"perm spec wants a bracketed list: {spec!r}")
    gen_texts = _split_top_level(body[1:-1])
    if not gen_texts:
        raise SpecError(f"perm spec needs at least one generator: {spec!r}")
    raw = [parse_cycles(t) for t in gen_texts]
    n_pts = max((len(p) for p in raw), default=1)
    n_pts = max(n_pts, 1)
    gens = [parse_cycles(t, n_pts) for t in gen_texts]
    return _closure(tuple(range(n_pts)), gens, _compose, _cycle_string, spec, cap)


def _positive_int(arg: str, spec: str) -> int:
    try:
        n = int(arg)
    except ValueError as exc:
        raise SpecError(f"bad integer in {spec!r}") from exc
    if n < 1:
        raise SpecError(f"need a positive integer in {spec!r}")
    return n


def _int_list(arg: str, spec: str) -> list[int]:
    body = arg.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise SpecError(f"expected a bracketed list in {spec!r}")
    inner = body[1:-1].strip()
    if not inner:
        return []
    try:
        return [int(tok.strip()) for tok in inner.split(",")]
    except ValueError as exc:
        raise SpecError(f"bad integer list in {spec!r}") from exc


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not nested inside (), [] or {}."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i].strip())
            start = i + 1
    tail = text[start:].strip()
    if tail:
        parts.append(tail)
    return [p for p in parts if p]


def conjugacy(g: Group) -> ClassData:
    """Conjugacy classes, ordered by smallest member index (so class 0 is
    always {identity}), plus inverse-class map and the group exponent."""
    n = g.order
    class_of = [-1] * n
    classes: list[tuple[int, ...]] = []
    for a in range(n):
        if class_of[a] >= 0:
            continue
        orbit = set()
        for x in range(n):
            orbit.add(g.mult[g.mult[x][a]][g.inv[x]])
        members = tuple(sorted(orbit))
        idx = len(classes)
        classes.append(members)
        for e in members:
            class_of[e] = idx
    reps = tuple(c[0] for c in classes)
    inverse_class = tuple(class_of[g.inv[r]] for r in reps)
    exponent = 1
    for a in range(n):
        exponent = lcm(exponent, g.element_order(a))
    return ClassData(
        classes=tuple(classes),
        sizes=tuple(len(c) for c in classes),
        representatives=reps,
        inverse_class=inverse_class,
        class_of=tuple(class_of),
        exponent=exponent,
    )


def class_mult_coeffs(g: Group, cd: ClassData, i: int, j: int) -> tuple[int, ...]:
    """a_ijk = number of pairs (x, y) in C_i x C_j with x*y equal to the
    representative of C_k, for every k."""
    if not (0 <= i < cd.count and 0 <= j < cd.count):
        raise SpecError(f"class index out of range: ({i}, {j})")
    hits = [0] * g.order
    mult = g.mult
    for x in cd.classes[i]:
        row = mult[x]
        for y in cd.classes[j]:
            hits[row[y]] += 1
    return tuple(hits[r] for r in cd.representatives)
