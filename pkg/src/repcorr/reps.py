"""Finite-dimensional representations described by their characters.

A representation here is a multiplicity vector over the irreducible rows of a
character table; that is exactly the data the correspondence and graph layers
need. Constructors cover the trivial and regular representations, permutation
actions given by generator images, explicit multiplicity vectors and explicit
character value lists; `tensor` and `dsum` combine them. `decompose` inverts
a character exactly and refuses anything that is not a genuine character.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .chartable import CharTable
from .cyclo import Cyclo, parse_cyclo
from .errors import SpecError, VerificationError
from .groups import _compose, _split_top_level, parse_cycles

__all__ = [
    "Rep",
    "trivial_rep",
    "regular_rep",
    "perm_rep",
    "rep_from_mults",
    "rep_from_character",
    "decompose",
    "tensor",
    "dsum",
    "is_pi_injective",
    "parse_rep_spec",
]


@dataclass(frozen=True)
class Rep:
    """A representation recorded as irreducible multiplicities."""

    table: CharTable
    mults: tuple[int, ...]
    name: str = ""

    @property
    def dim(self) -> int:
        return sum(m * d for m, d in zip(self.mults, self.table.dims))

    def character(self) -> tuple[Cyclo, ...]:
        vals = []
        for j in range(self.table.count):
            acc = Cyclo.from_rational(0)
            for i, m in enumerate(self.mults):
                if m:
                    acc = acc + self.table.values[i][j] * m
            vals.append(acc)
        return tuple(vals)

    def renamed(self, name: str) -> "Rep":
        return replace(self, name=name)


def trivial_rep(table: CharTable, name: str = "trivial") -> Rep:
    mults = (1,) + (0,) * (table.count - 1)
    return Rep(table, mults, name)


def regular_rep(table: CharTable, name: str = "regular") -> Rep:
    return Rep(table, table.dims, name)


def rep_from_mults(table: CharTable, mults, name: str = "") -> Rep:
    mults = tuple(int(m) for m in mults)
    if len(mults) != table.count:
        raise SpecError(
            f"expected {table.count} multiplicities, got {len(mults)}"
        )
    if any(m < 0 for m in mults):
        raise SpecError("multiplicities must be nonnegative")
    return Rep(table, mults, name)


def decompose(table: CharTable, values) -> tuple[int, ...]:
    """Multiplicity of each irreducible in a class function, exactly.

    Raises VerificationError unless the input is a nonnegative integer
    combination of the table rows that reconstructs the input on the nose.
    """
    values = tuple(values)
    if len(values) != table.count:
        raise VerificationError(
            f"class function has {len(values)} values, expected {table.count}"
        )
    n = table.group.order
    sizes = table.classes.sizes
    mults = []
    for i in range(table.count):
        acc = Cyclo.from_rational(0)
        for j in range(table.count):
            acc = acc + values[j] * table.values[i][j].conj() * sizes[j]
        q = acc.as_rational()
        if q is None:
            raise VerificationError(
                f"inner product with {table.labels[i]} is not rational"
            )
        m = Fraction(q, n)
        if m.denominator != 1 or m < 0:
            raise VerificationError(
                f"multiplicity of {table.labels[i]} is {m}, not a nonnegative integer"
            )
        mults.append(int(m))
    for j in range(table.count):
        acc = Cyclo.from_rational(0)
        for i, m in enumerate(mults):
            if m:
                acc = acc + table.values[i][j] * m
        if acc != values[j]:
            raise VerificationError(
                "class function is not a character: reconstruction differs "
                f"on class {j}"
            )
    return tuple(mults)


def rep_from_character(table: CharTable, values, name: str = "") -> Rep:
    return Rep(table, decompose(table, values), name)


def perm_rep(table: CharTable, images, name: str = "") -> Rep:
    """Representation by permutation matrices, given images of the group
    generators as permutations of {0,...,N-1}.

    The images are extended along the group's breadth-first parent chain and
    then every (element, generator) product is rechecked, so a spec that does
    not define a homomorphism is rejected rather than silently accepted.
    """
    g = table.group
    if len(images) != len(g.generators):
        raise SpecError(
            f"group has {len(g.generators)} generators, got {len(images)} images"
        )
    npoints = max((len(p) for p in images), default=0)
    images = [tuple(p) + tuple(range(len(p), npoints)) for p in images]
    for p in images:
        if sorted(p) != list(range(npoints)):
            raise SpecError(f"generator image {p} is not a permutation")

    perm_of: list[tuple[int, ...] | None] = [None] * g.order
    perm_of[0] = tuple(range(npoints))
    for x in range(1, g.order):
        parent = g.bfs_parent[x]
        if parent is None:
            raise VerificationError("non-identity element missing a parent")
        px, t = parent
        perm_of[x] = _compose(perm_of[px], images[t])
    for x in range(g.order):
        for t, gen in enumerate(g.generators):
            if perm_of[g.mult[x][gen]] != _compose(perm_of[x], images[t]):
                raise VerificationError(
                    "generator images do not extend to a homomorphism; "
                    f"relation fails at element {g.labels[x]!r} and generator {t}"
                )
    values = []
    for rep_elt in table.classes.representatives:
        fixed = sum(1 for i, q in enumerate(perm_of[rep_elt]) if q == i)
        values.append(Cyclo.from_rational(fixed))
    return Rep(table, decompose(table, values), name)


@lru_cache(maxsize=None)
def _fusion(table: CharTable, i: int, j: int) -> tuple[int, ...]:
    values = [table.values[i][c] * table.values[j][c] for c in range(table.count)]
    return decompose(table, values)


def tensor(a: Rep, b: Rep, name: str = "") -> Rep:
    if a.table is not b.table and a.table != b.table:
        raise SpecError("tensor operands must share a character table")
    out = [0] * a.table.count
    for i, mi in enumerate(a.mults):
        if not mi:
            continue
        for j, mj in enumerate(b.mults):
            if not mj:
                continue
            for k, nk in enumerate(_fusion(a.table, i, j)):
                out[k] += mi * mj * nk
    return Rep(a.table, tuple(out), name)


def dsum(a: Rep, b: Rep, name: str = "") -> Rep:
    if a.table is not b.table and a.table != b.table:
        raise SpecError("direct sum operands must share a character table")
    return Rep(a.table, tuple(x + y for x, y in zip(a.mults, b.mults)), name)


def is_pi_injective(rep: Rep) -> bool:
    """True when every irreducible occurs, i.e. the left action of the group
    algebra on the associated bimodule has trivial kernel."""
    return all(m > 0 for m in rep.mults)


# ---------------------------------------------------------------------------
# rep spec grammar


def parse_rep_spec(table: CharTable, text: str, name: str = "") -> Rep:
    """Build a representation from a spec string.

    Grammar:
        trivial | regular
        | perm:[<cycles>, <cycles>, ...]     one image per group generator
        | mult:[m0,m1,...]                   multiplicity per table row
        | char:[v0, v1, ...]                 character values per class
        | tensor(spec, spec, ...)            tensor product
        | dsum(spec, spec, ...)              direct sum
    """
    rep = _parse(table, text.strip())
    return rep.renamed(name) if name else rep


def _parse(table: CharTable, text: str) -> Rep:
    if text == "trivial":
        return trivial_rep(table)
    if text == "regular":
        return regular_rep(table)
    if text.startswith("perm:"):
        body = _bracket_body(text[5:], text)
        parts = _split_top_level(body) if body.strip() else []
        images = [parse_cycles(part) for part in parts]
        npoints = max((len(p) for p in images), default=0)
        images = [parse_cycles(part, npoints) for part in parts]
        return perm_rep(table, images, name=text)
    if text.startswith("mult:"):
        body = _bracket_body(text[5:], text)
        try:
            mults = [int(tok.strip()) for tok in body.split(",")] if body.strip() else []
        except ValueError as exc:
            raise SpecError(f"bad multiplicity list in {text!r}") from exc
        return rep_from_mults(table, mults, name=text)
    if text.startswith("char:"):
        body = _bracket_body(text[5:], text)
        parts = _split_top_level(body) if body.strip() else []
        values = [parse_cyclo(part.strip(), table.zeta_order) for part in parts]
        return rep_from_character(table, values, name=text)
    for head, op in (("tensor", tensor), ("dsum", dsum)):
        if text.startswith(head + "(") and text.endswith(")"):
            parts = _split_top_level(text[len(head) + 1 : -1])
            if len(parts) < 2:
                raise SpecError(f"{head} needs at least two operands: {text!r}")
            reps = [_parse(table, part.strip()) for part in parts]
            acc = reps[0]
            for nxt in reps[1:]:
                acc = op(acc, nxt)
            return acc.renamed(text)
    raise SpecError(f"bad representation spec {text!r}")


def _bracket_body(arg: str, spec: str) -> str:
    arg = arg.strip()
    if not (arg.startswith("[") and arg.endswith("]")):
        raise SpecError(f"expected a bracketed list in {spec!r}")
    return arg[1:-1]
