"""Finite groups as validated multiplication tables.

Elements are referenced by index internally and by name in file formats.
Builtin families use a documented deterministic ordering with the identity
first (see `builtin`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotAGroup, SchemaError, UnknownElement, UnknownGroup


class FiniteGroup:
    """A finite group given by element names and an index multiplication table.

    Construction validates the group laws (Latin square, associativity,
    two-sided identity, inverses) and locates identity and inverses.
    Instances are immutable and freely shareable.
    """

    __slots__ = ("names", "table", "identity", "inverse", "_index")

    def __init__(self, names, table):
        names = tuple(str(x) for x in names)
        n = len(names)
        if n == 0:
            raise NotAGroup("a group needs at least one element")
        if len(set(names)) != n:
            raise NotAGroup("duplicate element names")
        if len(table) != n:
            raise NotAGroup(f"table has {len(table)} rows for {n} elements")
        rows = []
        for i, row in enumerate(table):
            row = tuple(int(x) for x in row)
            if len(row) != n:
                raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
            if any(not 0 <= x < n for x in row):
                raise NotAGroup(f"row {i} contains an out-of-range index")
            rows.append(row)
        table = tuple(rows)

        full = frozenset(range(n))
        for i in range(n):
            if frozenset(table[i]) != full:
                raise NotAGroup(f"row {i} ({names[i]}) is not a permutation")
        for j in range(n):
            if frozenset(table[i][j] for i in range(n)) != full:
                raise NotAGroup(f"column {j} ({names[j]}) is not a permutation")

        identity = None
        for i in range(n):
            if all(table[i][x] == x and table[x][i] == x for x in range(n)):
                identity = i
                break
        if identity is None:
            raise NotAGroup("no two-sided identity element")

        for a in range(n):
            rowa = table[a]
            for b in range(n):
                rowab = table[rowa[b]]
                rowb = table[b]
                for c in range(n):
                    if rowab[c] != rowa[rowb[c]]:
                        raise NotAGroup(
                            "associativity fails at "
                            f"({names[a]}, {names[b]}, {names[c]})"
                        )

        inverse = []
        for a in range(n):
            b = next(
                (x for x in range(n) if table[a][x] == identity and table[x][a] == identity),
                None,
            )
            if b is None:
                raise NotAGroup(f"element {names[a]} has no two-sided inverse")
            inverse.append(b)

        self.names = names
        self.table = table
        self.identity = identity
        self.inverse = tuple(inverse)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, k: int, g: int) -> int:
        """k g k^-1."""
        return self.table[self.table[k][g]][self.inverse[k]]

    def power(self, g: int, m: int) -> int:
        if m < 0:
            return self.power(self.inverse[g], -m)
        result = self.identity
        for _ in range(m):
            result = self.table[result][g]
        return result

    def element_order(self, g: int) -> int:
        order = 1
        x = g
        while x != self.identity:
            x = self.table[x][g]
            order += 1
        return order

    def cyclic_subgroup(self, g: int) -> tuple[int, ...]:
        members = [self.identity]
        x = g
        while x != self.identity:
            members.append(x)
            x = self.table[x][g]
        return tuple(members)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"element {name!r} is not in the group") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.names == other.names and self.table == other.table

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, names={self.names!r})"


def from_table(names, table) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines."""
    return FiniteGroup(names, table)


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes, least-index representatives and all centralizers."""

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    centralizers: tuple[tuple[int, ...], ...]


def conjugacy(group: FiniteGroup) -> ConjugacyData:
    """Brute-force conjugacy classes and centralizers.

    Class representatives are the least element index of each class, which
    makes downstream basis orderings deterministic.
    """
    n = group.order
    seen = [False] * n
    classes = []
    for g in range(n):
        if seen[g]:
            continue
        orbit = sorted({group.conj(k, g) for k in range(n)})
        for x in orbit:
            seen[x] = True
        classes.append(tuple(orbit))
    centralizers = tuple(
        tuple(k for k in range(n) if group.mul(k, g) == group.mul(g, k)) for g in range(n)
    )
    return ConjugacyData(
        classes=tuple(classes),
        representatives=tuple(c[0] for c in classes),
        centralizers=centralizers,
    )


def _cyclic(n: int) -> FiniteGroup:
    names = ["e"] + [f"g{i}" for i in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(names, table)


def _dihedral(n: int) -> FiniteGroup:
    # r_i r_j = r_{i+j}; r_i s_j = s_{i+j}; s_i r_j = s_{i-j}; s_i s_j = r_{i-j}.
    names = ["e"] + [f"r{i}" for i in range(1, n)] + [f"s{i}" for i in range(n)]
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = (i + j) % n
            table[i][n + j] = n + (i + j) % n
            table[n + i][j] = n + (i - j) % n
            table[n + i][n + j] = (i - j) % n
    return FiniteGroup(names, table)


def _symmetric(n: int) -> FiniteGroup:
    # Elements are permutations of 0..n-1 in lexicographic order of their
    # one-line form, so the identity comes first.  Composition is
    # (p * q)(x) = p(q(x)).
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    names = ["e"] + ["p" + "".join(str(x) for x in p) for p in perms[1:]]
    table = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms]
        for p in perms
    ]
    return FiniteGroup(names, table)


def _quaternion8() -> FiniteGroup:
    # Unit quaternions ordered (1, -1, i, -i, j, -j, k, -k); "n" prefixes
    # the negatives.  Element 2*axis + (0 if positive else 1), axes 1,i,j,k.
    names = ["e", "n", "i", "ni", "j", "nj", "k", "nk"]

    def times(ax1, ax2):
        # (sign, axis) product on the axis set {1, i, j, k}
        if ax1 == 0:
            return 1, ax2
        if ax2 == 0:
            return 1, ax1
        if ax1 == ax2:
            return -1, 0
        cyc = {(1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2)}
        if (ax1, ax2) in cyc:
            return cyc[(ax1, ax2)]
        s, ax = cyc[(ax2, ax1)]
        return -s, ax

    table = []
    for a in range(8):
        row = []
        for b in range(8):
            s, ax = times(a // 2, b // 2)
            if a % 2:
                s = -s
            if b % 2:
                s = -s
            row.append(2 * ax + (0 if s > 0 else 1))
        table.append(row)
    return FiniteGroup(names, table)


def builtin(name: str, parameter: int | None = None) -> FiniteGroup:
    """A named builtin group: cyclic n, dihedral n, symmetric n<=5, quaternion8."""
    if name == "cyclic":
        if parameter is None or parameter < 1:
            raise UnknownGroup(f"cyclic needs a positive order, got {parameter!r}")
        return _cyclic(parameter)
    if name == "dihedral":
        if parameter is None or parameter < 1:
            raise UnknownGroup(f"dihedral needs a positive parameter, got {parameter!r}")
        return _dihedral(parameter)
    if name == "symmetric":
        if parameter is None or not 1 <= parameter <= 5:
            raise UnknownGroup(f"symmetric supports degrees 1..5, got {parameter!r}")
        return _symmetric(parameter)
    if name == "quaternion8":
        if parameter is not None:
            raise UnknownGroup("quaternion8 takes no parameter")
        return _quaternion8()
    raise UnknownGroup(f"unknown builtin group {name!r}")


def builtin_from_string(spec: str) -> FiniteGroup:
    """Resolve a builtin group from a CLI-style string like "cyclic:4"."""
    if ":" in spec:
        name, _, raw = spec.partition(":")
        try:
            parameter = int(raw)
        except ValueError:
            raise UnknownGroup(f"bad builtin parameter in {spec!r}") from None
        return builtin(name, parameter)
    return builtin(spec)


def load_group(doc) -> FiniteGroup:
    """Build a group from a parsed JSON document {"names": [...], "table": [[...]]}."""
    if not isinstance(doc, dict):
        raise SchemaError("group document must be an object")
    names = doc.get("names")
    table = doc.get("table")
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise SchemaError('group "names" must be a list of strings')
    if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
        raise SchemaError('group "table" must be a list of index rows')
    for row in table:
        if not all(isinstance(x, int) for x in row):
            raise SchemaError("group table entries must be integers")
    return FiniteGroup(names, table)


def save_group(group: FiniteGroup) -> dict:
    return {"names": list(group.names), "table": [list(row) for row in group.table]}
