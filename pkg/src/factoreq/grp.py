"""Finite groups as Cayley tables, with subgroup and conjugacy machinery.

Element 0 is always the identity. Groups are built either by closing a set of
permutations under composition or from an explicit multiplication table.
"""

import random
from dataclasses import dataclass


class GroupError(ValueError):
    """Raised for invalid group data or exceeded size bounds."""


CLOSURE_BOUND = 2000


class FiniteGroup:
    """Immutable group given by its multiplication table.

    `table[a][b]` is the product a*b. Construction validates the axioms;
    associativity is checked exhaustively up to order 64 and on a fixed
    deterministic sample beyond that.
    """

    __slots__ = ("order", "table", "inverse", "element_classes",
                 "class_of_element", "labels", "_cache")

    def __init__(self, table, labels=None, check=True):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0:
            raise GroupError("empty multiplication table")
        if any(len(row) != n for row in table):
            raise GroupError("multiplication table is not square")
        if check:
            _validate_table(table)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table", table)
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == 0:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupError(f"element {a} has no inverse")
        object.__setattr__(self, "inverse", tuple(inv))
        classes, class_of = _element_classes(table, inv)
        object.__setattr__(self, "element_classes", classes)
        object.__setattr__(self, "class_of_element", class_of)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise GroupError("label count mismatch")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def conj(self, x, g):
        """x * g * x^-1."""
        return self.table[self.table[x][g]][self.inverse[x]]

    def power(self, g, k):
        if k < 0:
            g, k = self.inverse[g], -k
        acc = 0
        for _ in range(k):
            acc = self.table[acc][g]
        return acc

    def element_order(self, g):
        acc, k = g, 1
        while acc != 0:
            acc = self.table[acc][g]
            k += 1
        return k

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(self.order))

    def subgroup(self, elements):
        return Subgroup(self, elements)

    def trivial_subgroup(self):
        return Subgroup(self, (0,))

    def full_subgroup(self):
        return Subgroup(self, range(self.order))

    def closure(self, gens):
        """Subgroup generated by the given elements."""
        elems = {0}
        queue = [0]
        for g in gens:
            if g not in elems:
                elems.add(g)
                queue.append(g)
        t = self.table
        while queue:
            x = queue.pop()
            for y in tuple(elems):
                for z in (t[x][y], t[y][x]):
                    if z not in elems:
                        elems.add(z)
                        queue.append(z)
        return Subgroup(self, elems)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _validate_table(table):
    n = len(table)
    rng = range(n)
    for row in table:
        for x in row:
            if not 0 <= x < n:
                raise GroupError("table entry out of range")
    for a in rng:
        if table[0][a] != a or table[a][0] != a:
            raise GroupError("element 0 is not an identity")
        if len(set(table[a])) != n:
            raise GroupError("table row is not a permutation")
        if len({table[b][a] for b in rng}) != n:
            raise GroupError("table column is not a permutation")
    if n <= 64:
        triples = ((a, b, c) for a in rng for b in rng for c in rng)
    else:
        # Too large for the cubic check; fixed-seed sample keeps it deterministic.
        r = random.Random(0xA55)
        triples = ((r.randrange(n), r.randrange(n), r.randrange(n)) for _ in range(40000))
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupError("multiplication table is not associative")


def _element_classes(table, inv):
    n = len(table)
    class_of = [-1] * n
    classes = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        orbit = sorted({table[table[x][g]][inv[x]] for x in range(n)})
        idx = len(classes)
        for h in orbit:
            class_of[h] = idx
        classes.append(tuple(orbit))
    return tuple(classes), tuple(class_of)


class Subgroup:
    """A validated subgroup, stored as a sorted element tuple."""

    __slots__ = ("group", "elements", "_set")

    def __init__(self, group, elements):
        elements = tuple(sorted(set(int(x) for x in elements)))
        eset = frozenset(elements)
        if 0 not in eset:
            raise GroupError("subgroup does not contain the identity")
        for a in elements:
            if not 0 <= a < group.order:
                raise GroupError("subgroup element out of range")
            for b in elements:
                if group.table[a][b] not in eset:
                    raise GroupError("element set is not closed under multiplication")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_set", eset)

    def __setattr__(self, name, value):
        raise AttributeError("Subgroup is immutable")

    @property
    def order(self):
        return len(self.elements)

    @property
    def index(self):
        return self.group.order // len(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((id(self.group), self.elements))

    def is_cyclic(self):
        return any(self.group.element_order(g) == self.order for g in self.elements)

    def is_normal(self):
        g = self.group
        return all(g.conj(x, h) in self._set for x in range(g.order) for h in self.elements)

    def conjugate_by(self, x):
        g = self.group
        return Subgroup(g, (g.conj(x, h) for h in self.elements))

    def normalizer(self):
        g = self.group
        return Subgroup(
            g,
            (x for x in range(g.order) if all(g.conj(x, h) in self._set for h in self.elements)),
        )

    def __repr__(self):
        return f"Subgroup{self.elements}"


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups."""

    representative: Subgroup
    members: tuple  # sorted element tuples of every conjugate
    is_cyclic: bool

    @property
    def order(self):
        return self.representative.order


class SubgroupClassTable:
    """All subgroups of a group, organized into conjugacy classes.

    Classes are ordered by (subgroup order, lexicographically least member),
    so class indices are canonical and stable.
    """

    __slots__ = ("group", "classes", "_index")

    def __init__(self, group, classes):
        self.group = group
        self.classes = tuple(classes)
        self._index = {}
        for i, cls in enumerate(self.classes):
            for member in cls.members:
                self._index[member] = i

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    @property
    def representatives(self):
        return tuple(cls.representative for cls in self.classes)

    def all_subgroups(self):
        """Every subgroup (not just class representatives), canonically sorted."""
        out = [m for cls in self.classes for m in cls.members]
        return tuple(Subgroup(self.group, m) for m in sorted(out, key=lambda t: (len(t), t)))

    def index_of(self, subgroup):
        elems = subgroup.elements if isinstance(subgroup, Subgroup) else tuple(
            sorted(set(subgroup))
        )
        try:
            return self._index[elems]
        except KeyError:
            raise GroupError("subgroup not found in class table") from None

    def cyclic_class_count(self):
        return sum(1 for cls in self.classes if cls.is_cyclic)


def all_subgroups(group, bound=64):
    """Enumerate all subgroups of `group` up to conjugacy.

    Layered closure: start from the cyclic subgroups, then repeatedly extend
    every known subgroup by one outside element until nothing new appears.
    """
    key = ("subgroup_table", bound)
    cached = group._cache.get(key)
    if cached is not None:
        return cached
    if group.order > bound:
        raise GroupError(f"group order {group.order} exceeds bound {bound}")
    n = group.order
    found = set()
    frontier = []
    for g in range(n):
        h = group.closure((g,)).elements
        if h not in found:
            found.add(h)
            frontier.append(h)
    while frontier:
        fresh = []
        for elems in frontier:
            present = set(elems)
            for g in range(n):
                if g in present:
                    continue
                h = group.closure(elems + (g,)).elements
                if h not in found:
                    found.add(h)
                    fresh.append(h)
        frontier = fresh
    # Partition into conjugacy classes.
    remaining = set(found)
    raw_classes = []
    for elems in sorted(found, key=lambda t: (len(t), t)):
        if elems not in remaining:
            continue
        sub = Subgroup(group, elems)
        members = sorted({sub.conjugate_by(x).elements for x in range(n)})
        for m in members:
            remaining.discard(m)
        raw_classes.append(members)
    raw_classes.sort(key=lambda ms: (len(ms[0]), ms[0]))
    classes = [
        SubgroupClass(
            representative=Subgroup(group, ms[0]),
            members=tuple(ms),
            is_cyclic=Subgroup(group, ms[0]).is_cyclic(),
        )
        for ms in raw_classes
    ]
    table = SubgroupClassTable(group, classes)
    group._cache[key] = table
    return table


def conjugacy_class_of_subgroup(group, subgroup, bound=64):
    """Canonical class index of a subgroup in the group's class table."""
    if isinstance(subgroup, Subgroup):
        if subgroup.group is not group:
            raise GroupError("subgroup belongs to a different group")
    else:
        subgroup = Subgroup(group, subgroup)
    return all_subgroups(group, bound).index_of(subgroup)


def group_from_generators(perms, bound=CLOSURE_BOUND):
    """Close a list of permutations (arrays of images) under composition.

    Element 0 of the resulting group is the identity; the remaining elements
    are numbered in BFS discovery order, so the numbering is deterministic.
    """
    perms = [tuple(int(x) for x in p) for p in perms]
    if not perms:
        raise GroupError("at least one generator is required")
    deg = len(perms[0])
    for p in perms:
        if len(p) != deg or sorted(p) != list(range(deg)):
            raise GroupError("not a permutation")
    identity = tuple(range(deg))
    elements = [identity]
    index = {identity: 0}
    queue = [identity]
    while queue:
        cur = queue.pop(0)
        for p in perms:
            nxt = tuple(p[cur[i]] for i in range(deg))
            if nxt not in index:
                if len(elements) >= bound:
                    raise GroupError("group too large")
                index[nxt] = len(elements)
                elements.append(nxt)
                queue.append(nxt)
    n = len(elements)
    table = [
        [index[tuple(a[b[i]] for i in range(deg))] for b in elements]
        for a in elements
    ]
    # Composition of permutations is associative; skip the cubic re-check.
    return FiniteGroup(table, check=False)


def group_from_table(table, labels=None):
    """Build a group from a raw Cayley table, renumbering so the identity is 0."""
    table = [list(int(x) for x in row) for row in table]
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise GroupError("multiplication table is not square")
    ident = next(
        (e for e in range(n) if all(table[e][j] == j and table[j][e] == j for j in range(n))),
        None,
    )
    if ident is None:
        raise GroupError("table has no identity element")
    if ident != 0:
        # Swap the identity into slot 0, keeping all other elements in order.
        order = [ident] + [x for x in range(n) if x != ident]
        newpos = {old: new for new, old in enumerate(order)}
        table = [
            [newpos[table[order[a]][order[b]]] for b in range(n)]
            for a in range(n)
        ]
        if labels is not None:
            labels = [labels[old] for old in order]
    return FiniteGroup(table, labels=labels)


@dataclass(frozen=True)
class DoubleCoset:
    """One H-orbit on the coset space G/K."""

    representative: int  # least group element of the representative coset
    size: int            # number of K-cosets in the orbit
    stabilizer_order: int  # |H ∩ gKg^-1| for the representative g


def left_cosets(group, subgroup):
    """Left cosets gH as sorted tuples, ordered by least element."""
    seen = [False] * group.order
    cosets = []
    for g in range(group.order):
        if seen[g]:
            continue
        coset = tuple(sorted(group.table[g][h] for h in subgroup.elements))
        for x in coset:
            seen[x] = True
        cosets.append(coset)
    return cosets


def double_cosets(group, h, k):
    """H-orbits on G/K with sizes and stabilizer-intersection orders."""
    cosets = left_cosets(group, k)
    coset_of = [0] * group.order
    for i, coset in enumerate(cosets):
        for x in coset:
            coset_of[x] = i
    out = []
    assigned = [False] * len(cosets)
    for i, coset in enumerate(cosets):
        if assigned[i]:
            continue
        orbit = {i}
        queue = [i]
        while queue:
            j = queue.pop()
            rep = cosets[j][0]
            for x in h.elements:
                jj = coset_of[group.table[x][rep]]
                if jj not in orbit:
                    orbit.add(jj)
                    queue.append(jj)
        for j in orbit:
            assigned[j] = True
        g = coset[0]
        stab = sum(
            1
            for x in h.elements
            if group.conj(group.inverse[g], x) in k
        )
        out.append(DoubleCoset(representative=g, size=len(orbit), stabilizer_order=stab))
    return out
