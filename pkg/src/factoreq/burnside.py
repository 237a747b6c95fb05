"""Burnside-ring elements, fixed-point counts, and Brauer relations.

K(G), the lattice of Brauer relations, is computed as the integer kernel of
the fixed-point matrix: a virtual permutation representation vanishes exactly
when all its fixed-point counts cancel, so no character theory is needed.
"""

from .exactla import IntMatrix, integer_kernel, invariant_factors
from .grp import GroupError, Subgroup, all_subgroups


class RelationError(ValueError):
    """Raised when a Burnside element fails a Brauer-relation precondition."""


class PermAction:
    """A G-action on {0..size-1}: one permutation (tuple of images) per element."""

    __slots__ = ("group", "size", "images")

    def __init__(self, group, images, check=True):
        images = tuple(tuple(int(x) for x in p) for p in images)
        if len(images) != group.order:
            raise GroupError("need one permutation per group element")
        size = len(images[0]) if images else 0
        for p in images:
            if len(p) != size or (size and sorted(p) != list(range(size))):
                raise GroupError("not a permutation")
        if check:
            if size and images[0] != tuple(range(size)):
                raise GroupError("identity must act trivially")
            for g in range(group.order):
                for h in range(group.order):
                    gh = group.table[g][h]
                    if any(images[g][images[h][x]] != images[gh][x] for x in range(size)):
                        raise GroupError("images do not define a group action")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("PermAction is immutable")

    def apply(self, g, x):
        return self.images[g][x]

    def fixed_point_count(self, g):
        img = self.images[g]
        return sum(1 for x in range(self.size) if img[x] == x)

    def orbits(self, elements=None):
        """Orbits under the listed group elements (default: all of G).

        Returned as sorted tuples, ordered by least point.
        """
        if elements is None:
            elements = range(self.group.order)
        elif isinstance(elements, Subgroup):
            elements = elements.elements
        gens = [self.images[g] for g in elements]
        seen = [False] * self.size
        out = []
        for x in range(self.size):
            if seen[x]:
                continue
            orbit = {x}
            queue = [x]
            while queue:
                y = queue.pop()
                for img in gens:
                    z = img[y]
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            for y in orbit:
                seen[y] = True
            out.append(tuple(sorted(orbit)))
        return out

    def stabilizer(self, x):
        return Subgroup(
            self.group,
            (g for g in range(self.group.order) if self.images[g][x] == x),
        )

    def is_transitive(self):
        return len(self.orbits()) == 1

    def disjoint_union(self, other):
        if other.group is not self.group:
            raise GroupError("actions live over different groups")
        off = self.size
        images = tuple(
            tuple(p) + tuple(off + q[i] for i in range(other.size))
            for p, q in zip(self.images, other.images)
        )
        return PermAction(self.group, images, check=False)


def coset_action(group, subgroup):
    """Left-multiplication action of G on the cosets G/H, ordered by least element."""
    if subgroup.group is not group:
        raise GroupError("subgroup belongs to a different group")
    from .grp import left_cosets

    cosets = left_cosets(group, subgroup)
    coset_of = [0] * group.order
    for i, coset in enumerate(cosets):
        for x in coset:
            coset_of[x] = i
    images = tuple(
        tuple(coset_of[group.table[g][coset[0]]] for coset in cosets)
        for g in range(group.order)
    )
    return PermAction(group, images, check=False)


def regular_action(group):
    return coset_action(group, group.trivial_subgroup())


class BurnsideElement:
    """Integer coefficient vector over the subgroup classes of a group."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs):
        coeffs = tuple(int(x) for x in coeffs)
        if len(coeffs) != len(all_subgroups(group)):
            raise RelationError("coefficient count does not match subgroup class count")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("BurnsideElement is immutable")

    @classmethod
    def zero(cls, group):
        return cls(group, (0,) * len(all_subgroups(group)))

    def _same_group(self, other):
        if not isinstance(other, BurnsideElement) or other.group is not self.group:
            raise RelationError("Burnside elements live over different groups")

    def __add__(self, other):
        self._same_group(other)
        return BurnsideElement(self.group, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same_group(other)
        return BurnsideElement(self.group, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BurnsideElement(self.group, (-a for a in self.coeffs))

    def __mul__(self, scalar):
        return BurnsideElement(self.group, (int(scalar) * a for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, BurnsideElement)
            and self.group is other.group
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.group), self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def support(self):
        return tuple((i, c) for i, c in enumerate(self.coeffs) if c)

    def __repr__(self):
        return f"BurnsideElement{self.coeffs}"


def fixed_point_matrix(group, bound=64):
    """Rows: element conjugacy classes; columns: subgroup classes.

    Entry (c, K) counts the fixed points of a class-c representative acting
    on G/K. Cached per group.
    """
    key = ("fixed_point_matrix", bound)
    cached = group._cache.get(key)
    if cached is not None:
        return cached
    table = all_subgroups(group, bound)
    actions = [coset_action(group, cls.representative) for cls in table]
    m = IntMatrix(
        (
            tuple(act.fixed_point_count(cls[0]) for act in actions)
            for cls in group.element_classes
        ),
        cols=len(table.classes),
    )
    group._cache[key] = m
    return m


class BrauerRelationBasis:
    """A Z-basis of K(G), each element verified and sign-normalized."""

    __slots__ = ("group", "table", "relations")

    def __init__(self, group, table, relations):
        self.group = group
        self.table = table
        self.relations = tuple(relations)
        for theta in self.relations:
            if not is_brauer_relation(theta):
                raise RelationError("basis vector is not a Brauer relation")

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def __getitem__(self, i):
        return self.relations[i]

    @property
    def rank(self):
        return len(self.relations)


def brauer_relation_basis(group, bound=64):
    """Basis of K(G) = integer kernel of the fixed-point matrix."""
    key = ("brauer_basis", bound)
    cached = group._cache.get(key)
    if cached is not None:
        return cached
    table = all_subgroups(group, bound)
    kernel = integer_kernel(fixed_point_matrix(group, bound))
    relations = []
    for j in range(kernel.cols):
        vec = list(kernel.column(j))
        lead = next((x for x in vec if x), 0)
        if lead < 0:
            vec = [-x for x in vec]
        relations.append(BurnsideElement(group, vec))
    basis = BrauerRelationBasis(group, table, relations)
    group._cache[key] = basis
    return basis


def is_brauer_relation(theta):
    """True iff all fixed-point counts of the virtual G-set cancel."""
    f = fixed_point_matrix(theta.group)
    return all(x == 0 for x in f.apply(theta.coeffs))


def relation_is_saturated(basis):
    """True if the basis spans a saturated sublattice (invariant factors all 1)."""
    if not basis.relations:
        return True
    m = IntMatrix.from_columns(
        [theta.coeffs for theta in basis.relations],
        rows=len(basis.table),
    )
    return all(d == 1 for d in invariant_factors(m))
