"""Algebraic models of S-unit lattices and K-group comparison modules.

The place model is a disjoint union of coset spaces G/D_i; the S-unit
analogue is the augmentation kernel I_S inside Z[S], and the residue-degree
surrogate of an H-orbit is |H ∩ Stab(q)| (everywhere-unramified model).
"""

import math
from fractions import Fraction
from dataclasses import dataclass
from typing import NamedTuple

from .exactla import IntMatrix, lattice_index, rational_solve
from .grp import Subgroup, all_subgroups
from .burnside import PermAction, coset_action
from .regfe import InvariantPairing, regulator_constant, regulator_constants_table
from .zgmod import (
    ModuleError,
    ZGLattice,
    direct_sum,
    fixed_sublattice,
    induced_lattice,
    permutation_lattice,
    regular_lattice,
    sublattice_action,
    trivial_lattice,
    zero_lattice,
)


class ArithmeticModelError(ValueError):
    """Raised when a place-model invariant fails at runtime."""


@dataclass(frozen=True)
class PlaceModel:
    """Chosen decomposition groups and the G-set S they generate."""

    group: object
    decomposition_groups: tuple
    action: PermAction
    block_of_point: tuple  # which D_i each point of S came from

    @property
    def size(self):
        return self.action.size


def place_model(group, d_list):
    """Disjoint union of the coset actions G/D_i."""
    if not d_list:
        raise ArithmeticModelError("at least one decomposition group is required")
    ds = []
    for d in d_list:
        if isinstance(d, Subgroup):
            if d.group is not group:
                raise ArithmeticModelError("decomposition group belongs to a different group")
            ds.append(d)
        else:
            ds.append(Subgroup(group, d))
    action = None
    blocks = []
    for i, d in enumerate(ds):
        act = coset_action(group, d)
        blocks.extend([i] * act.size)
        action = act if action is None else action.disjoint_union(act)
    return PlaceModel(
        group=group,
        decomposition_groups=tuple(ds),
        action=action,
        block_of_point=tuple(blocks),
    )


class ResidueData(NamedTuple):
    orbit_representatives: tuple
    orbits: tuple
    degrees: tuple  # f per orbit, |H ∩ Stab(representative)|
    n: int          # product of the degrees
    l: int          # lcm of the degrees


def residue_degrees(model, h):
    """Orbit/degree data of H acting on S, with the orbit-stabilizer identity asserted."""
    if not isinstance(h, Subgroup):
        h = Subgroup(model.group, h)
    orbits = model.action.orbits(h)
    reps, degs = [], []
    for orbit in orbits:
        q = orbit[0]
        f = sum(1 for x in h.elements if model.action.images[x][q] == q)
        if f * len(orbit) != h.order:
            raise ArithmeticModelError("orbit-stabilizer identity failed on the place model")
        reps.append(q)
        degs.append(f)
    n = 1
    for f in degs:
        n *= f
    return ResidueData(
        orbit_representatives=tuple(reps),
        orbits=tuple(orbits),
        degrees=tuple(degs),
        n=n,
        l=math.lcm(*degs),
    )


@dataclass(frozen=True)
class SUnitLattice:
    """The augmentation kernel I_S with its difference basis and restricted pairing."""

    model: PlaceModel
    ambient: ZGLattice     # Z[S]
    lattice: ZGLattice     # I_S in the basis e_0 - e_i
    basis: IntMatrix       # |S| x (|S|-1), column i-1 = e_0 - e_i
    pairing: InvariantPairing  # orthonormal-on-Z[S] pairing restricted to I_S

    @property
    def group(self):
        return self.model.group


def sunit_lattice(group, d_list):
    """I_S = ker(Z[S] -> Z) for S the disjoint union of G/D_i."""
    model = d_list if isinstance(d_list, PlaceModel) else place_model(group, d_list)
    ambient = permutation_lattice(group, model.action)
    s = model.size
    cols = []
    for i in range(1, s):
        col = [0] * s
        col[0] = 1
        col[i] = -1
        cols.append(tuple(col))
    basis = IntMatrix.from_columns(cols, rows=s)
    lattice = sublattice_action(ambient, basis)
    gram = basis.transpose() @ basis
    pairing = InvariantPairing(lattice, gram, check=False)
    return SUnitLattice(
        model=model, ambient=ambient, lattice=lattice, basis=basis, pairing=pairing
    )


def subfield_lattice_embedding(sunit, h):
    """Images of the subfield difference basis inside (I_S)^H, in Z[S] coordinates.

    The subfield places are the H-orbits O_1..O_t; the basis vector p_1 - p_j
    maps to f_1·(sum of O_1) - f_j·(sum of O_j), which has augmentation zero
    by the orbit-stabilizer identity.
    """
    model = sunit.model if isinstance(sunit, SUnitLattice) else sunit
    rd = residue_degrees(model, h)
    s = model.size
    t = len(rd.orbits)
    cols = []
    for j in range(1, t):
        col = [0] * s
        for q in rd.orbits[0]:
            col[q] += rd.degrees[0]
        for q in rd.orbits[j]:
            col[q] -= rd.degrees[j]
        cols.append(tuple(col))
    return IntMatrix.from_columns(cols, rows=s)


class SUnitIndexCheck(NamedTuple):
    index: Fraction
    expected: Fraction
    ok: bool


def verify_sunit_index(sunit, h):
    """Compare [(I_S)^H : image of subfield lattice] with n(H)/l(H)."""
    if not isinstance(h, Subgroup):
        h = Subgroup(sunit.group, h)
    rd = residue_degrees(sunit.model, h)
    ambient_vectors = subfield_lattice_embedding(sunit, h)
    sol = rational_solve(sunit.basis, ambient_vectors)
    if sol is None or any(x.denominator != 1 for row in sol for x in row):
        raise ArithmeticModelError("subfield image escapes the augmentation kernel")
    coords = IntMatrix(
        ((x.numerator for x in row) for row in sol), cols=ambient_vectors.cols
    )
    fixed = fixed_sublattice(sunit.lattice, h)
    index = Fraction(lattice_index(coords, fixed))
    expected = Fraction(rd.n, rd.l)
    return SUnitIndexCheck(index=index, expected=expected, ok=index == expected)


class ClosedFormCheck(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    ok: bool


def verify_sunit_closed_form(sunit, theta):
    """Check C_Θ(I_S) against the trivial/permutation constants with the l/n correction.

    The left side uses the pairing that makes the canonical basis of Z[S]
    orthonormal, restricted to I_S; the right side is
    C_Θ(triv) / ∏_i C_Θ(Z[G/D_i]) · ∏_H (l(H)/n(H))^{2 n_H}.
    """
    group = sunit.group
    lhs = regulator_constant(theta, sunit.lattice, sunit.pairing)
    rhs = regulator_constant(theta, trivial_lattice(group))
    for d in sunit.model.decomposition_groups:
        rhs /= regulator_constant(theta, permutation_lattice(group, coset_action(group, d)))
    table = all_subgroups(group)
    for ci, coeff in theta.support():
        rd = residue_degrees(sunit.model, table[ci].representative)
        rhs *= Fraction(rd.l, rd.n) ** (2 * coeff)
    return ClosedFormCheck(lhs=lhs, rhs=rhs, ok=lhs == rhs)


def kgroup_comparison_module(group, d_real, s2_count, parity):
    """Comparison lattice for the K-group identity.

    Odd parity: direct sum of Z[G/D] over the real-place stabilizers (order
    at most 2) plus s2 copies of Z[G]. Even parity: each D must have order
    exactly 2 and contributes the induced sign lattice Ind_D(ε) instead.
    """
    if parity not in ("odd", "even"):
        raise ModuleError("parity must be 'odd' or 'even'")
    if s2_count < 0:
        raise ModuleError("s2_count must be non-negative")
    ds = []
    for d in d_real:
        if isinstance(d, Subgroup):
            if d.group is not group:
                raise ModuleError("decomposition group belongs to a different group")
            ds.append(d)
        else:
            ds.append(Subgroup(group, d))
    summands = []
    for d in ds:
        if parity == "even":
            if d.order != 2:
                raise ModuleError("even-parity decomposition groups must have order exactly 2")
            eps = {0: IntMatrix([[1]]), d.elements[1]: IntMatrix([[-1]])}
            summands.append(induced_lattice(group, d, eps))
        else:
            if d.order > 2:
                raise ModuleError("odd-parity decomposition groups must have order at most 2")
            summands.append(permutation_lattice(group, coset_action(group, d)))
    for _ in range(s2_count):
        summands.append(regular_lattice(group))
    if not summands:
        return zero_lattice(group)
    return direct_sum(*summands)


class KGroupCheck(NamedTuple):
    constants: tuple
    ok: bool


def verify_kgroup_triviality(module, basis):
    """All regulator constants of a comparison module must be exactly 1."""
    constants = regulator_constants_table(basis, module)
    return KGroupCheck(constants=constants, ok=all(c == 1 for c in constants))
