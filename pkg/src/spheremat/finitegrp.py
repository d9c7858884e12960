"""Breadth-first enumeration of matrix groups over Z_m, plus structure checks.

Everything here is desk scale: groups are materialized as hash sets of
residue matrices, with an explicit size cap so a typo in the modulus fails
fast instead of eating memory.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .intmat import IntMatrix, ResidueMatrix, tau_matrix
from .permutation import Permutation
from .subgroups import in_W2, mod2_class
from .words import random_congruence_word

DEFAULT_MAX_SIZE = 10**7


class GroupSizeLimitError(RuntimeError):
    """Enumeration exceeded the configured element cap."""


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite matrix group over Z_m held in memory."""

    n: int
    m: int
    generators: tuple[ResidueMatrix, ...]
    elements: frozenset[ResidueMatrix]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: ResidueMatrix) -> bool:
        return x in self.elements

    def sorted_elements(self) -> list[ResidueMatrix]:
        return sorted(self.elements, key=lambda r: r.rows)


def enumerate_group(
    generators: Sequence[ResidueMatrix],
    n: int,
    m: int,
    max_size: int = DEFAULT_MAX_SIZE,
) -> FiniteGroupTable:
    """Closure of the generators (and their inverses) under multiplication."""
    gens = []
    for g in generators:
        if g.n != n or g.m != m:
            raise ValueError("generator dimension or modulus mismatch")
        if math.gcd(g.det(), m) != 1:
            raise ValueError(f"generator determinant {g.det()} is not a unit mod {m}")
        gens.append(g)
    step = []
    for g in gens:
        step.append(g)
        step.append(g.inverse())
    ident = ResidueMatrix.identity(n, m)
    elements = {ident}
    frontier = deque([ident])
    while frontier:
        x = frontier.popleft()
        for g in step:
            y = x * g
            if y not in elements:
                elements.add(y)
                if len(elements) > max_size:
                    raise GroupSizeLimitError(f"group exceeds {max_size} elements")
                frontier.append(y)
    return FiniteGroupTable(n=n, m=m, generators=tuple(gens), elements=frozenset(elements))


def power_subgroup(
    group: FiniteGroupTable,
    subgroup_generators: Sequence[ResidueMatrix],
    t: int,
    max_size: int = DEFAULT_MAX_SIZE,
) -> FiniteGroupTable:
    """The subgroup generated by all t-th powers of elements of <subgroup_generators>."""
    if t < 1:
        raise ValueError("power must be positive")
    sub = enumerate_group(subgroup_generators, group.n, group.m, max_size=max_size)
    if not sub.elements <= group.elements:
        raise ValueError("given generators do not lie inside the ambient group")
    powers = sorted({x ** t for x in sub.elements}, key=lambda r: r.rows)
    return enumerate_group(powers, group.n, group.m, max_size=max_size)


def find_normality_violation(
    subgroup: FiniteGroupTable, group: FiniteGroupTable
) -> Optional[tuple[ResidueMatrix, ResidueMatrix]]:
    """A pair (g, h) with g h g^-1 outside the subgroup, or None.

    Conjugating subgroup generators by group generators suffices: if every
    such conjugate stays inside, conjugation by any product does too (the
    subgroup is finite, so containment forces equality).
    """
    if subgroup.n != group.n or subgroup.m != group.m:
        raise ValueError("dimension or modulus mismatch")
    if not subgroup.elements <= group.elements:
        raise ValueError("first argument is not contained in the second")
    for g in group.generators:
        ginv = g.inverse()
        for h in subgroup.generators:
            if g * h * ginv not in subgroup.elements:
                return (g, h)
    return None


def is_normal(subgroup: FiniteGroupTable, group: FiniteGroupTable) -> bool:
    return find_normality_violation(subgroup, group) is None


def conjugacy_classes(group: FiniteGroupTable) -> list[frozenset[ResidueMatrix]]:
    """Conjugacy classes as orbits under conjugation by the generators."""
    conjugators = [(g, g.inverse()) for g in group.generators]
    remaining = set(group.elements)
    classes = []
    for seed in group.sorted_elements():
        if seed not in remaining:
            continue
        orbit = {seed}
        queue = deque([seed])
        while queue:
            x = queue.popleft()
            for g, ginv in conjugators:
                y = g * x * ginv
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        remaining -= orbit
        classes.append(frozenset(orbit))
    return classes


def normal_subgroups(
    group: FiniteGroupTable, max_classes: int = 20
) -> list[FiniteGroupTable]:
    """All normal subgroups, as unions of conjugacy classes closed under product.

    Exponential in the class count, hence the guard; fine for the group
    orders this library works with.
    """
    classes = conjugacy_classes(group)
    if len(classes) > max_classes:
        raise GroupSizeLimitError(f"too many conjugacy classes ({len(classes)})")
    ident = ResidueMatrix.identity(group.n, group.m)
    ident_idx = next(i for i, cls in enumerate(classes) if ident in cls)
    others = [i for i in range(len(classes)) if i != ident_idx]
    order = group.order
    found = []
    for mask in range(2 ** len(others)):
        chosen = [ident_idx] + [others[b] for b in range(len(others)) if mask >> b & 1]
        size = sum(len(classes[i]) for i in chosen)
        if order % size:
            continue
        union = frozenset().union(*(classes[i] for i in chosen))
        if _closed_under_product(union):
            found.append(
                FiniteGroupTable(
                    n=group.n,
                    m=group.m,
                    generators=tuple(sorted(union, key=lambda r: r.rows)),
                    elements=union,
                )
            )
    found.sort(key=lambda table: (table.order, [r.rows for r in table.sorted_elements()]))
    return found


def _closed_under_product(elements: frozenset[ResidueMatrix]) -> bool:
    for x in elements:
        for y in elements:
            if x * y not in elements:
                return False
    return True


def elementary_generators_mod(n: int, m: int) -> list[ResidueMatrix]:
    """All elementary matrices E(i,j) reduced mod m."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            rows[i][j] = 1
            gens.append(ResidueMatrix(rows, m))
    return gens


def sl_order(n: int, m: int) -> int:
    """|SL_n(Z_m)| by the standard prime-power formula, multiplicative in m."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    total = 1
    left = m
    p = 2
    while p * p <= left:
        if left % p == 0:
            e = 0
            while left % p == 0:
                left //= p
                e += 1
            total *= _sl_order_prime_power(n, p, e)
        p += 1
    if left > 1:
        total *= _sl_order_prime_power(n, left, 1)
    return total


def _sl_order_prime_power(n: int, p: int, e: int) -> int:
    over_field = p ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        over_field *= p**i - 1
    return p ** ((e - 1) * (n * n - 1)) * over_field


@dataclass(frozen=True)
class IndexCheckReport:
    """Outcome of the coset bookkeeping check in one dimension."""

    n: int
    image_order: int
    expected_order: int
    representatives: int
    representatives_in_group: bool
    mod2_images_distinct: bool
    samples_covered: bool

    @property
    def passed(self) -> bool:
        return (
            self.image_order == self.expected_order
            and self.representatives == self.expected_order
            and self.representatives_in_group
            and self.mod2_images_distinct
            and self.samples_covered
        )


def coset_representatives(n: int) -> list[tuple[bool, Permutation]]:
    """One integer representative per mod-2 class: even sigmas plus tau-led ones."""
    import itertools

    reps = []
    swap = Permutation.transposition(n, 1, 2) if n >= 2 else None
    for images in itertools.permutations(range(1, n + 1)):
        sigma = Permutation(images)
        if sigma.is_even:
            reps.append((False, sigma))
        else:
            reps.append((True, sigma * swap))
    return reps


def representative_matrix(uses_tau: bool, sigma: Permutation) -> IntMatrix:
    lead = tau_matrix(sigma.n) if uses_tau else IntMatrix.identity(sigma.n)
    return lead * sigma.matrix()


def index_check(n: int, samples: int = 25, seed: int = 2024) -> IndexCheckReport:
    """Verify the index-n! coset structure of the even-products group at level 2.

    Enumerates the mod-2 image of the group from generator images, builds
    one integer representative per permutation class, and checks random
    group samples always land on a representative's class.
    """
    if n not in (2, 3, 4):
        raise ValueError("index check supports n in {2, 3, 4}")
    gen_images = [tau_matrix(n).reduce_mod(2)]
    if n >= 3:
        for start in range(1, n - 1):
            cyc = Permutation.from_cycles(n, [(start, start + 1, start + 2)])
            gen_images.append(cyc.matrix().reduce_mod(2))
    image = enumerate_group(gen_images, n, 2)
    expected = math.factorial(n)

    reps = coset_representatives(n)
    rep_mats = [representative_matrix(uses_tau, sigma) for uses_tau, sigma in reps]
    all_in = all(in_W2(mat) for mat in rep_mats)
    mod2_images = {mat.reduce_mod(2) for mat in rep_mats}
    distinct = len(mod2_images) == len(rep_mats) and mod2_images == image.elements

    rng = random.Random(seed)
    covered = True
    for _ in range(samples):
        uses_tau, sigma = reps[rng.randrange(len(reps))]
        gamma = random_congruence_word(n, rng, max_letters=12).matrix()
        sample = representative_matrix(uses_tau, sigma) * gamma
        if not in_W2(sample) or sample.reduce_mod(2) not in mod2_images:
            covered = False
            break
        if mod2_class(sample) is None:
            covered = False
            break
    return IndexCheckReport(
        n=n,
        image_order=image.order,
        expected_order=expected,
        representatives=len(rep_mats),
        representatives_in_group=all_in,
        mod2_images_distinct=distinct,
        samples_covered=covered,
    )
