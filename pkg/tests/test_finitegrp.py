import itertools
import random
from collections import deque

import pytest

from spheremat.finitegrp import (
    GroupSizeLimitError,
    conjugacy_classes,
    coset_representatives,
    elementary_generators_mod,
    enumerate_group,
    find_normality_violation,
    index_check,
    is_normal,
    normal_subgroups,
    power_subgroup,
    representative_matrix,
    sl_order,
)
from spheremat.intmat import IntMatrix, ResidueMatrix
from spheremat.subgroups import in_W2


def sl(n, m):
    return enumerate_group(elementary_generators_mod(n, m), n, m)


def brute_is_normal(subgroup, group):
    """Oracle: conjugate every subgroup element by every group element."""
    pairs = [(g, g.inverse()) for g in group.elements]
    return all(
        g * h * ginv in subgroup.elements
        for g, ginv in pairs
        for h in subgroup.elements
    )


def brute_normal_lattice(group):
    """Oracle: all normal subgroups as joins of single-element normal closures."""
    pairs = [(g, g.inverse()) for g in group.elements]
    ident = ResidueMatrix.identity(group.n, group.m)

    def close(seeds):
        elems = set(seeds) | {ident}
        frontier = deque(elems)
        while frontier:
            x = frontier.popleft()
            new = [x.inverse()]
            new.extend(g * x * ginv for g, ginv in pairs)
            new.extend(x * y for y in list(elems))
            new.extend(y * x for y in list(elems))
            for y in new:
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return frozenset(elems)

    closures = {close([h]) for h in group.elements}
    lattice = set(closures)
    frontier = deque(lattice)
    while frontier:
        a = frontier.popleft()
        for b in list(lattice):
            joined = close(a | b)
            if joined not in lattice:
                lattice.add(joined)
                frontier.append(joined)
    return lattice


# ---------------------------------------------------------------------------
# enumeration and orders
# ---------------------------------------------------------------------------

def test_order_formula_matches_enumeration():
    for n, m in ((2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2)):
        assert sl(n, m).order == sl_order(n, m)


def test_known_orders():
    assert sl_order(2, 2) == 6
    assert sl_order(2, 3) == 24
    assert sl_order(2, 4) == 48
    assert sl_order(3, 2) == 168


def test_trivial_generators():
    ident = ResidueMatrix.identity(2, 5)
    assert enumerate_group([ident], 2, 5).order == 1
    assert enumerate_group([], 2, 5).order == 1


def test_enumerate_rejects_bad_generators():
    with pytest.raises(ValueError):
        enumerate_group([ResidueMatrix([[2, 0], [0, 1]], 4)], 2, 4)
    with pytest.raises(ValueError):
        enumerate_group([ResidueMatrix.identity(3, 4)], 2, 4)


def test_enumerate_size_guard():
    with pytest.raises(GroupSizeLimitError):
        enumerate_group(elementary_generators_mod(2, 5), 2, 5, max_size=10)


def test_contains_and_sorted_elements():
    g = sl(2, 3)
    ident = ResidueMatrix.identity(2, 3)
    assert ident in g
    assert ResidueMatrix([[1, 1], [0, 1]], 3) in g
    elems = g.sorted_elements()
    assert len(elems) == g.order
    assert elems == sorted(elems, key=lambda r: r.rows)


# ---------------------------------------------------------------------------
# power subgroups
# ---------------------------------------------------------------------------

def test_power_subgroup_identity_exponent():
    g = sl(2, 3)
    sub = power_subgroup(g, elementary_generators_mod(2, 3), 1)
    assert sub.elements == g.elements


def test_power_subgroup_divides_group_order():
    g = sl(2, 4)
    for t in (2, 3, 4):
        sub = power_subgroup(g, elementary_generators_mod(2, 4), t)
        assert g.order % sub.order == 0
        assert sub.elements <= g.elements
        assert is_normal(sub, g)
        assert brute_is_normal(sub, g)


def test_power_subgroup_rejects_bad_input():
    g = sl(2, 4)
    with pytest.raises(ValueError):
        power_subgroup(g, elementary_generators_mod(2, 4), 0)
    kernel = enumerate_group([ResidueMatrix([[1, 2], [0, 1]], 4)], 2, 4)
    with pytest.raises(ValueError):
        power_subgroup(kernel, elementary_generators_mod(2, 4), 2)


def test_reduction_kernel_is_normal():
    g = sl(2, 4)
    ident = IntMatrix.identity(2)
    kernel_elems = sorted(
        (x for x in g.elements if all(
            (v - w) % 2 == 0
            for row_x, row_i in zip(x.rows, ident.rows)
            for v, w in zip(row_x, row_i)
        )),
        key=lambda r: r.rows,
    )
    kernel = enumerate_group(kernel_elems, 2, 4)
    assert kernel.order == 8  # index 6 = |SL2(Z/2)|
    assert is_normal(kernel, g)
    assert brute_is_normal(kernel, g)


# ---------------------------------------------------------------------------
# normality
# ---------------------------------------------------------------------------

def test_whole_group_and_trivial_subgroup_are_normal():
    g = sl(2, 3)
    triv = enumerate_group([], 2, 3)
    assert is_normal(triv, g)
    assert is_normal(g, g)


def test_cyclic_elementary_subgroup_is_not_normal():
    g = sl(2, 3)
    sub = enumerate_group([ResidueMatrix([[1, 1], [0, 1]], 3)], 2, 3)
    assert sub.order == 3
    witness = find_normality_violation(sub, g)
    assert witness is not None
    conj, elem = witness
    assert conj * elem * conj.inverse() not in sub.elements
    assert not brute_is_normal(sub, g)


def test_normality_agrees_with_brute_oracle():
    g = sl(2, 4)
    rng = random.Random(91)
    elems = g.sorted_elements()
    for _ in range(12):
        gens = [elems[rng.randrange(len(elems))] for _ in range(rng.randint(1, 2))]
        sub = enumerate_group(gens, 2, 4)
        assert is_normal(sub, g) == brute_is_normal(sub, g)


def test_normality_rejects_non_subgroup():
    g24 = sl(2, 3)
    with pytest.raises(ValueError):
        find_normality_violation(sl(2, 2), g24)


# ---------------------------------------------------------------------------
# conjugacy classes and normal subgroups
# ---------------------------------------------------------------------------

def test_conjugacy_classes_partition():
    g = sl(2, 3)
    classes = conjugacy_classes(g)
    assert sum(len(c) for c in classes) == g.order
    seen = set()
    for c in classes:
        assert not (c & seen)
        seen |= c
        assert g.order % len(c) == 0  # orbit sizes divide the group order
    ident = ResidueMatrix.identity(2, 3)
    assert frozenset([ident]) in classes


def test_normal_subgroup_orders_small_special_linear():
    g = sl(2, 3)
    subs = normal_subgroups(g)
    assert [s.order for s in subs] == [1, 2, 8, 24]
    for s in subs:
        assert is_normal(s, g)
        assert brute_is_normal(s, g)


def test_normal_subgroups_match_brute_lattice():
    for m in (3, 4):
        g = sl(2, m)
        got = {s.elements for s in normal_subgroups(g)}
        assert got == brute_normal_lattice(g)


def test_normal_subgroups_class_guard():
    g = sl(2, 3)
    with pytest.raises(GroupSizeLimitError):
        normal_subgroups(g, max_classes=3)


# ---------------------------------------------------------------------------
# coset bookkeeping
# ---------------------------------------------------------------------------

def test_coset_representatives_all_dimensions():
    for n in (2, 3, 4):
        reps = coset_representatives(n)
        assert len(reps) == len(list(itertools.permutations(range(n))))
        mats = [representative_matrix(uses_tau, sigma) for uses_tau, sigma in reps]
        assert all(in_W2(m) for m in mats)
        assert len({m.reduce_mod(2) for m in mats}) == len(mats)


def test_index_check_passes():
    for n in (2, 3, 4):
        report = index_check(n)
        assert report.passed
        assert report.image_order == report.expected_order


def test_index_check_rejects_out_of_range():
    with pytest.raises(ValueError):
        index_check(5)
