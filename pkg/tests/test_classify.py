import itertools

import pytest

from prolong.classify import (
    are_equivalent,
    brute_force_coverings,
    difference_cocycle,
    enumerate_classes,
    equivalent_extensions,
    to_crossed_product,
    torsor_act,
    witness_is_valid,
)
from prolong.cohomology import cohomology_group, same_class
from prolong.errors import MismatchedFrame, ObstructionNonzero, SearchBoundExceeded
from prolong.extensions import make_extension, validate_prolongation
from prolong.fixtures import builtin
from prolong.groups import Homomorphism, identity_hom, inverse_hom, compose, trivial_hom
from prolong.obstruction import (
    PreProlongation,
    build_prolongation,
    derive,
    verify_covering,
)

from test_obstruction import (
    pre_canonical,
    pre_identity_gamma,
    pre_inversion,
    pre_obstructed,
    pre_z8,
)


def pre_z3_over_z3():
    """Kernel Z3 over a trivial base quotient with target quotient Z3."""
    z1, z3 = builtin("Z1"), builtin("Z3")
    e0 = make_extension(identity_hom(z3), trivial_hom(z3, z1))
    ident = (0, 1, 2)
    return PreProlongation(e0=e0, alpha=identity_hom(z3),
                           gamma=Homomorphism(z1, z3, (0,)),
                           theta=(ident, ident, ident))


VANISHING = [pre_canonical, pre_identity_gamma, pre_inversion, pre_z8,
             pre_z3_over_z3]


def canonical_classes():
    return enumerate_classes(pre_canonical())


# --- equivalence -----------------------------------------------------------------

def test_self_equivalence_gives_identity_witness():
    p = build_prolongation(pre_canonical()).prolongation
    w = are_equivalent(p, p)
    assert w is not None and witness_is_valid(w)
    assert w.beta_star.map == tuple(range(p.e.b.order))


def test_klein_vs_cyclic_not_equivalent():
    classes = canonical_classes()
    assert are_equivalent(classes[0].representative,
                          classes[1].representative) is None


def test_equivalence_is_symmetric_and_transitive():
    base = build_prolongation(pre_z8()).prolongation
    other = torsor_act((0,), base)
    third = torsor_act((0,), other)
    w12 = are_equivalent(base, other)
    w21 = are_equivalent(other, base)
    w23 = are_equivalent(other, third)
    assert w12 and w21 and w23
    # the inverse of a witness is a witness for the reversed pair
    inv = inverse_hom(w12.beta_star)
    assert all(inv.map[other.e.j.map[a]] == base.e.j.map[a]
               for a in base.e.a.elements())
    # composition of witnesses is a witness for the composite pair
    composed = compose(w23.beta_star, w12.beta_star)
    w13 = are_equivalent(base, third)
    assert w13 is not None
    assert all(base.e.p.map[b] == third.e.p.map[composed.map[b]]
               for b in base.e.b.elements())


def test_mismatched_frame_raises():
    p1 = build_prolongation(pre_canonical()).prolongation
    p2 = build_prolongation(pre_z8()).prolongation
    with pytest.raises(MismatchedFrame):
        are_equivalent(p1, p2)


def test_search_bound():
    p = build_prolongation(pre_canonical()).prolongation
    with pytest.raises(SearchBoundExceeded):
        are_equivalent(p, p, max_candidates=1)


def test_bare_extension_equivalence():
    z2, z4, v4 = builtin("Z2"), builtin("Z4"), builtin("V4")
    cyclic_ext = make_extension(Homomorphism(z2, z4, (0, 2)),
                                Homomorphism(z4, z2, (0, 1, 0, 1)))
    klein_ext = make_extension(Homomorphism(z2, v4, (0, 2)),
                               Homomorphism(v4, z2, (0, 1, 0, 1)))
    assert equivalent_extensions(cyclic_ext, cyclic_ext) is not None
    assert equivalent_extensions(cyclic_ext, klein_ext) is None


# --- reduction to crossed products --------------------------------------------------

def test_to_crossed_product_identity_on_canonical_form():
    p = build_prolongation(pre_canonical()).prolongation
    target, witness = to_crossed_product(p)
    assert witness_is_valid(witness)
    assert witness.beta_star.map == tuple(range(p.e.b.order))
    assert target.e.b.table == p.e.b.table


def test_to_crossed_product_of_plain_ladder():
    """A hand-built cyclic ladder reduces to the crossed product with h != 0."""
    z1, z2, z4 = builtin("Z1"), builtin("Z2"), builtin("Z4")
    e0 = make_extension(identity_hom(z2), trivial_hom(z2, z1))
    ext = make_extension(Homomorphism(z2, z4, (0, 2)),
                         Homomorphism(z4, z2, (0, 1, 0, 1)))
    ladder = __import__("prolong.extensions", fromlist=["Prolongation"]).Prolongation(
        e0=e0, e=ext, alpha=identity_hom(z2),
        beta=Homomorphism(z2, z4, (0, 2)), gamma=Homomorphism(z1, z2, (0,)))
    assert validate_prolongation(ladder).ok
    target, witness = to_crossed_product(ladder)
    assert witness_is_valid(witness)
    assert target.e.b.order_profile() == (1, 2, 4, 4)
    # the Klein-form covering reduces with h identically zero
    klein = build_prolongation(pre_canonical()).prolongation
    target2, witness2 = to_crossed_product(klein)
    assert witness_is_valid(witness2)
    assert target2.e.b.order_profile() == (1, 2, 2, 2)


# --- difference cocycles -------------------------------------------------------------

def test_difference_with_itself_is_zero():
    p = build_prolongation(pre_canonical()).prolongation
    assert difference_cocycle(p, p).is_zero()


def test_difference_klein_vs_cyclic():
    classes = canonical_classes()
    by_profile = {c.representative.e.b.order_profile(): c.representative
                  for c in classes}
    klein = by_profile[(1, 2, 2, 2)]
    cyclic4 = by_profile[(1, 2, 4, 4)]
    r = difference_cocycle(klein, cyclic4)
    assert r.value((1, 1)) == 1 and not r.is_zero()


def test_relative_class_is_difference_from_base():
    from prolong.classify import classifying_cocycle_relative
    classes = canonical_classes()
    base = build_prolongation(pre_canonical()).prolongation
    h2 = cohomology_group(2, derive(pre_canonical()).module)
    for c in classes:
        rel = classifying_cocycle_relative(c.representative, base)
        assert h2.coordinates(rel) == c.coordinates


def test_difference_realizes_torsor_shift():
    pre = pre_z8()
    base = build_prolongation(pre).prolongation
    h2 = cohomology_group(2, derive(pre).module)
    for coords in itertools.product(*(range(d) for d in h2.invariant_factors)):
        shifted = torsor_act(coords, base)
        r = difference_cocycle(base, shifted)
        assert h2.coordinates(r) == coords
        assert same_class(r, h2.from_coordinates(coords))


def test_difference_requires_same_theta():
    # the inversion frame carries two valid thetas; their coverings share the
    # frame but induce different crossed modules
    pre_inv = pre_inversion()
    ident6 = tuple(range(6))
    pre_triv = PreProlongation(e0=pre_inv.e0, alpha=pre_inv.alpha,
                               gamma=pre_inv.gamma, theta=(ident6,) * 4)
    p1 = build_prolongation(pre_inv).prolongation
    p2 = build_prolongation(pre_triv).prolongation
    with pytest.raises(MismatchedFrame):
        difference_cocycle(p1, p2)


# --- torsor action ---------------------------------------------------------------------

def test_torsor_zero_acts_trivially():
    for factory in (pre_canonical, pre_z8, pre_inversion):
        base = build_prolongation(factory()).prolongation
        h2 = cohomology_group(2, derive(factory()).module)
        zero = (0,) * len(h2.invariant_factors)
        acted = torsor_act(zero, base)
        assert are_equivalent(base, acted) is not None


def test_torsor_moves_klein_to_cyclic():
    base = build_prolongation(pre_canonical()).prolongation
    acted = torsor_act((1,), base)
    assert acted.e.b.order_profile() == (1, 2, 4, 4)
    assert are_equivalent(base, acted) is None


def test_torsor_involution_returns():
    base = build_prolongation(pre_canonical()).prolongation
    twice = torsor_act((1,), torsor_act((1,), base))
    assert are_equivalent(base, twice) is not None


def test_torsor_freeness():
    for factory in VANISHING:
        pre = factory()
        base = build_prolongation(pre).prolongation
        h2 = cohomology_group(2, derive(pre).module)
        for coords in itertools.product(*(range(d) for d in h2.invariant_factors)):
            acted = torsor_act(coords, base)
            equivalent = are_equivalent(base, acted) is not None
            assert equivalent == all(c == 0 for c in coords)


def test_torsor_transitivity_by_difference():
    pre = pre_z3_over_z3()
    classes = enumerate_classes(pre)
    for c1 in classes:
        for c2 in classes:
            tau = difference_cocycle(c1.representative, c2.representative)
            h2 = cohomology_group(2, derive(pre).module)
            moved = torsor_act(h2.coordinates(tau), c1.representative)
            assert are_equivalent(moved, c2.representative) is not None


# --- enumeration and the exhaustive oracle ----------------------------------------------

def test_trivial_quotient_single_class():
    assert len(enumerate_classes(pre_identity_gamma())) == 1
    assert len(brute_force_coverings(pre_identity_gamma())) == 1


def test_canonical_two_classes():
    classes = canonical_classes()
    assert len(classes) == 2
    profiles = sorted(c.representative.e.b.order_profile() for c in classes)
    assert profiles == [(1, 2, 2, 2), (1, 2, 4, 4)]
    assert len(brute_force_coverings(pre_canonical())) == 2


def test_z3_kernel_single_class():
    """Quotient Z2 with kernel Z3 and trivial action: gcd kills H^2."""
    z1, z2, z3 = builtin("Z1"), builtin("Z2"), builtin("Z3")
    e0 = make_extension(identity_hom(z3), trivial_hom(z3, z1))
    ident = (0, 1, 2)
    pre = PreProlongation(e0=e0, alpha=identity_hom(z3),
                          gamma=Homomorphism(z1, z2, (0,)),
                          theta=(ident, ident))
    classes = enumerate_classes(pre, verify_distinct=True)
    assert len(classes) == 1
    assert len(brute_force_coverings(pre)) == 1


def test_z3_over_z3_three_classes():
    pre = pre_z3_over_z3()
    classes = enumerate_classes(pre, verify_distinct=True)
    assert len(classes) == 3
    profiles = sorted(c.representative.e.b.order_profile() for c in classes)
    assert profiles[0] == (1, 3, 3, 3, 3, 3, 3, 3, 3)
    assert profiles[1] == profiles[2] == (1, 3, 3, 9, 9, 9, 9, 9, 9)
    assert len(brute_force_coverings(pre)) == 3


def test_klein_quotient_eight_classes():
    """Rank-2 quotient: H^2(V4, Z2) = (Z2)^3 gives eight covering classes,
    realizing the four groups of order 8 with a center containing the kernel."""
    from collections import Counter
    z1, z2, v4 = builtin("Z1"), builtin("Z2"), builtin("V4")
    e0 = make_extension(identity_hom(z2), trivial_hom(z2, z1))
    pre = PreProlongation(e0=e0, alpha=identity_hom(z2),
                          gamma=Homomorphism(z1, v4, (0,)),
                          theta=((0, 1),) * 4)
    h2 = cohomology_group(2, derive(pre).module)
    assert h2.invariant_factors == (2, 2, 2)
    classes = enumerate_classes(pre)
    coverings = brute_force_coverings(pre)
    assert len(classes) == len(coverings) == 8
    expected = Counter({
        (1, 2, 2, 2, 2, 2, 2, 2): 1,   # elementary abelian
        (1, 2, 2, 2, 4, 4, 4, 4): 3,   # Z4 x Z2
        (1, 2, 2, 2, 2, 2, 4, 4): 3,   # dihedral
        (1, 2, 4, 4, 4, 4, 4, 4): 1,   # quaternion
    })
    assert Counter(c.representative.e.b.order_profile() for c in classes) == expected
    assert Counter(p.e.b.order_profile() for p in coverings) == expected


def test_obstructed_has_no_coverings():
    assert brute_force_coverings(pre_obstructed()) == ()
    with pytest.raises(ObstructionNonzero):
        enumerate_classes(pre_obstructed())


@pytest.mark.parametrize("factory", VANISHING)
def test_counts_agree_with_h2(factory):
    pre = factory()
    classes = enumerate_classes(pre, verify_distinct=True)
    coverings = brute_force_coverings(pre)
    h2 = cohomology_group(2, derive(pre).module)
    assert len(classes) == len(coverings) == h2.order
    for c in classes:
        assert validate_prolongation(c.representative).ok
        assert verify_covering(c.representative, pre)
        hits = [p for p in coverings
                if are_equivalent(c.representative, p) is not None]
        assert len(hits) == 1


def test_outputs_deterministic():
    first = brute_force_coverings(pre_canonical())
    second = brute_force_coverings(pre_canonical())
    assert [p.e.b.table for p in first] == [p.e.b.table for p in second]
    c1 = enumerate_classes(pre_z8())
    c2 = enumerate_classes(pre_z8())
    assert [c.representative.e.b.table for c in c1] == \
        [c.representative.e.b.table for c in c2]
