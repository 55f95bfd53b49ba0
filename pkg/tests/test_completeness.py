"""Separation, completeness, projectivity and the copower theorem."""

import itertools

import pytest

from dualaffine.affine import (AffineMorphism, DuallyAffineSpace, check_morphism, copower_s_one, direct_image,
                               final_structure, indiscrete, s_one)
from dualaffine.census import finset_quotients, quotients, spaces
from dualaffine.completeness import (EVIDENCE, check_projectivity, classify_space, counit, counit_quotient,
                                     is_regularly_separating, is_separating, is_zeta_complete,
                                     verify_copower_theorem)
from dualaffine.errors import CapabilityError, DomainError
from dualaffine.freegroup import parse_word
from dualaffine.instances import FinMod, FinSet, Rose
from dualaffine.zariski import classify
from oracles import integer_span, is_basis


def all_spaces(inst, max_size):
    return [sp for n in range(max_size + 1) for sp in spaces(inst, n)]


def separating_by_definition(sp, codomains):
    """g . a == h . a for all a in A forces g == h, over the given target spaces."""
    inst = sp.instance
    for Y in codomains:
        maps_ = [f for f in inst.enumerate_morphisms(sp.X, Y.X) if check_morphism(f, sp, Y)]
        for g, h in itertools.combinations(maps_, 2):
            if all(inst.apply_point(g, a) == inst.apply_point(h, a) for a in sp.elements()):
                return False
    return True


# --- the counit ---------------------------------------------------------------


def test_counit_examples():
    fs = FinSet()
    assert counit(s_one(fs)).eps == fs.identity(1)
    d = counit(indiscrete(fs, 2))
    assert fs.is_iso(d.eps)
    d = counit(DuallyAffineSpace(fs, 2, elements=[0]))
    assert d.eps.dom == 1 and not fs.is_epi(d.eps)


def test_counit_is_final_and_restricts_to_points():
    for inst, size in ((FinSet(), 4), (FinMod(2), 2), (FinMod(2, "empty"), 2), (FinMod(3), 1)):
        for sp in all_spaces(inst, size):
            d = counit(sp)
            for a in sp.elements():
                assert inst.point(inst.compose(d.eps, d.injection(a))) == a
            assert direct_image(d.eps, d.J).A == sp.A


def test_counit_needs_finite_structure():
    r = Rose()
    with pytest.raises(CapabilityError):
        counit(indiscrete(r, 2))


# --- classifiers -------------------------------------------------------------------


def test_finset_verdicts():
    fs = FinSet()
    for sp in all_spaces(fs, 4):
        full = len(sp.elements()) == sp.X
        assert is_separating(sp) == full == is_regularly_separating(sp)
        assert is_zeta_complete(sp) == full


def test_separating_matches_definition():
    fs = FinSet()
    targets = all_spaces(fs, 2)
    for sp in all_spaces(fs, 3):
        assert is_separating(sp) == separating_by_definition(sp, targets)
    fm = FinMod(2, "empty")
    targets = all_spaces(fm, 1)
    for sp in all_spaces(fm, 2):
        assert is_separating(sp) == separating_by_definition(sp, targets)


@pytest.mark.parametrize("m", [2, 3])
def test_finmod_module_verdicts(m):
    fm = FinMod(m)
    for sp in all_spaces(fm, 2):
        full = len(sp.elements()) == sp.X.size
        assert is_separating(sp) == full
        assert is_zeta_complete(sp) == full


@pytest.mark.parametrize("m,k", [(2, 0), (2, 1), (2, 2), (3, 1), (4, 1)])
def test_finmod_empty_complete_iff_basis(m, k):
    fm = FinMod(m, "empty")
    for sp in spaces(fm, k):
        A = sp.elements()
        spans = len(integer_span(A, m, k)) == m ** k
        assert is_separating(sp) == spans
        assert is_zeta_complete(sp) == is_basis(A, m, k)


def test_finmod_empty_examples():
    fm = FinMod(2, "empty")
    X = fm.free(2)
    basis = DuallyAffineSpace(fm, X, elements=[(1, 0), (0, 1)])
    three = DuallyAffineSpace(fm, X, elements=[(1, 0), (0, 1), (1, 1)])
    assert classify_space(basis).zeta_complete is True
    v = classify_space(three)
    assert v.separating and v.regularly_separating and v.zeta_complete is False
    assert v.witness == {"reason": "theta of the counit is not an isomorphism"}


def test_chain_of_implications():
    cases = [(FinSet(), 4), (FinMod(2), 2), (FinMod(2, "empty"), 2), (FinMod(3), 1), (FinMod(3, "empty"), 1)]
    for inst, size in cases:
        for sp in all_spaces(inst, size):
            v = classify_space(sp)
            if v.zeta_complete is True:
                assert v.regularly_separating
            if v.regularly_separating:
                assert v.separating


def test_empty_theory_shortcut_agrees():
    cases = [(FinSet(), 4), (FinMod(2, "empty"), 2), (FinMod(3, "empty"), 1), (FinMod(4, "empty"), 1)]
    for inst, size in cases:
        for sp in all_spaces(inst, size):
            assert is_zeta_complete(sp, shortcut=True) == is_zeta_complete(sp)
            if is_regularly_separating(sp):
                assert classify(counit_quotient(sp))[1]  # the counit is sparse


def test_rose_verdicts():
    r = Rose()
    full = indiscrete(r, 2)
    v = classify_space(full)
    assert v.zeta_complete == EVIDENCE and v.mode == EVIDENCE
    assert v.sampling_bound == {"samples": 200, "max_length": 12, "seed": 0}
    sub = DuallyAffineSpace(r, 2, generators=[parse_word("a b", 2), parse_word("b a", 2)])
    v = classify_space(sub)
    assert not v.separating and v.zeta_complete is False and v.mode == "exact"
    assert v.witness == {"generators_outside_A": ["a", "b"]}
    # a different generating set of all of F_2
    other = DuallyAffineSpace(r, 2, generators=[parse_word("a b", 2), parse_word("b", 2)])
    assert classify_space(other).zeta_complete == EVIDENCE


def test_verdict_schema():
    v = classify_space(indiscrete(FinSet(), 2)).as_dict()
    assert set(v) == {"separating", "regularly_separating", "zeta_complete", "mode", "sampling_bound", "witness"}


# --- stability --------------------------------------------------------------


def test_separating_closed_under_epi_sinks():
    fs = FinSet()
    sep = [sp for sp in all_spaces(fs, 4) if is_separating(sp)]
    for sp in sep:
        for Y in range(sp.X + 1):
            for t in itertools.product(range(Y), repeat=sp.X):
                if len(set(t)) == Y:
                    assert is_separating(direct_image(fs.map(sp.X, Y, t), sp))
    small = [sp for sp in sep if sp.X <= 2]
    for a, b in itertools.combinations_with_replacement(small, 2):
        for Y in range(4):
            for ta in itertools.product(range(Y), repeat=a.X):
                for tb in itertools.product(range(Y), repeat=b.X):
                    if set(ta) | set(tb) == set(range(Y)):
                        fam = [(fs.map(a.X, Y, ta), a), (fs.map(b.X, Y, tb), b)]
                        assert is_separating(final_structure(fs, Y, fam))


# --- projectivity ------------------------------------------------------------


def final_maps_finset(max_size=3):
    fs = FinSet()
    for sp in all_spaces(fs, max_size):
        for Z in range(max_size + 1):
            for f in fs.enumerate_morphisms(sp.X, Z):
                yield AffineMorphism(sp, direct_image(f, sp), f)


def test_copowers_of_s_one_lift_through_final_maps():
    fs = FinSet()
    against = list(final_maps_finset(3))
    for n in range(3):
        report = check_projectivity(copower_s_one(fs, n).space, against)
        assert report.ok, report.failures[:3]
        assert report.tested == report.lifted


def test_separating_iff_final_maps_into_it_are_epi():
    fs = FinSet()
    finals = list(final_maps_finset(3))
    for sp in all_spaces(fs, 3):
        into = [h for h in finals if h.cod == sp]
        assert is_separating(sp) == all(fs.is_epi(h.f) for h in into)


def sparse_epis(inst, size):
    for sp in all_spaces(inst, size):
        for q in quotients(sp):
            if classify(q)[1]:
                yield AffineMorphism(sp, q.target, q.p)


def test_complete_iff_projective_for_sparse_epis():
    fm = FinMod(2, "empty")
    against = list(sparse_epis(fm, 2))
    seps = [sp for sp in all_spaces(fm, 2) if is_separating(sp)]
    for sp in seps:
        if not is_zeta_complete(sp):
            d = counit(sp)
            against.append(AffineMorphism(d.J, sp, d.eps))
    for sp in seps:
        report = check_projectivity(sp, against)
        assert report.ok == is_zeta_complete(sp)


def test_finset_complete_spaces_lift_through_sparse_epis():
    fs = FinSet()
    against = [AffineMorphism(q.source, q.target, q.p) for sp in all_spaces(fs, 3)
               for q in finset_quotients(sp) if classify(q)[1]]
    for n in range(3):
        assert check_projectivity(indiscrete(fs, n), against).ok


# --- the copower theorem ----------------------------------------------------------


@pytest.mark.parametrize("inst", [FinSet(), FinMod(2), FinMod(2, "empty"), FinMod(3)], ids=str)
def test_copower_theorem_small(inst):
    for n in range(3):
        report = verify_copower_theorem(inst, n)
        assert report.ok, report.failures
        assert report.classifier is True


def test_copower_theorem_examples():
    fs = FinSet()
    r2 = verify_copower_theorem(fs, 2)
    assert r2.ok and fs.is_iso(counit(copower_s_one(fs, 2).space).eps)
    r0 = verify_copower_theorem(fs, 0)
    assert r0.ok and r0.checked == 0
    rr = verify_copower_theorem(Rose(), 2)
    assert rr.ok and rr.mode == EVIDENCE and rr.checked == 200
    assert rr.sampling_bound["max_length"] == 12


def test_rose_theorem_deterministic():
    a = verify_copower_theorem(Rose(), 2, samples=50, seed=3).as_dict()
    b = verify_copower_theorem(Rose(), 2, samples=50, seed=3).as_dict()
    assert a == b


def test_counit_quotient_needs_a_regular_epi():
    fs = FinSet()
    with pytest.raises(DomainError):
        counit_quotient(DuallyAffineSpace(fs, 3, elements=[0, 1]))
    q = counit_quotient(indiscrete(fs, 3))
    assert fs.is_iso(q.p)
