"""Signatures, subalgebra generation and the theory plugins."""

import itertools
import random

import pytest

from dualaffine.errors import CapabilityError, DomainError
from dualaffine.freegroup import Word, parse_word
from dualaffine.instances import FinMod
from dualaffine.theory import (EMPTY, GROUP, Signature, TAlgebra, _saturate, free_group_algebra,
                               generate_subalgebra, is_closed, is_homomorphism, module_theory)
from oracles import integer_span, naive_closure, tw_closure, vector_ops


def small_algebras():
    """A few finite algebras with at most 6 elements."""
    sig = Signature((("f", 1), ("g", 2)))
    yield TAlgebra(sig, {"f": lambda x: (x + 1) % 3, "g": lambda x, y: max(x, y)}, elements=range(3))
    yield TAlgebra(sig, {"f": lambda x: (2 * x) % 6, "g": lambda x, y: (x * y) % 6}, elements=range(6))
    yield module_theory(2).vector_algebra(2)
    yield TAlgebra(Signature((("c", 0), ("s", 1))), {"c": lambda: 0, "s": lambda x: min(x + 2, 5)}, elements=range(6))


def ops_of(alg):
    return [(n, (lambda s: lambda *xs: alg.apply(s, *xs))(s)) for s, n in alg.signature.operations]


def test_signature_rejects_duplicates():
    with pytest.raises(DomainError):
        Signature((("f", 1), ("f", 2)))
    with pytest.raises(DomainError):
        Signature((("f", -1),))


def test_generation_closed_minimal_idempotent():
    for alg in small_algebras():
        carrier = list(alg.elements)
        closed_sets = [set(c) for r in range(len(carrier) + 1) for c in itertools.combinations(carrier, r)
                       if is_closed(alg, c)]
        for r in range(3):
            for gens in itertools.combinations(carrier, r):
                sub = generate_subalgebra(alg, gens)
                assert is_closed(alg, sub.elements)
                assert sub.elements == naive_closure(ops_of(alg), gens)
                for c in closed_sets:
                    if set(gens) <= c:
                        assert sub.elements <= c
                again = generate_subalgebra(alg, sub.elements)
                assert again.elements == sub.elements


def test_empty_theory_examples():
    alg = TAlgebra(EMPTY.signature, {}, elements=["a", "b", "c"])
    assert generate_subalgebra(alg, ["a", "b"]).elements == {"a", "b"}


def test_module_generation_example():
    alg = module_theory(2).vector_algebra(2)
    assert generate_subalgebra(alg, [(1, 0)]).elements == {(0, 0), (1, 0)}


def test_non_carrier_generator():
    alg = module_theory(2).vector_algebra(2)
    with pytest.raises(DomainError):
        generate_subalgebra(alg, [(2, 0)])


def test_symbolic_without_closure():
    alg = TAlgebra(GROUP.signature, {"mul": None, "inv": None, "one": None}, contains=lambda x: True)
    with pytest.raises(CapabilityError):
        generate_subalgebra(alg, [1])


def test_group_generation_example():
    F2 = free_group_algebra(2)
    sub = generate_subalgebra(F2, [parse_word("a a", 2), parse_word("b", 2)])
    assert parse_word("a a", 2) in sub
    assert parse_word("a", 2) not in sub
    closure = tw_closure([(0, 0), (2,)], 2, 8)
    for w in closure:
        assert Word(2, tuple((x >> 1, -1 if x & 1 else 1) for x in w)) in sub


@pytest.mark.parametrize("m,k", [(2, 2), (3, 2), (4, 2), (2, 3)])
def test_span_closure_matches_saturation(m, k):
    inst = FinMod(m)
    X = inst.free(k)
    alg = inst.hom_S(X)
    rng = random.Random(m * 10 + k)
    vs = list(alg.elements)
    for _ in range(30):
        gens = rng.sample(vs, rng.randint(0, 2))
        fast = generate_subalgebra(alg, gens).elements
        assert fast == frozenset(_saturate(alg, gens))
        assert fast == integer_span(gens, m, k)
        assert fast == naive_closure(vector_ops(m, k), gens)


def test_hom_from_free_examples():
    F2 = free_group_algebra(2)
    h = GROUP.hom_from_free(1, [parse_word("a b", 2)], F2)
    assert h(parse_word("a a^-1 a a", 1)) == parse_word("a b a b", 2)
    e = EMPTY.hom_from_free(2, ["u", "v"], None)
    assert [e(i) for i in range(2)] == ["u", "v"]
    mt = module_theory(3)
    cod = mt.vector_algebra(2)
    h = mt.hom_from_free(1, [(1, 2)], cod)
    assert {h(v) for v in mt.free_algebra(1).elements} == {(0, 0), (1, 2), (2, 1)}
    assert is_homomorphism(h, mt.free_algebra(1), cod)


def test_is_homomorphism_examples():
    for alg in small_algebras():
        assert is_homomorphism(lambda x: x, alg, alg)
    F1 = free_group_algebra(1)
    assert is_homomorphism(lambda w: ~w, F1, F1)
    F2 = free_group_algebra(2)
    assert not is_homomorphism(lambda w: ~w, F2, F2)
    mt = module_theory(2)
    assert is_homomorphism(lambda v: (v[0],), mt.vector_algebra(2), mt.vector_algebra(1))
    assert not is_homomorphism(lambda v: (1,), mt.vector_algebra(2), mt.vector_algebra(1))


def test_plugin_laws_hold():
    for m in (2, 3, 4):
        mt = module_theory(m)
        assert mt.check_laws(mt.vector_algebra(2)) == []
    assert GROUP.check_laws(free_group_algebra(3)) == []
    bad = TAlgebra(GROUP.signature, {"mul": lambda x, y: (x - y) % 3, "inv": lambda x: x, "one": lambda: 0}, elements=range(3))
    assert "associative" in GROUP.check_laws(bad)
