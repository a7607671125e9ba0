from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kawashima.errors import DomainError
from kawashima.indices import (
    IndexVector,
    IndexWord,
    a_set,
    abscissa_rho,
    circled_star_product,
    compositions,
    harmonic_bar_product,
    harmonic_product,
    hoffman_dual,
    indices_up_to,
    is_admissible,
    ones,
    reverse,
    rho_closed_form,
    star_expand,
    weak_steps,
    weight,
)

from .conftest import index_vectors, nonempty_indices

V = IndexVector


def vec(*terms):
    return IndexVector({k: c for c, k in terms})


class TestASetAndDual:
    @pytest.mark.parametrize("k, expected", [((2,), set()), ((1, 2), {1}), ((1, 1, 2), {1, 2})])
    def test_a_set(self, k, expected):
        assert a_set(k) == expected

    @pytest.mark.parametrize("k, expected", [((1,), (1,)), ((2,), (1, 1)), ((1, 1, 2), (3, 1))])
    def test_dual(self, k, expected):
        assert hoffman_dual(k) == expected

    def test_dual_matches_g13_example(self):
        # G_{1,3} is F_{1,1,2}, so rev of the dual is (1,3)
        assert reverse(hoffman_dual((1, 1, 2))) == (1, 3)

    @pytest.mark.parametrize("fn", [a_set, hoffman_dual, abscissa_rho])
    def test_empty_index_rejected(self, fn):
        with pytest.raises(DomainError):
            fn(())

    @given(nonempty_indices(12))
    def test_involution_and_complement(self, k):
        kd = hoffman_dual(k)
        assert hoffman_dual(kd) == k
        assert weight(kd) == weight(k)
        assert a_set(k) | a_set(kd) == set(range(1, weight(k)))
        assert not a_set(k) & a_set(kd)

    @given(nonempty_indices(12))
    def test_word_round_trip(self, k):
        word = IndexWord.from_index(k)
        assert word.to_index() == k
        assert word.dual().to_index() == hoffman_dual(k)
        assert list(word.deltas) == [int(b) for b in weak_steps(k)]


class TestSmallOps:
    @pytest.mark.parametrize("k, expected", [((1, 3), (3, 1)), ((2,), (2,)), ((), ())])
    def test_reverse(self, k, expected):
        assert reverse(k) == expected

    @pytest.mark.parametrize("k, expected", [((1, 2), True), ((2, 1), False), ((), True)])
    def test_admissible(self, k, expected):
        assert is_admissible(k) is expected

    @pytest.mark.parametrize("k, expected", [((1,), 1), ((1, 1), 2), ((2, 1, 1), 3)])
    def test_rho(self, k, expected):
        assert abscissa_rho(k) == expected
        assert rho_closed_form(k) == expected

    def test_rho_forms_agree_up_to_weight_10(self):
        for k in indices_up_to(10):
            assert abscissa_rho(k) == rho_closed_form(k), k

    def test_compositions_count(self):
        assert [len(list(compositions(w))) for w in range(1, 8)] == [2 ** (w - 1) for w in range(1, 8)]


class TestStar:
    def test_examples(self):
        assert star_expand((2,)) == vec((1, (2,)))
        assert star_expand((1, 1)) == vec((1, (1, 1)), (1, (2,)))
        assert star_expand((1, 1, 1)) == vec((1, (1, 1, 1)), (1, (2, 1)), (1, (1, 2)), (1, (3,)))

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            star_expand(())

    @given(index_vectors(), index_vectors(), st.fractions(-5, 5, max_denominator=6))
    def test_linear(self, v, w, c):
        assert star_expand(v + c * w) == star_expand(v) + c * star_expand(w)

    @given(nonempty_indices(9))
    def test_term_count(self, k):
        total = sum(star_expand(k).values())
        assert total == 2 ** (len(k) - 1)


class TestProducts:
    def test_stuffle_examples(self):
        assert harmonic_product((), (3, 1)) == V.of((3, 1))
        assert harmonic_product((1,), (1,)) == vec((2, (1, 1)), (1, (2,)))
        assert harmonic_product((1,), (2,)) == vec((1, (1, 2)), (1, (2, 1)), (1, (3,)))

    def test_bar_examples(self):
        assert harmonic_bar_product((1,), (1,)) == vec((2, (1, 1)), (-1, (2,)))
        assert harmonic_bar_product((1,), (2,)) == vec((1, (1, 2)), (1, (2, 1)), (-1, (3,)))
        assert harmonic_bar_product((), (2,)) == V.of((2,))

    def test_circled_examples(self):
        assert circled_star_product((1,), (1,)) == V.of((2,))
        assert circled_star_product((1, 1), (1,)) == V.of((1, 2))
        assert circled_star_product((1, 1), (1, 1)) == vec((2, (1, 1, 2)), (1, (2, 2)))

    def test_circled_rejects_empty(self):
        with pytest.raises(DomainError):
            circled_star_product((), (1,))

    @pytest.mark.parametrize("prod", [harmonic_product, harmonic_bar_product])
    @given(u=index_vectors(allow_empty=True), v=index_vectors(allow_empty=True), w=index_vectors(allow_empty=True))
    @settings(max_examples=40, deadline=None)
    def test_commutative_associative_unit(self, prod, u, v, w):
        assert prod(u, v) == prod(v, u)
        assert prod(prod(u, v), w) == prod(u, prod(v, w))
        assert prod((), u) == u == prod(u, ())

    @pytest.mark.parametrize("prod", [harmonic_product, harmonic_bar_product, circled_star_product])
    @given(k=nonempty_indices(6), l=nonempty_indices(6))
    def test_weight_grading(self, prod, k, l):
        assert prod(k, l).weights() <= {weight(k) + weight(l)}

    @given(m=st.integers(1, 4), v=index_vectors(max_weight=5))
    def test_admissibility_propagation(self, m, v):
        assert all(is_admissible(t) for t in circled_star_product(ones(m), star_expand(v)))

    def test_bar_cancellation_prunes_zeros(self):
        # (1) *bar (1) - 2(1,1) + (2) vanishes identically
        zero = harmonic_bar_product((1,), (1,)) - vec((2, (1, 1)), (-1, (2,)))
        assert len(zero) == 0 and zero == 0


class TestIndexVector:
    def test_zero_coefficients_dropped(self):
        v = IndexVector({(1,): Fraction(1), (2,): Fraction(0)})
        assert list(v) == [(1,)]

    def test_canonical_order(self):
        v = vec((1, (2,)), (1, (1, 2)), (1, ()), (1, (1,)))
        assert list(v) == [(), (1,), (1, 2), (2,)]

    def test_json_round_trip(self):
        v = vec((Fraction(-3, 4), (1, 2)), (2, (3,)))
        data = v.to_json()
        assert data == [{"coef": "-3/4", "index": [1, 2]}, {"coef": "2/1", "index": [3]}]
        assert IndexVector.from_json(v.dumps()) == v

    def test_str(self):
        assert str(harmonic_bar_product((1,), (1,))) == "2(1,1) - (2)"

    @given(index_vectors(), index_vectors(), index_vectors(), st.fractions(-4, 4, max_denominator=5))
    def test_vector_space_axioms(self, u, v, w, c):
        assert (u + v) + w == u + (v + w)
        assert u + v == v + u
        assert u - u == 0
        assert c * (u + v) == c * u + c * v

    def test_bad_parts_rejected(self):
        with pytest.raises(DomainError):
            IndexVector({(1, 0): 1})
