import numpy as np
import pytest

from goldman import (GroupRingElement, InputError, Presentation, anti_involution,
                     commutator, format_word, fox_derivative, parse_word)


def words_of(pres, text):
    return parse_word(pres, text)


class TestReduction:
    def test_cancelling_pair(self):
        pres = Presentation(2)
        assert pres.word([(0, 1), (0, -1)]).is_identity

    def test_inner_cancellation(self):
        pres = Presentation(2)
        w = pres.a(1) * pres.b(1) * pres.b(1).inverse() * pres.a(2)
        assert w == pres.a(1) * pres.a(2)

    def test_relator_times_b1(self):
        # hand reduction: [a1,b1] b1 = a1 b1 a1^-1
        pres = Presentation(2)
        expected = pres.a(1) * pres.b(1) * pres.a(1).inverse()
        assert pres.relator(1) * pres.b(1) == expected

    def test_idempotent(self):
        pres = Presentation(3)
        raw = [(0, 1), (1, 1), (1, -1), (4, 1), (4, -1), (0, -1), (2, 1)]
        once = pres.word(raw)
        assert pres.word(once.runs) == once

    def test_unknown_generator_rejected(self):
        pres = Presentation(2)
        with pytest.raises(InputError):
            pres.word([(4, 1)])
        with pytest.raises(InputError):
            pres.word([(-1, 1)])

    def test_cascading_cancellation(self):
        pres = Presentation(1)
        w = pres.word([(0, 1), (1, 1), (1, -1), (0, -1)])
        assert w.is_identity

    def test_confluence_random_orders(self):
        rng = np.random.default_rng(0)
        pres = Presentation(2)
        for _ in range(100):
            letters = [(int(rng.integers(0, 4)), int(rng.choice([-1, 1])))
                       for _ in range(int(rng.integers(0, 14)))]
            eager = pres.word(letters)
            work = list(letters)
            while True:
                sites = [i for i in range(len(work) - 1)
                         if work[i][0] == work[i + 1][0]
                         and work[i][1] == -work[i + 1][1]]
                if not sites:
                    break
                i = sites[int(rng.integers(0, len(sites)))]
                del work[i:i + 2]
            assert pres.word(work) == eager

    def test_associativity_with_identity(self):
        pres = Presentation(2)
        w = pres.a(1) * pres.b(2)
        assert w * pres.identity() == w
        assert pres.identity() * w == w


class TestRelator:
    def test_zeroth_is_identity(self):
        assert Presentation(2).relator(0).is_identity

    def test_full_relator_genus_two(self):
        pres = Presentation(2)
        expected = parse_word(pres, "a1 b1 A1 B1 a2 b2 A2 B2")
        assert pres.relator(2) == expected
        assert pres.relator() == expected

    def test_single_commutator(self):
        pres = Presentation(2)
        assert pres.relator(1) == commutator(pres.a(1), pres.b(1))

    def test_out_of_range(self):
        with pytest.raises(InputError):
            Presentation(2).relator(3)
        with pytest.raises(InputError):
            Presentation(2).relator(-1)

    def test_relator_is_product_of_commutators(self):
        for genus in (1, 2, 3):
            pres = Presentation(genus)
            word = pres.identity()
            for k in range(1, genus + 1):
                word = word * commutator(pres.a(k), pres.b(k))
            assert pres.relator() == word


class TestFoxDerivative:
    def test_closed_forms_genus_two(self):
        pres = Presentation(2)
        da1 = pres.relator_derivative(0)
        expected = (GroupRingElement.from_word(pres.identity())
                    - GroupRingElement.from_word(parse_word(pres, "a1 b1 A1")))
        assert da1 == expected
        db1 = pres.relator_derivative(1)
        expected = (GroupRingElement.from_word(pres.a(1))
                    - GroupRingElement.from_word(pres.relator(1)))
        assert db1 == expected

    def test_closed_forms_all_generators(self):
        for genus in (1, 2, 3):
            pres = Presentation(genus)
            for k in range(1, genus + 1):
                r_prev, r_k = pres.relator(k - 1), pres.relator(k)
                assert pres.relator_derivative(2 * (k - 1)) == (
                    GroupRingElement.from_word(r_prev)
                    - GroupRingElement.from_word(r_k * pres.b(k)))
                assert pres.relator_derivative(2 * (k - 1) + 1) == (
                    GroupRingElement.from_word(r_prev * pres.a(k))
                    - GroupRingElement.from_word(r_k))

    def test_derivative_of_other_letter_vanishes(self):
        pres = Presentation(2)
        assert fox_derivative(pres.b(1), 0).is_zero

    def test_product_rule_spot(self):
        pres = Presentation(2)
        u, v = pres.a(1), pres.b(1)
        lhs = fox_derivative(u * v, 0)
        assert lhs == GroupRingElement.from_word(pres.identity())

    def test_product_rule_random(self):
        rng = np.random.default_rng(1)
        for genus in (1, 2, 3):
            pres = Presentation(genus)
            for _ in range(100):
                raw = lambda: [(int(rng.integers(0, 2 * genus)),
                                int(rng.choice([-1, 1])))
                               for _ in range(int(rng.integers(0, 8)))]
                u, v = pres.word(raw()), pres.word(raw())
                for index in range(2 * genus):
                    lhs = fox_derivative(u * v, index)
                    rhs = fox_derivative(u, index) + u * fox_derivative(v, index)
                    assert lhs == rhs

    def test_inverse_letter_rule(self):
        pres = Presentation(1)
        d = fox_derivative(pres.a(1).inverse(), 0)
        assert d == GroupRingElement.from_word(pres.a(1).inverse(), -1)


class TestAntiInvolution:
    def test_example(self):
        pres = Presentation(2)
        e = (GroupRingElement.from_word(pres.a(1) * pres.b(1), 2)
             - GroupRingElement.from_word(pres.b(2).inverse()))
        expected = (GroupRingElement.from_word(pres.b(1).inverse() * pres.a(1).inverse(), 2)
                    - GroupRingElement.from_word(pres.b(2)))
        assert anti_involution(e) == expected

    def test_identity_word(self):
        pres = Presentation(2)
        e = GroupRingElement.from_word(pres.identity())
        assert anti_involution(e) == e

    def test_involution_random(self):
        rng = np.random.default_rng(2)
        pres = Presentation(2)
        for _ in range(50):
            e = GroupRingElement.zero(2)
            for _ in range(3):
                raw = [(int(rng.integers(0, 4)), int(rng.choice([-1, 1])))
                       for _ in range(int(rng.integers(0, 6)))]
                e = e + GroupRingElement.from_word(pres.word(raw),
                                                   int(rng.integers(-3, 4)) or 1)
            assert anti_involution(anti_involution(e)) == e

    def test_anti_homomorphism(self):
        pres = Presentation(2)
        e = GroupRingElement.from_word(pres.a(1)) + GroupRingElement.from_word(pres.b(2), -2)
        f = GroupRingElement.from_word(pres.b(1) * pres.a(2))
        assert anti_involution(e * f) == anti_involution(f) * anti_involution(e)


class TestGroupRing:
    def test_zero_coefficients_dropped(self):
        pres = Presentation(1)
        e = GroupRingElement.from_word(pres.a(1)) - GroupRingElement.from_word(pres.a(1))
        assert e.is_zero
        assert e == GroupRingElement.zero(1)

    def test_distributivity(self):
        pres = Presentation(2)
        a = GroupRingElement.from_word(pres.a(1), 2)
        b = GroupRingElement.from_word(pres.b(1), -1)
        c = GroupRingElement.from_word(pres.a(2) * pres.b(2))
        assert a * (b + c) == a * b + a * c

    def test_word_scalar_multiplication(self):
        pres = Presentation(1)
        e = GroupRingElement.from_word(pres.a(1))
        assert e * 3 == GroupRingElement.from_word(pres.a(1), 3)
        assert (e * 0).is_zero


class TestDualGenerators:
    def test_alpha_one_genus_two(self):
        pres = Presentation(2)
        assert pres.dual_generators()[0] == parse_word(pres, "a1 B1 A1")

    def test_commutator_identity(self):
        for genus in (1, 2, 3):
            pres = Presentation(genus)
            duals = pres.dual_generators()
            for k in range(1, genus + 1):
                alpha, beta = duals[2 * (k - 1)], duals[2 * (k - 1) + 1]
                lhs = commutator(alpha, beta)
                assert lhs == pres.relator(k - 1) * pres.relator(k).inverse()

    def test_dual_relator_telescopes(self):
        # the full dual relator is the inverse relator as a free word,
        # hence the identity in the surface group
        for genus in (1, 2, 3):
            pres = Presentation(genus)
            duals = pres.dual_generators()
            product = pres.identity()
            for k in range(1, genus + 1):
                product = product * commutator(duals[2 * (k - 1)], duals[2 * (k - 1) + 1])
                assert product == pres.relator(k).inverse()

    def test_generators_recovered(self):
        for genus in (1, 2, 3):
            pres = Presentation(genus)
            duals = pres.dual_generators()
            script = [pres.identity()]
            for k in range(1, genus + 1):
                script.append(script[-1] * commutator(duals[2 * (k - 1)],
                                                      duals[2 * (k - 1) + 1]))
            for k in range(1, genus + 1):
                alpha, beta = duals[2 * (k - 1)], duals[2 * (k - 1) + 1]
                lhs = pres.a(k).inverse() * (script[k] * beta * script[k - 1].inverse()).inverse()
                assert lhs.is_identity
                lhs = pres.b(k).inverse() * (script[k - 1] * alpha * script[k].inverse()).inverse()
                assert lhs.is_identity


class TestTwoCycle:
    def test_pair_count(self):
        assert len(Presentation(2).fundamental_two_cycle()) == 4
        assert len(Presentation(3).fundamental_two_cycle()) == 6

    def test_coefficients_are_fox_derivatives(self):
        pres = Presentation(2)
        cycle = pres.fundamental_two_cycle()
        for index, (coefficient, generator) in enumerate(cycle.pairs):
            assert generator == pres.generator(index)
            assert coefficient == pres.relator_derivative(index)


class TestTextFormat:
    def test_round_trip(self):
        pres = Presentation(2)
        for text in ("a1 b1 A1 B1 a2", "1", "a2 a2 B1"):
            assert format_word(parse_word(pres, text)) == text

    def test_identity_formats_as_one(self):
        pres = Presentation(2)
        assert format_word(pres.identity()) == "1"
        assert parse_word(pres, "1").is_identity

    def test_bad_tokens(self):
        pres = Presentation(2)
        for text in ("c1", "a0", "a3", "a1b1", "a-1"):
            with pytest.raises(InputError):
                parse_word(pres, text)

    def test_genus_validation(self):
        with pytest.raises(InputError):
            Presentation(0)
