"""Gaussian primes, p-adic valuations and residue reduction."""

import random
from fractions import Fraction

import pytest

from quatstbc.exactnum import Field, GaussianRational, gaussian
from quatstbc.finitefield import FiniteField, is_prime
from quatstbc.valuation import (
    INF,
    GaussianPrime,
    Place,
    Valuation,
    count_nonsquare_classes,
    factor_prime_in_Zi,
    is_nonsquare_mod,
    normalize_gaussian_prime,
    v_gaussian,
    vp,
)

rng = random.Random(77)


def rand_gauss_int(span=40):
    return gaussian(rng.randint(-span, span), rng.randint(-span, span))


class TestVp:
    def test_examples(self):
        assert vp(18, 3) == 2
        assert vp(Fraction(1, 3), 3) == -1
        assert vp(0, 3) == INF

    def test_composite_rejected(self):
        with pytest.raises(ValueError):
            vp(10, 6)

    def test_axioms_random(self):
        for p in (2, 3, 5, 13):
            for _ in range(200):
                a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
                b = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
                if a and b:
                    assert vp(a * b, p) == vp(a, p) + vp(b, p)
                if a + b != 0 or (a == 0 and b == 0):
                    assert vp(a + b, p) >= min(vp(a, p), vp(b, p))
                if a and b and vp(a, p) != vp(b, p):
                    assert vp(a + b, p) == min(vp(a, p), vp(b, p))


class TestFactorization:
    def test_five_splits(self):
        primes = factor_prime_in_Zi(5)
        assert {P.gen for P in primes} == {(1, 2), (1, -2)}
        for P in primes:
            assert (P.e, P.f) == (1, 1)
            assert P.ideal_norm == 5

    def test_seven_inert(self):
        (P,) = factor_prime_in_Zi(7)
        assert P.kind == "inert"
        assert P.ideal_norm == 49
        assert (P.e, P.f) == (1, 2)

    def test_thirteen(self):
        primes = factor_prime_in_Zi(13)
        assert {abs(x) for P in primes for x in P.gen} == {2, 3}

    def test_two_ramified(self):
        (P,) = factor_prime_in_Zi(2)
        assert P.kind == "ramified"
        assert P.dyadic
        assert P.e == 2

    def test_composite_rejected(self):
        with pytest.raises(ValueError):
            factor_prime_in_Zi(15)

    def test_generator_norms_and_ref(self):
        # r * e * f = 2 for every odd prime; generators have the right norm
        checked = 0
        p = 3
        while checked < 60:
            if is_prime(p):
                primes = factor_prime_in_Zi(p)
                r = len(primes)
                for P in primes:
                    assert r * P.e * P.f == 2
                    expected = p if P.kind == "split" else p * p
                    assert int(P.generator().norm()) == expected
                checked += 1
            p += 2

    def test_normalize_associates(self):
        # all four associates of 1+2i normalize to the same stored generator
        base = gaussian(1, 2)
        unit_list = [gaussian(1), gaussian(-1), gaussian(0, 1), gaussian(0, -1)]
        gens = {normalize_gaussian_prime(base * u).gen for u in unit_list}
        assert gens == {(1, 2)}
        # 2+i is an associate of 1-2i
        assert normalize_gaussian_prime(gaussian(2, 1)).gen == (1, -2)

    def test_normalize_rejects_nonprimes(self):
        with pytest.raises(ValueError):
            normalize_gaussian_prime(gaussian(5))
        with pytest.raises(ValueError):
            normalize_gaussian_prime(gaussian(3, 1))  # norm 10


class TestGaussianValuation:
    def setup_method(self):
        self.p12 = factor_prime_in_Zi(5)[0]  # (1+2i)
        self.p12c = factor_prime_in_Zi(5)[1]  # (1-2i)
        self.p7 = factor_prime_in_Zi(7)[0]

    def test_examples(self):
        assert v_gaussian(gaussian(5), self.p12) == 1
        assert v_gaussian(gaussian(0, 7), self.p7) == 1
        assert v_gaussian(gaussian(1, -2), self.p12) == 0
        assert v_gaussian(gaussian(0), self.p12) == INF

    def test_rationals_and_fractions(self):
        assert v_gaussian(gaussian(Fraction(1, 5)), self.p12) == -1
        assert v_gaussian(gaussian(Fraction(1, 5), Fraction(2, 5)), self.p12) == 0

    def test_split_valuations_sum_to_norm_valuation(self):
        for _ in range(300):
            z = rand_gauss_int()
            if z.is_zero():
                continue
            total = v_gaussian(z, self.p12) + v_gaussian(z, self.p12c)
            assert total == vp(z.norm(), 5)

    def test_axioms_random(self):
        for P in (self.p12, self.p7):
            for _ in range(200):
                a, b = rand_gauss_int(15), rand_gauss_int(15)
                if not a.is_zero() and not b.is_zero():
                    assert v_gaussian(a * b, P) == v_gaussian(a, P) + v_gaussian(b, P)
                    s = v_gaussian(a + b, P)
                    assert s >= min(v_gaussian(a, P), v_gaussian(b, P))
                    if v_gaussian(a, P) != v_gaussian(b, P):
                        assert s == min(v_gaussian(a, P), v_gaussian(b, P))


class TestReduction:
    def setup_method(self):
        self.p12 = factor_prime_in_Zi(5)[0]
        self.p12c = factor_prime_in_Zi(5)[1]
        self.p7 = factor_prime_in_Zi(7)[0]

    def test_i_mod_split_prime(self):
        # x + iy = 0 forces i -> -x/y; for 1+2i that is 2 (2^2 = 4 = -1 mod 5)
        r = self.p12.reduce(gaussian(0, 1))
        assert r == self.p12.residue(2)
        assert r * r == self.p12.residue(-1)
        # the conjugate generator fixes the other root
        r2 = self.p12c.reduce(gaussian(0, 1))
        assert r2 == self.p12c.residue(3)
        assert r2 * r2 == self.p12c.residue(-1)

    def test_inert_reduction(self):
        t = self.p7.reduce(gaussian(7, 1))
        assert t == self.p7.residue(0, 1)

    def test_minus_one(self):
        for P in (self.p12, self.p7):
            assert P.reduce(gaussian(-1)) == P.residue(P.p - 1)

    def test_non_integral_rejected(self):
        with pytest.raises(ValueError):
            self.p12.reduce(gaussian(Fraction(1, 5)))

    def test_denominator_coprime_to_conjugate(self):
        # 1/(1-2i) = (1+2i)/5 has valuation 0 at (1+2i) and reduces fine
        z = gaussian(1) / gaussian(1, -2)
        assert v_gaussian(z, self.p12) == 0
        r = self.p12.reduce(z)
        # z * (1-2i) = 1, so r * reduce(1-2i) must be 1
        assert r * self.p12.reduce(gaussian(1, -2)) == self.p12.residue(1)

    def test_ring_homomorphism_random(self):
        for P in (self.p12, self.p7):
            for _ in range(200):
                a, b = rand_gauss_int(20), rand_gauss_int(20)
                assert P.reduce(a * b) == P.reduce(a) * P.reduce(b)
                assert P.reduce(a + b) == P.reduce(a) + P.reduce(b)


class TestSquareClasses:
    def test_examples(self):
        assert is_nonsquare_mod(gaussian(-1), 3)
        for P in factor_prime_in_Zi(5):
            assert is_nonsquare_mod(gaussian(0, 1), P)
        assert not is_nonsquare_mod(gaussian(-1), factor_prime_in_Zi(5)[0])

    def test_euler_matches_enumeration(self):
        for P in (factor_prime_in_Zi(5)[0], factor_prime_in_Zi(7)[0]):
            fq = P.residue
            squares = fq.squares()
            for x in fq.units():
                assert x.is_square() == (x in squares)

    def test_nonunit_rejected(self):
        with pytest.raises(ValueError):
            is_nonsquare_mod(gaussian(5), factor_prime_in_Zi(5)[0])

    def test_counts(self):
        assert count_nonsquare_classes(factor_prime_in_Zi(7)[0]) == 24
        assert count_nonsquare_classes(factor_prime_in_Zi(5)[0]) == 2
        assert count_nonsquare_classes(3) == 1


class TestPlacesAndTowers:
    def test_place_over_q(self):
        pl = Place.of_rational_prime(3)
        assert pl.v(gaussian(18)) == 2
        assert pl.reduce(gaussian(Fraction(7, 2))) == pl.residue(7 * 2)  # 7 * inv(2) = 7*2 mod 3
        assert str(pl) == "(3)"

    def test_dyadic_flagging(self):
        pl = Place.of_rational_prime(2)
        assert pl.dyadic
        with pytest.raises(ValueError):
            pl.residue
        (P,) = factor_prime_in_Zi(2)
        assert str(P) == "(1+1i)[dyadic]"

    def test_unit_part(self):
        pl = Place.of_gaussian_prime(factor_prime_in_Zi(5)[0])
        u = pl.unit_part(gaussian(50))  # 50 = 2 * 5^2
        assert pl.v(u) == 0

    def test_tower_validation(self):
        Valuation.formal("y", "x", field=Field.QI)
        Valuation((("y"), Place.of_rational_prime(3)), Field.Q)
        with pytest.raises(ValueError):
            Valuation((Place.of_rational_prime(3), "x"), Field.Q)
        with pytest.raises(ValueError):
            Valuation(("x", "x"), Field.Q)

    def test_finite_field_guards(self):
        with pytest.raises(ValueError):
            FiniteField(2)
        with pytest.raises(ValueError):
            FiniteField(5, 2)  # t^2+1 reducible mod 5
        assert FiniteField(7, 2).q == 49
