"""Exact arithmetic, square testing and Galois actions."""

import random
from fractions import Fraction

import pytest

from quatstbc.exactnum import (
    BiquadExtElem,
    Field,
    Galois,
    GaussianRational,
    QuadExtElem,
    galois_apply,
    gaussian,
    is_square_gaussian,
    is_square_in,
    is_square_rational,
    relative_norm,
    sqrt_gaussian,
    sqrt_rational,
    squarefree_part,
)

rng = random.Random(20240901)


def rand_fraction(span=9):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_gaussian(span=9):
    return GaussianRational(rand_fraction(span), rand_fraction(span))


def rand_nonzero_gaussian(span=9):
    while True:
        z = rand_gaussian(span)
        if not z.is_zero():
            return z


class TestGaussianRational:
    def test_field_axioms_random(self):
        for _ in range(300):
            x, y = rand_gaussian(), rand_nonzero_gaussian()
            assert (x + y) - y == x
            assert (x * y) / y == x

    def test_norm_and_conjugate(self):
        z = gaussian(Fraction(3, 2), Fraction(-1, 4))
        assert z.norm() == Fraction(9, 4) + Fraction(1, 16)
        assert z * z.conjugate() == GaussianRational(z.norm())
        assert z.conjugate().conjugate() == z

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            gaussian(1) / gaussian(0)

    def test_pow(self):
        i = gaussian(0, 1)
        assert i**2 == gaussian(-1)
        assert i**-1 == gaussian(0, -1)
        assert (gaussian(1, 1) ** 2) == gaussian(0, 2)

    def test_rendering(self):
        assert str(gaussian(Fraction(1, 2), Fraction(3, 4))) == "1/2 + (3/4)i"
        assert str(gaussian(-2, 1)) == "-2 + i"
        assert str(gaussian(0, -1)) == "-i"
        assert str(gaussian(5)) == "5"

    def test_hash_consistency(self):
        assert hash(gaussian(2, 0)) == hash(gaussian(Fraction(4, 2), Fraction(0)))
        assert gaussian(2) == 2


class TestSquareTests:
    def test_rational_examples(self):
        assert is_square_rational(Fraction(9, 4))
        assert not is_square_rational(Fraction(-1))
        assert not is_square_rational(Fraction(5))
        assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)

    def test_gaussian_examples(self):
        # i has norm 1 = 1^2 but (0+1)/2 = 1/2 is not a rational square
        assert not is_square_gaussian(gaussian(0, 1))
        assert is_square_gaussian(gaussian(-4))
        assert sqrt_gaussian(gaussian(-4)) == gaussian(0, 2)
        assert is_square_gaussian(gaussian(0, 2))
        assert sqrt_gaussian(gaussian(0, 2)) == gaussian(1, 1)

    def test_gaussian_squares_roundtrip_random(self):
        for _ in range(1000):
            w = rand_gaussian()
            z = w * w
            assert is_square_gaussian(z)
            r = sqrt_gaussian(z)
            assert r * r == z

    def test_nonsquares_random(self):
        # z and z*i cannot both be squares unless z = 0
        for _ in range(200):
            z = rand_nonzero_gaussian()
            assert not (
                is_square_gaussian(z) and is_square_gaussian(z * gaussian(0, 1))
            )

    def test_field_dispatch(self):
        assert is_square_in(gaussian(-4), Field.QI)
        assert not is_square_in(gaussian(-4), Field.Q)
        with pytest.raises(ValueError):
            is_square_in(gaussian(0, 1), Field.Q)

    def test_squarefree_part(self):
        assert squarefree_part(Fraction(12)) == 3
        assert squarefree_part(Fraction(-18, 25)) == -2
        assert squarefree_part(Fraction(1)) == 1
        with pytest.raises(ValueError):
            squarefree_part(Fraction(0))


class TestQuadExt:
    def test_constructor_rejects_squares(self):
        with pytest.raises(ValueError):
            QuadExtElem(Field.Q, 4, 1, 1)
        with pytest.raises(ValueError):
            QuadExtElem(Field.QI, gaussian(0, 2), 1, 1)  # 2i = (1+i)^2
        with pytest.raises(ValueError):
            QuadExtElem(Field.Q, 0, 1, 1)
        # -1 is fine over Q but a square over Q(i)
        QuadExtElem(Field.Q, -1, 1, 1)
        with pytest.raises(ValueError):
            QuadExtElem(Field.QI, -1, 1, 1)

    def test_relative_norm_examples(self):
        x = QuadExtElem(Field.Q, 5, 1, 1)  # 1 + sqrt(5)
        assert relative_norm(x) == gaussian(-4)
        x0 = QuadExtElem(Field.Q, 5, Fraction(7, 3), 0)
        assert relative_norm(x0) == GaussianRational(Fraction(49, 9))
        root = QuadExtElem(Field.Q, 5, 0, 1)
        assert relative_norm(root) == gaussian(-5)

    def test_norm_is_multiplicative(self):
        a = gaussian(1, 2)
        for _ in range(200):
            x = QuadExtElem(Field.QI, a, rand_gaussian(), rand_gaussian())
            y = QuadExtElem(Field.QI, a, rand_gaussian(), rand_gaussian())
            assert relative_norm(x * y) == relative_norm(x) * relative_norm(y)

    def test_conj_is_field_automorphism(self):
        a = gaussian(1, 2)
        for _ in range(100):
            x = QuadExtElem(Field.QI, a, rand_gaussian(), rand_gaussian())
            y = QuadExtElem(Field.QI, a, rand_gaussian(), rand_gaussian())
            assert (x + y).conj() == x.conj() + y.conj()
            assert (x * y).conj() == x.conj() * y.conj()
            assert x.conj().conj() == x

    def test_inverse(self):
        x = QuadExtElem(Field.Q, 3, 1, 1)
        assert x * x.inverse() == QuadExtElem(Field.Q, 3, 1, 0)
        with pytest.raises(ZeroDivisionError):
            QuadExtElem(Field.Q, 3, 0, 0).inverse()


class TestBiquadExt:
    def setup_method(self):
        self.a = gaussian(1, 2)
        self.c = gaussian(7)

    def elem(self, *coords):
        return BiquadExtElem(Field.QI, self.a, self.c, coords)

    def rand_elem(self):
        return self.elem(*(rand_gaussian(5) for _ in range(4)))

    def test_constructor_validates_radicands(self):
        # ac a square is rejected even when a and c are not
        with pytest.raises(ValueError):
            BiquadExtElem(Field.Q, 2, 8, (1, 0, 0, 0))
        BiquadExtElem(Field.Q, 2, 3, (1, 0, 0, 0))

    def test_galois_examples(self):
        one_plus_sqrt_a = self.elem(1, 1, 0, 0)
        assert galois_apply(one_plus_sqrt_a, Galois.SIGMA) == self.elem(1, -1, 0, 0)
        sqrt_a = self.elem(0, 1, 0, 0)
        assert galois_apply(sqrt_a, Galois.TAU) == sqrt_a
        sqrt_ac = self.elem(0, 0, 0, 1)
        assert galois_apply(sqrt_ac, Galois.SIGMA_TAU) == sqrt_ac

    def test_galois_involutions_commute(self):
        for _ in range(100):
            z = self.rand_elem()
            s = galois_apply(z, Galois.SIGMA)
            t = galois_apply(z, Galois.TAU)
            assert galois_apply(s, Galois.SIGMA) == z
            assert galois_apply(t, Galois.TAU) == z
            assert galois_apply(s, Galois.TAU) == galois_apply(t, Galois.SIGMA)
            assert galois_apply(s, Galois.TAU) == galois_apply(z, Galois.SIGMA_TAU)

    def test_galois_is_ring_homomorphism(self):
        for g in (Galois.SIGMA, Galois.TAU, Galois.SIGMA_TAU):
            for _ in range(60):
                x, y = self.rand_elem(), self.rand_elem()
                assert galois_apply(x + y, g) == galois_apply(x, g) + galois_apply(y, g)
                assert galois_apply(x * y, g) == galois_apply(x, g) * galois_apply(y, g)

    def test_multiplication_table(self):
        sqrt_a = self.elem(0, 1, 0, 0)
        sqrt_c = self.elem(0, 0, 1, 0)
        sqrt_ac = self.elem(0, 0, 0, 1)
        assert sqrt_a * sqrt_a == self.elem(self.a, 0, 0, 0)
        assert sqrt_c * sqrt_c == self.elem(self.c, 0, 0, 0)
        assert sqrt_a * sqrt_c == sqrt_ac
        assert sqrt_ac * sqrt_ac == self.elem(self.a * self.c, 0, 0, 0)
        assert sqrt_a * sqrt_ac == self.elem(0, 0, self.a, 0)

    def test_exactness(self):
        for _ in range(100):
            x, y = self.rand_elem(), self.rand_elem()
            assert (x + y) - y == x
