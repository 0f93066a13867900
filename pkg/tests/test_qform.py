"""Diagonal forms: evaluation, residue splits, isotropy, Springer chains."""

import itertools
import random
from fractions import Fraction

import pytest

from quatstbc.exactnum import Field, GaussianRational, gaussian
from quatstbc.finitefield import FiniteField
from quatstbc.qform import (
    DiagForm,
    FormalDomain,
    FormalEntry,
    anisotropic_over_base,
    is_isotropic_finite,
    isotropic_by_enumeration,
    isotropic_by_value_sets,
    orth_sum,
    residue_decompose,
    scale,
    springer_anisotropic,
)
from quatstbc.valuation import Place, Valuation, factor_prime_in_Zi

rng = random.Random(4242)

F3 = FiniteField(3)
F5 = FiniteField(5)
F7 = FiniteField(7)
F49 = FiniteField(7, 2)


def form_q(*entries):
    return DiagForm(entries, Field.Q)


class TestBasics:
    def test_evaluate_examples(self):
        f = form_q(1, 1, 1, 1)
        assert f.evaluate([1, 1, 1, 1]) == gaussian(4)
        g = form_q(1, 1, -1, -1)
        assert g.evaluate([1, 0, 1, 0]) == gaussian(0)
        assert g.evaluate([0, 0, 0, 0]) == gaussian(0)

    def test_evaluate_dimension_mismatch(self):
        with pytest.raises(ValueError):
            form_q(1, 2).evaluate([1])

    def test_zero_entries_rejected(self):
        with pytest.raises(ValueError):
            form_q(1, 0)

    def test_orth_sum_and_scale(self):
        assert orth_sum(form_q(1), form_q(-1)) == form_q(1, -1)
        assert scale(3, form_q(-1, 7)) == form_q(-3, 21)
        assert scale(1, form_q(2, 5)) == form_q(2, 5)
        with pytest.raises(ValueError):
            scale(0, form_q(1))

    def test_rendering(self):
        assert str(form_q(1, -3)) == "⟨1,-3⟩"

    def test_normalized_strips_squares(self):
        f = form_q(12, Fraction(-18, 25))
        assert f.normalized() == form_q(3, -2)


class TestResidueDecompose:
    def test_norm_form_shape(self):
        # <1, -pi, -b, pi*b> with pi = 3, b = -1 at the 3-adic place
        n = form_q(1, -3, 1, -3)
        split = residue_decompose(n, 3)
        assert split.phi1 == DiagForm([1, 1], F3)
        assert split.phi2 == DiagForm([2, 2], F3)  # -1 = 2 mod 3
        assert split.uniformizer == gaussian(3)

    def test_unit_only(self):
        split = residue_decompose(form_q(7), 3)
        assert split.phi1 == DiagForm([1], F3)
        assert split.phi2.dim == 0

    def test_odd_power_reduces_mod_squares(self):
        split = residue_decompose(form_q(27), 3)
        assert split.phi1.dim == 0
        assert split.phi2 == DiagForm([1], F3)

    def test_dyadic_rejected(self):
        with pytest.raises(ValueError, match="dyadic"):
            residue_decompose(form_q(1, -2), 2)

    def test_gaussian_place(self):
        p12 = factor_prime_in_Zi(5)[0]
        f = DiagForm([gaussian(1), gaussian(-5), gaussian(0, -1), gaussian(0, 5)], Field.QI)
        split = residue_decompose(f, p12)
        fq = p12.residue
        # units: 1 and -i -> 1 and -2 = 3; odd parts: -5/(1+2i), 5i/(1+2i)
        assert split.phi1 == DiagForm([fq(1), fq(3)], fq)
        assert split.phi2.dim == 2


class TestFiniteIsotropy:
    def test_examples(self):
        assert not is_isotropic_finite(DiagForm([1, 1], F3))
        assert is_isotropic_finite(DiagForm([1, 1, 1], F3))
        # a genuine non-square of F49 makes <1, -c> anisotropic
        nonsquare = next(x for x in F49.units() if not x.is_square())
        assert not is_isotropic_finite(DiagForm([F49.one, -nonsquare], F49))
        # i itself is a square in F49 (it has a fourth root of unity squaring to it)
        assert F49(0, 1).is_square()
        assert is_isotropic_finite(DiagForm([F49.one, -F49(0, 1)], F49))

    def test_dim_zero_and_one(self):
        assert not is_isotropic_finite(DiagForm([], F5))
        assert not is_isotropic_finite(DiagForm([2], F5))

    def test_oracles_agree_small_sweep(self):
        for fq in (F3, F5, F7):
            units = list(fq.units())
            for dim in (1, 2, 3):
                for _ in range(20):
                    entries = [rng.choice(units) for _ in range(dim)]
                    f = DiagForm(entries, fq)
                    expected = isotropic_by_enumeration(f)
                    assert is_isotropic_finite(f) == expected
                    assert isotropic_by_value_sets(f) == expected

    def test_value_set_oracle_matches_enumeration_on_f49(self):
        units = list(F49.units())
        for dim in (1, 2, 3):
            for _ in range(10):
                f = DiagForm([rng.choice(units) for _ in range(dim)], F49)
                assert isotropic_by_value_sets(f) == isotropic_by_enumeration(f)

    def test_enumeration_budget(self):
        with pytest.raises(ValueError):
            isotropic_by_enumeration(DiagForm([F49.one] * 4, F49))


class TestSpringer:
    def test_division_norm_form(self):
        assert springer_anisotropic(form_q(1, -3, 1, -3), 3)

    def test_hyperbolic_plane(self):
        assert not springer_anisotropic(form_q(1, -1), 3)
        assert not springer_anisotropic(form_q(1, -1), 5)

    def test_square_b_fails(self):
        # <1, -b, -pi, pi*b> with b = 4 a square mod 5: phi1 = <1, -4> isotropic
        f = form_q(1, -4, -5, 20)
        split = residue_decompose(f, 5)
        assert isotropic_by_enumeration(split.phi1)
        assert not springer_anisotropic(f, 5)

    def test_square_class_scaling_invariance(self):
        f = form_q(1, -3, 1, -3)
        for _ in range(50):
            c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            idx = rng.randrange(4)
            entries = list(f.entries)
            entries[idx] = entries[idx] * GaussianRational(c * c)
            assert springer_anisotropic(DiagForm(entries, Field.Q), 3)

    def test_permutation_invariance(self):
        f = form_q(1, -3, 1, -3)
        for perm in itertools.permutations(range(4)):
            assert springer_anisotropic(f.permuted(perm), 3)

    def test_soundness_probe(self):
        # anisotropic certificate means no small rational vector can vanish
        f = form_q(1, -3, 1, -3)
        assert springer_anisotropic(f, 3)
        for _ in range(10_000):
            vec = [
                gaussian(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                for _ in range(4)
            ]
            if all(v.is_zero() for v in vec):
                continue
            assert not f.evaluate(vec).is_zero()


class TestFormalTowers:
    def setup_method(self):
        self.dom = FormalDomain(Field.Q, ("x", "y"))

    def albert_like(self, a, b):
        # <a, x, -a*x, -b, -y, b*y>
        mk = lambda coef, dx, dy: FormalEntry(gaussian(coef), (dx, dy))
        return DiagForm(
            [mk(a, 0, 0), mk(1, 1, 0), mk(-a, 1, 0), mk(-b, 0, 0), mk(-1, 0, 1), mk(b, 0, 1)],
            self.dom,
        )

    def test_two_level_decomposition(self):
        f = self.albert_like(2, 3)
        split_y = residue_decompose(f, Valuation.formal("y", field=Field.Q))
        assert split_y.uniformizer == "y"
        # phi2 = <-1, b>, constants in the residue domain Q(x)
        assert [(e.coef, e.degs) for e in split_y.phi2.entries] == [
            (gaussian(-1), (0,)),
            (gaussian(3), (0,)),
        ]
        # first residue form <a, x, -a*x, -b> still involves x; its own split
        # gives psi1 = <a, -b> and psi2 = <1, -a> over Q
        split_x = residue_decompose(
            split_y.phi1, Valuation.formal("x", field=Field.Q)
        )
        assert list(split_x.phi1.entries) == [gaussian(2), gaussian(-3)]
        assert list(split_x.phi2.entries) == [gaussian(1), gaussian(-2)]

    def test_springer_full_tower(self):
        tower = Valuation(("y", "x"), Field.Q)
        assert springer_anisotropic(self.albert_like(2, 3), tower)
        # ab = 16 square: psi1 = <a, -b> = <2, -8> has -a*b = 16 a square
        assert not springer_anisotropic(self.albert_like(2, 8), tower)

    def test_base_decision_guards(self):
        assert anisotropic_over_base(DiagForm([gaussian(2)], Field.Q))
        assert anisotropic_over_base(DiagForm([1, -3], Field.Q))
        assert not anisotropic_over_base(DiagForm([1, -4], Field.Q))
        with pytest.raises(ValueError, match="too shallow"):
            anisotropic_over_base(DiagForm([1, 2, 3], Field.Q))
