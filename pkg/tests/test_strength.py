import itertools

import numpy as np
import pytest

from upbstrength import (
    ProductBasisSet,
    SixParam,
    bargmann,
    make_six_param,
    make_subfamily,
    strength_generic,
    strength_sixparam_closed,
    strength_tri_closed,
    strength_tri_f,
    tensor_product_upb,
    zero_pattern,
)
from upbstrength.constructors import PYRAMID_X, TILES_ANGLE
from upbstrength.strength import (
    compare_closed_vs_generic,
    product_pattern,
    sixparam_reference_pattern,
    tripartite_reference_pattern,
)

from oracles import random_valid_sixparam, tri_f_reference

# [(30 sqrt5 - 66) / 12] and its square, 30-digit evaluation
PYRAMID_B5 = 0.0901699437494742410
PYRAMID_STRENGTH = 0.00813061875578334875
TILES_STRENGTH = 1 / 144
# (cos 6pi/7 - cos 4pi/7) / (1 + |cos 4pi/7|)
SEPT_X = -0.554958132087371191
PYRAMID_THETA = float(np.arccos(PYRAMID_X))


def with_member(S, j, party, vec):
    members = list(S.members)
    m = list(members[j])
    m[party] = vec
    members[j] = tuple(m)
    return ProductBasisSet(S.dims, tuple(members), S.label)


class TestBargmann:
    def test_repeated_vector(self):
        v = np.array([0.6, 0.8j])
        assert bargmann([v], (0, 0)).value == pytest.approx(1)

    def test_pyramid_cycle(self, pyramid):
        b = bargmann(pyramid.party_vectors(0), (0, 1, 2, 3, 4))
        assert abs(b.value) == pytest.approx(PYRAMID_B5, abs=1e-12)

    def test_cyclic_rotation(self, rng):
        vs = [rng.normal(size=3) + 1j * rng.normal(size=3) for _ in range(5)]
        a = bargmann(vs, (0, 1, 2, 3, 4)).value
        b = bargmann(vs, (1, 2, 3, 4, 0)).value
        assert b == pytest.approx(a, rel=1e-13)

    def test_gauge_invariance(self, rng):
        vs = [rng.normal(size=3) + 1j * rng.normal(size=3) for _ in range(4)]
        phased = [np.exp(1j * rng.uniform(0, 6)) * v for v in vs]
        assert bargmann(phased, (0, 2, 1, 3)).value == pytest.approx(bargmann(vs, (0, 2, 1, 3)).value)

    def test_bounded_for_unit_vectors(self, rng):
        vs = [v / np.linalg.norm(v) for v in (rng.normal(size=3) + 1j * rng.normal(size=3) for _ in range(6))]
        assert abs(bargmann(vs, range(6)).value) <= 1

    def test_errors(self):
        with pytest.raises(IndexError):
            bargmann([np.ones(2)], (0, 1))
        with pytest.raises(ValueError):
            bargmann([np.ones(2)], (0,))


class TestGenericStrength:
    def test_pyramid(self, pyramid):
        rep = strength_generic(pyramid)
        assert rep.value == pytest.approx(PYRAMID_STRENGTH, abs=1e-8)
        assert rep.value == pytest.approx(PYRAMID_STRENGTH, rel=1e-12)
        assert rep.pattern_source == "measured"

    def test_tiles(self, tiles, pyramid):
        assert strength_generic(tiles).value == pytest.approx(TILES_STRENGTH, abs=1e-10)
        assert strength_generic(tiles).value < strength_generic(pyramid).value

    def test_report_consistency(self, sept):
        rep = strength_generic(sept)
        assert rep.value == pytest.approx(np.prod(rep.per_party_factors), rel=1e-12)
        assert all(m > 0 for party in rep.contributing_pairs for _, _, m in party)
        # distance-1 and distance-3 pairs survive on every party
        assert all(len(party) == 14 for party in rep.contributing_pairs)

    def test_bargmann_form(self, pyramid, tiles):
        rep = strength_generic(pyramid)
        assert abs(bargmann(pyramid.party_vectors(0), (0, 1, 2, 3, 4)).value) == pytest.approx(
            rep.per_party_factors[0], abs=1e-10
        )
        assert abs(bargmann(pyramid.party_vectors(1), (0, 2, 4, 1, 3)).value) == pytest.approx(
            rep.per_party_factors[1], abs=1e-10
        )
        t = strength_generic(tiles)
        assert abs(bargmann(tiles.party_vectors(0), (0, 1, 3, 2, 4)).value) == pytest.approx(t.per_party_factors[0])
        assert abs(bargmann(tiles.party_vectors(1), (0, 2, 1, 4, 3)).value) == pytest.approx(t.per_party_factors[1])

    def test_phase_invariance(self, pyramid, rng):
        s0 = strength_generic(pyramid).value
        for j in range(5):
            for p in range(2):
                S = with_member(pyramid, j, p, np.exp(1j * rng.uniform(0, 6)) * pyramid.members[j][p])
                assert strength_generic(S).value == pytest.approx(s0, rel=1e-12)

    def test_local_unitary_invariance(self, tiles, rng):
        from scipy.stats import unitary_group

        U = unitary_group.rvs(3, random_state=rng)
        members = tuple((U @ a, b) for a, b in tiles.members)
        S = ProductBasisSet(tiles.dims, members)
        assert strength_generic(S).value == pytest.approx(TILES_STRENGTH, rel=1e-12)

    def test_pattern_shape_mismatch(self, pyramid, sept):
        with pytest.raises(ValueError):
            strength_generic(pyramid, zero_pattern(sept))
        with pytest.raises(ValueError):
            strength_generic(pyramid, "nonsense")


def brute_force_strength(S, tol=1e-9):
    """Direct double loop over member pairs, no pattern machinery."""
    s = 1.0
    for p in range(S.n_parties):
        for i, j in itertools.combinations(range(S.n_members), 2):
            m = abs(np.sum(np.conj(S.members[i][p]) * S.members[j][p]))
            if m > tol:
                s *= m
    return s


class TestTensorStrength:
    def test_product_pattern_is_measured_pattern(self, pyramid, tiles):
        T = tensor_product_upb(pyramid, tiles)
        assert product_pattern(zero_pattern(pyramid), zero_pattern(tiles)) == zero_pattern(T)

    def test_power_law(self, pyramid, tiles):
        # Each party of either factor has 5 members and 5 nonzero pairs, so every
        # factor overlap appears 5 + 2 * 5 = 15 times in the product set.
        T = tensor_product_upb(pyramid, tiles)
        pat = product_pattern(zero_pattern(pyramid), zero_pattern(tiles))
        s = strength_generic(T, pat).value
        expected = (PYRAMID_STRENGTH * TILES_STRENGTH) ** 15
        assert s == pytest.approx(expected, rel=1e-9)
        assert brute_force_strength(T) == pytest.approx(expected, rel=1e-9)

    @pytest.mark.xfail(strict=True, reason="generic strength of a party-wise tensor product is a power of the product")
    def test_plain_multiplicativity(self, pyramid, tiles):
        T = tensor_product_upb(pyramid, tiles)
        pat = product_pattern(zero_pattern(pyramid), zero_pattern(tiles))
        assert strength_generic(T, pat).value == pytest.approx(PYRAMID_STRENGTH * TILES_STRENGTH, abs=1e-8)


class TestSixParamClosed:
    def test_pyramid_point(self):
        assert strength_sixparam_closed(SixParam.equal_angle(PYRAMID_THETA)) == pytest.approx(
            PYRAMID_STRENGTH, abs=1e-9
        )

    def test_tiles_point(self):
        assert strength_sixparam_closed(SixParam.equal_angle(TILES_ANGLE)) == pytest.approx(1 / 144, abs=1e-12)

    def test_phase_independence_exact(self):
        a = SixParam(0.7, 1.2, 0.0, 2.1, 0.4, 0.0)
        b = SixParam(0.7, 1.2, 1.3, 2.1, 0.4, -2.1)
        assert strength_sixparam_closed(a) == strength_sixparam_closed(b)

    def test_matches_generic(self, rng):
        for _ in range(50):
            p = random_valid_sixparam(rng)
            cmp = compare_closed_vs_generic(make_six_param(p), strength_sixparam_closed(p))
            assert cmp.rel_diff < 1e-9

    def test_vanishing_denominator(self):
        with pytest.raises(ValueError, match="denominator"):
            strength_sixparam_closed(SixParam(np.pi / 2, np.pi / 2, 0, 1, 1, 0))


class TestVanishing:
    def test_reference_pattern_continuity(self):
        ref = sixparam_reference_pattern()
        deltas = 0.5 * (1e-7 / 0.5) ** (np.arange(10) / 9)
        values = []
        for d in deltas:
            p = SixParam(np.pi / 2 - d, PYRAMID_THETA, 0.2, PYRAMID_THETA, PYRAMID_THETA, 0.0)
            values.append(strength_generic(make_six_param(p), ref).value)
        assert all(b < a for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-12

    def test_measured_mode_does_not_vanish(self):
        p = SixParam(np.pi / 2, PYRAMID_THETA, 0.0, PYRAMID_THETA, PYRAMID_THETA, 0.0)
        assert strength_generic(make_six_param(p)).value > 1e-6
        assert strength_generic(make_six_param(p), sixparam_reference_pattern()).value < 1e-30


class TestTriF:
    @pytest.mark.parametrize("y", [-1.0, 0.0, 0.3, 1.0])
    def test_zeros(self, y):
        assert strength_tri_f(0.0, y) == 0
        assert strength_tri_f(1.0, y) == 0
        assert strength_tri_f(-1.0, y) == 0

    def test_symmetry(self, rng):
        for x, y in rng.uniform(-1, 1, size=(100, 2)):
            a, b = strength_tri_f(x, y), strength_tri_f(-x, -y)
            assert abs(a - b) <= 1e-12 * max(a, b)

    def test_high_precision_reference(self, rng):
        for x, y in rng.uniform(-1, 1, size=(20, 2)):
            assert strength_tri_f(x, y) == pytest.approx(tri_f_reference(x, y), rel=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            strength_tri_f(1.2, 0.0)
        with pytest.raises(ValueError):
            strength_tri_f(0.0, -1.5)

    def test_closed_is_cube(self, rng):
        assert strength_tri_closed(0.0, 0.5) == 0
        for x, y in rng.uniform(-1, 1, size=(10, 2)):
            assert strength_tri_closed(x, y) == pytest.approx(strength_tri_f(x, y) ** 3, rel=1e-15)

    def test_removable_point_on_top_row(self):
        # at x = golden ratio, y = 1 numerator and denominator vanish together;
        # the tripartite v_1 vanishes there as well
        g = (np.sqrt(5) - 1) / 2
        with pytest.raises(ValueError, match="denominator"):
            strength_tri_f(g, 1.0)
        assert strength_tri_f(g + 1e-3, 1.0) < 1e-8

    def test_argmax_on_top_row(self):
        xs = np.linspace(-1, 1, 2001)
        vals = []
        for x in xs:
            try:
                vals.append(strength_tri_closed(x, 1.0))
            except ValueError:
                assert abs(x - 0.618) < 1e-9
                vals.append(0.0)
        assert xs[int(np.argmax(vals))] == pytest.approx(SEPT_X, abs=1e-3)


class TestSubfamilyGeneric:
    """The generic per-party factor of the shared slice is exactly f(x, y)."""

    def test_party_factor_equals_f(self, rng):
        ref = tripartite_reference_pattern()
        for x, y in rng.uniform(-0.98, 0.98, size=(15, 2)):
            rep = strength_generic(make_subfamily(np.arccos(x), np.arccos(y)), ref)
            for factor in rep.per_party_factors:
                assert factor == pytest.approx(strength_tri_f(x, y), rel=1e-9)
            assert rep.value == pytest.approx(strength_tri_closed(x, y), rel=1e-9)

    def test_sept_slice_point_near_grid_max(self):
        S = make_subfamily(np.arccos(SEPT_X), 0.0)
        xs, ys = np.linspace(-1, 1, 201), np.linspace(0, 1, 101)
        grid_max = max(strength_tri_closed(x, y) for x in xs for y in ys)
        assert abs(strength_generic(S).value - grid_max) < 1e-6

    def test_comparison_never_raises(self):
        cmp = compare_closed_vs_generic(make_subfamily(1.0, 0.2), 123.0)
        assert cmp.closed == 123.0 and cmp.rel_diff > 0.9
        assert cmp.ratio == pytest.approx(cmp.generic / 123.0)


def test_closed_vs_generic_pyramid(pyramid):
    cmp = compare_closed_vs_generic(pyramid, strength_sixparam_closed(SixParam.equal_angle(PYRAMID_THETA)))
    assert cmp.rel_diff < 1e-9
