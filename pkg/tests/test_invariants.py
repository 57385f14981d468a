import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twobridge.errors import InvalidKnotError, RegimeError, SingularLongitudeError
from twobridge.invariants import (
    COMPLETE_MODULUS,
    InvariantResult,
    chern_simons,
    chern_simons_complete,
    complex_length,
    cyclic_cover,
    decimal,
    longitude_holonomy,
    longitude_L,
    longitude_L_from_block,
    longitude_matrix,
    lens_cs,
    orbifold_modulus,
    real_length,
    reduce_mod,
    result_json,
    simpson,
    volume,
    volume_derivative,
)
from twobridge.knots import C2N4_BLOCK, GroupWord
from twobridge.reference import TABLE2
from twobridge.solver import DEFAULT, PrecisionConfig, cone_geometry, geometric_root

# Gauss-Legendre volumes from scripts/oracle_volume.py (roots re-solved at
# every node, no path tracker); degrees 6 and 7 agree to all 25 digits
ORACLE_VOLUME = {
    (1, "0"): "3.163963228883143983991015",
    (1, "2pi/3"): "0.6542458859281551492458654",
    (-1, "2pi/3"): "0.3142357875923095684669701",
    (2, "2pi/3"): "1.762343935742731562247773",
    (3, "pi/2"): "3.883849931772176137201692",
}
ANGLES = {"0": lambda: mpmath.mpf(0), "2pi/3": lambda: 2 * mpmath.pi / 3, "pi/2": lambda: mpmath.pi / 2}

coords = st.floats(min_value=-3, max_value=3, allow_nan=False)
angles = st.floats(min_value=0.2, max_value=3.1)


@pytest.fixture(autouse=True)
def working_precision():
    with DEFAULT.workprec():
        yield


def circular_gap(a, b, period=1):
    d = (a - b) % period
    return min(d, period - d)


class TestLongitude:
    @given(x=coords, alpha=angles)
    def test_unit_modulus_for_real_x(self, x, alpha):
        try:
            L = longitude_L(mpmath.mpf(x), mpmath.mpf(alpha))
        except SingularLongitudeError:
            return
        assert abs(abs(L) - 1) < mpmath.mpf(2) ** -200

    @given(re=coords, im=coords, alpha=angles)
    def test_conjugate_reciprocity(self, re, im, alpha):
        x = mpmath.mpc(re, im)
        try:
            a = longitude_L(x, alpha)
            b = longitude_L(mpmath.conj(x), alpha)
        except SingularLongitudeError:
            return
        assert abs(abs(a) * abs(b) - 1) < mpmath.mpf(2) ** -180

    @pytest.mark.parametrize("n", [1, -1, 2, -3])
    @pytest.mark.parametrize("alpha", ["0.7", "2.0", "3.0"])
    def test_block_route_on_branch(self, n, alpha):
        a = mpmath.mpf(alpha)
        x = geometric_root(n, a)
        L = longitude_L(x, a)
        assert abs(longitude_L_from_block(n, x, a) - L) < mpmath.mpf(2) ** -128 * abs(L)

    @pytest.mark.parametrize("n", [1, -2, 3])
    def test_longitude_matrix_is_peripheral(self, n):
        a = mpmath.mpf("1.3")
        x = geometric_root(n, a)
        m = longitude_matrix(C2N4_BLOCK**n, x, a)
        L = longitude_L(x, a)
        assert abs(m[2]) < mpmath.mpf(2) ** -200
        assert abs(m[0] - L) < mpmath.mpf(2) ** -200
        gamma = complex_length(C2N4_BLOCK**n, x, a)
        assert abs(2 * mpmath.cosh(gamma / 2) - (L + 1 / L)) < mpmath.mpf(2) ** -180

    def test_holonomy_fields(self):
        a = mpmath.mpf("1.0")
        x = geometric_root(1, a)
        h = longitude_holonomy(x, a)
        assert h.gamma.real >= 0
        assert abs(h.l_real - real_length(x, a)) < mpmath.mpf(2) ** -200
        assert abs(h.trace - (h.L + 1 / h.L)) == 0

    def test_identity_word_is_parabolic(self):
        gamma = complex_length(GroupWord(()), mpmath.mpf("0.4"), mpmath.mpf(1))
        assert abs(gamma) < mpmath.mpf(2) ** -100

    @pytest.mark.parametrize("n", [1, -1])
    def test_length_vanishes_at_alpha0(self, n):
        geo = cone_geometry(n)
        assert real_length(geo.x0, geo.alpha0) < mpmath.mpf(2) ** -100

    def test_spherical_length_is_zero(self):
        # real x on the spherical side: |L| = 1
        a = mpmath.mpf(3)
        assert real_length(geometric_root(1, a), a) < mpmath.mpf(2) ** -200


class TestVolume:
    @pytest.mark.parametrize("key", sorted(ORACLE_VOLUME, key=str))
    def test_matches_oracle(self, key):
        n, label = key
        v = volume(n, ANGLES[label](), panels=1000)
        assert abs(v - mpmath.mpf(ORACLE_VOLUME[key])) < 1e-11

    def test_fourth_order_convergence(self):
        # Simpson in t: halving the step divides the error by about 16
        ref = mpmath.mpf(ORACLE_VOLUME[(1, "2pi/3")])
        errs = [abs(volume(1, 2 * mpmath.pi / 3, panels=p) - ref) for p in (250, 500, 1000)]
        for coarse, fine in zip(errs, errs[1:]):
            assert 13 < coarse / fine < 19

    @pytest.mark.parametrize("n", [1, -1, 4])
    def test_zero_at_alpha0(self, n):
        assert volume(n, cone_geometry(n).alpha0, panels=200) == 0

    def test_spherical_angle_rejected(self):
        with pytest.raises(RegimeError):
            volume(1, 3.0, panels=200)
        with pytest.raises(RegimeError):
            volume(1, -0.1, panels=200)

    def test_odd_panels_rejected(self):
        with pytest.raises(ValueError):
            volume(1, 1.0, panels=101)

    def test_bad_twist(self):
        with pytest.raises(InvalidKnotError):
            volume(0, 1.0)

    def test_derivative_matches_difference(self):
        a, h = mpmath.mpf("1.5"), mpmath.mpf("1e-4")
        fd = (volume(-1, a + h, panels=1000) - volume(-1, a - h, panels=1000)) / (2 * h)
        assert abs(fd - volume_derivative(-1, a)) < 1e-7

    def test_derivative_sign(self):
        assert volume_derivative(2, 1.0) < 0


class TestQuadrature:
    def test_simpson_exact_on_cubics(self):
        h = mpmath.mpf(1) / 8
        vals = [(i * h) ** 3 - 2 * (i * h) for i in range(9)]
        assert abs(simpson(vals, h) - (mpmath.mpf(1) / 4 - 1)) < mpmath.mpf(2) ** -200

    def test_simpson_needs_even_count(self):
        with pytest.raises(ValueError):
            simpson([0, 1], 1)


class TestLens:
    @pytest.mark.parametrize("n,value", [(1, Fraction(1, 9)), (-1, Fraction(4, 7)), (2, Fraction(0)),
                                         (-2, Fraction(11, 15)), (3, Fraction(24, 25))])
    def test_values(self, n, value):
        assert lens_cs(n) == value

    @given(st.integers(min_value=-50, max_value=50).filter(bool))
    def test_exact_form(self, n):
        v = lens_cs(n)
        assert 0 <= v < 1
        assert (v * (8 * n + 1) - (7 * n + 3)) % 1 == 0
        assert (8 * n + 1) % v.denominator == 0


class TestReduction:
    def test_moduli(self):
        assert orbifold_modulus(4) == Fraction(1, 4)
        assert orbifold_modulus(5) == Fraction(1, 10)
        assert COMPLETE_MODULUS == Fraction(1, 2)

    @given(v=st.floats(min_value=-5, max_value=5, allow_nan=False), k=st.integers(3, 12))
    def test_reduce_mod_representative(self, v, k):
        m = orbifold_modulus(k)
        r = reduce_mod(mpmath.mpf(v), m, 256)
        mf = mpmath.mpf(m.numerator) / m.denominator
        assert 0 <= r < mf
        q = (mpmath.mpf(v) - r) / mf
        assert abs(q - mpmath.nint(q)) < 1e-9 or r == 0

    def test_snap_near_modulus(self):
        m = Fraction(1, 4)
        assert reduce_mod(mpmath.mpf(1) / 4 - mpmath.mpf(2) ** -50, m, 256) == 0
        assert reduce_mod(mpmath.mpf(2) ** -50, m, 256) == 0
        assert reduce_mod(mpmath.mpf(1) / 4 - mpmath.mpf(2) ** -30, m, 256) > 0
        assert reduce_mod(mpmath.mpf(2) ** -30, m, 256) > 0

    def test_result_validates_range(self):
        with pytest.raises(ValueError):
            InvariantResult(mpmath.mpf("0.6"), Fraction(1, 2), (100,), 256)


class TestChernSimons:
    @pytest.mark.parametrize("n", [2])
    def test_amphichiral_vanishes(self, n):
        for k in range(3, 11):
            assert chern_simons(n, k).value == 0
        assert chern_simons_complete(n, panels=200).value == 0

    def test_bad_k(self):
        with pytest.raises(ValueError):
            chern_simons(1, 2)
        with pytest.raises(ValueError):
            chern_simons(1, 3.5)

    @pytest.mark.parametrize("n", sorted(TABLE2))
    def test_published_table(self, n):
        # orbifold values to 1e-4; the printed cover column is k times the
        # printed orbifold value, so its rounding error scales with k
        for k, (orb, cover) in TABLE2[n].items():
            res = cyclic_cover(n, k)
            m = float(res.orbifold_cs.modulus)
            assert circular_gap(float(res.orbifold_cs.value), float(orb), m) < 1e-4, (n, k)
            assert circular_gap(float(res.cs.value), float(cover)) < k * 1e-4, (n, k)

    def test_cover_scaling(self):
        res = cyclic_cover(-2, 6)
        assert abs(res.volume - 6 * res.orbifold_volume) == 0
        assert abs(res.cs.value - (6 * res.orbifold_cs.value) % 1) < mpmath.mpf(2) ** -200

    def test_deterministic(self):
        a = chern_simons(3, 7).value
        b = chern_simons(3, 7).value
        assert a == b

    def test_precision_independent(self):
        lo = chern_simons(1, 4, cfg=PrecisionConfig(mantissa_bits=128))
        hi = chern_simons(1, 4)
        assert abs(lo.value - hi.value) < 1e-25


class TestSerialisation:
    def test_decimal_digits(self):
        s = decimal(mpmath.pi, 256)
        assert s.startswith("3.14159265358979323846")
        assert len(s.split(".")[1]) >= 70

    def test_decimal_small_is_fixed_point(self):
        assert "e" not in decimal(mpmath.mpf("1e-20"), 128)

    def test_result_json(self):
        cs = chern_simons(1, 3)
        vol = volume(1, 2 * mpmath.pi / 3, panels=100)
        data = json.loads(json.dumps(result_json(1, 3, vol, cs)))
        assert data["n"] == 1 and data["k"] == 3
        assert abs(mpmath.mpf(data["cs"]) - cs.value) < 1e-70
        assert abs(mpmath.mpf(data["vol"]) - vol) < 1e-70
