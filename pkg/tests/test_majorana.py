from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubitstars.errors import InvalidStateError, ZeroPolynomialError
from qubitstars.invariants3 import concurrence2, three_tangle
from qubitstars.majorana import (
    INFINITY,
    Constellation,
    Star,
    chordal_distance,
    concurrence_from_stars,
    constellation_from_polynomial,
    constellation_of,
    majorana_polynomial,
    permanent,
    root_from_star,
    roots_with_infinity,
    star_from_root,
    symmetric_state_from_stars,
    tangle_from_star_angles,
    tangle_from_stars,
)
from qubitstars.qstate import (
    PureState,
    SpinState,
    coherent_overlap,
    coherent_state,
    symmetric_to_spin,
    symmetry_defect,
)
from qubitstars.symmetrize import symmetrize

VT = np.pi / 10


def _gghz_spin(t):
    return SpinState([np.sin(t), 0, 0, np.cos(t)])


def _random_star(rng):
    v = rng.normal(size=3)
    return Star.from_vector(v / np.linalg.norm(v))


def _match(c1: Constellation, c2: Constellation) -> float:
    """Smallest worst-case distance over pairings of the expanded stars."""
    a, b = c1.vectors(), c2.vectors()
    if len(a) != len(b):
        return np.inf
    a = np.repeat(a, [s.multiplicity for s in c1.stars], axis=0)
    b = np.repeat(b, [s.multiplicity for s in c2.stars], axis=0)
    return min(max(np.linalg.norm(a[i] - b[p[i]]) for i in range(len(a))) for p in permutations(range(len(b))))


def test_polynomial_of_gghz():
    np.testing.assert_allclose(majorana_polynomial(_gghz_spin(VT)), [np.sin(VT), 0, 0, -np.cos(VT)], atol=1e-16)


@pytest.mark.parametrize("twoj", [1, 2, 3, 5])
def test_polynomial_of_coherent_state(twoj):
    theta, phi = 1.1, 2.3
    expected = np.polynomial.polynomial.polypow([np.cos(theta / 2), -np.sin(theta / 2) * np.exp(-1j * phi)], twoj)
    np.testing.assert_allclose(majorana_polynomial(coherent_state(twoj, theta, phi)), expected, atol=1e-14)


def test_lowest_weight_gives_constant():
    p = majorana_polynomial(SpinState([1, 0, 0]))
    np.testing.assert_allclose(p, [1, 0, 0])
    c = constellation_of(SpinState([1, 0, 0]))
    assert c.stars == (Star(0.0, 0.0, 2),)


def test_roots_of_gghz_polynomial():
    roots, inf = roots_with_infinity([np.sin(VT), 0, 0, -np.cos(VT)])
    assert inf == 0
    expected = np.tan(VT) ** (1 / 3) * np.exp(2j * np.pi * np.arange(3) / 3)
    got = sorted((z for z, k in roots), key=np.angle)
    np.testing.assert_allclose(sorted(got, key=lambda z: np.angle(z) % (2 * np.pi)), expected, atol=1e-14)


def test_degree_deficiency():
    roots, inf = roots_with_infinity([0, 1, 0, 0])
    assert roots == [(0j, 1)] and inf == 2


def test_double_root():
    roots, inf = roots_with_infinity([1, -2, 1])
    assert inf == 0 and len(roots) == 1
    z, k = roots[0]
    assert k == 2 and abs(z - 1) <= 1e-12


def test_zero_polynomial():
    with pytest.raises(ZeroPolynomialError):
        roots_with_infinity([0, 0, 0])


@pytest.mark.parametrize("mult", [2, 3, 4])
def test_high_multiplicities(mult, rng):
    for _ in range(30):
        z0 = complex(rng.normal(), rng.normal())
        other = complex(rng.normal(), rng.normal())
        asc = np.polynomial.polynomial.polyfromroots([z0] * mult + [other])
        roots, _ = roots_with_infinity(asc)
        ks = sorted(k for _, k in roots)
        assert ks == [1, mult]


def test_close_distinct_roots_stay_apart():
    asc = np.polynomial.polynomial.polyfromroots([0.5, 0.5 + 1e-4, -1.0])
    roots, _ = roots_with_infinity(asc)
    assert sorted(k for _, k in roots) == [1, 1, 1]


def test_backward_error(rng):
    worst = 0.0
    for _ in range(1000):
        deg = int(rng.integers(1, 9))
        c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        roots, _ = roots_with_infinity(c)
        for z, _ in roots:
            worst = max(worst, abs(np.polynomial.polynomial.polyval(z, c)) / np.abs(c).max())
    assert worst <= 1e-9


def test_star_from_root_examples():
    assert star_from_root(1.0) == Star(np.pi / 2, 0.0)
    assert star_from_root(INFINITY) == Star(0.0, 0.0)
    assert star_from_root(0.0) == Star(np.pi, 0.0)
    s = star_from_root(np.tan(VT) ** (1 / 3))
    assert s.theta == pytest.approx(2 * np.arctan(1 / np.tan(VT) ** (1 / 3)), abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 3.13), st.floats(0, 6.28))
def test_root_star_roundtrip(theta, phi):
    s = Star(theta, phi)
    back = star_from_root(root_from_star(s))
    assert np.linalg.norm(back.vector - s.vector) <= 1e-12


def test_star_vector_is_unit(rng):
    for _ in range(100):
        s = _random_star(rng)
        assert abs(np.linalg.norm(s.vector) - 1) <= 1e-12
        assert 0 <= s.theta <= np.pi and 0 <= s.phi < 2 * np.pi


def test_constellation_of_gghz():
    c = constellation_of(_gghz_spin(VT))
    assert c.degree == 3 and len(c.stars) == 3
    lat = 2 * np.arctan(1 / np.tan(VT) ** (1 / 3))
    for s, phi in zip(c.stars, [0, 2 * np.pi / 3, 4 * np.pi / 3]):
        assert s.theta == pytest.approx(lat, abs=1e-12)
        assert s.phi == pytest.approx(phi, abs=1e-12)


def test_constellation_of_ghz4():
    spin = symmetric_to_spin(PureState(np.eye(16)[0] + np.eye(16)[15]).normalized())
    c = constellation_of(spin)
    assert [s.multiplicity for s in c.stars] == [1] * 4
    for s, k in zip(c.stars, range(4)):
        assert s.theta == pytest.approx(np.pi / 2, abs=1e-10)
        assert s.phi == pytest.approx((2 * k + 1) * np.pi / 4, abs=1e-10)


@pytest.mark.parametrize("twoj", [1, 2, 3, 4, 6])
def test_coherent_state_gives_degenerate_star(twoj):
    theta, phi = 1.0, 2.0
    c = constellation_of(coherent_state(twoj, theta, phi))
    assert len(c.stars) == 1 and c.stars[0].multiplicity == twoj
    assert np.linalg.norm(c.stars[0].vector - Star(theta, phi).vector) <= 1e-8


def test_canonical_order(rng):
    for _ in range(30):
        c = Constellation(tuple(_random_star(rng) for _ in range(5)))
        keys = [(-np.cos(s.theta), s.phi) for s in c.stars]
        assert keys == sorted(keys)


def test_chordal_distance_examples():
    a = Star(0.7, 1.2)
    assert chordal_distance(a, a) == 0.0
    assert chordal_distance(a, a.antipode()) == pytest.approx(2.0)
    # equilateral triangle of the gGHZ constellation
    c = constellation_of(_gghz_spin(VT))
    r = np.tan(VT) ** (1 / 3)
    d = 2 * np.sqrt(3) / (1 / r + r)
    s = c.stars
    for i, j in [(0, 1), (1, 2), (0, 2)]:
        assert chordal_distance(s[i], s[j]) == pytest.approx(d, abs=1e-12)


def test_tangle_from_stars_examples():
    assert tangle_from_stars(Constellation((Star(1.0, 0.3, 2), Star(2.0, 1.0)))) == 0.0
    eq = Constellation(tuple(Star(np.pi / 2, 2 * np.pi * k / 3) for k in range(3)))
    assert tangle_from_stars(eq) == pytest.approx(1.0, abs=1e-14)
    c = constellation_of(_gghz_spin(VT))
    assert tangle_from_stars(c) == pytest.approx(np.sin(2 * VT) ** 2, abs=1e-12)
    assert tangle_from_star_angles(c) == pytest.approx(tangle_from_stars(c), abs=1e-12)
    with pytest.raises(InvalidStateError):
        tangle_from_stars(Constellation((Star(1.0, 0.0, 2),)))


def test_concurrence_from_stars_examples():
    assert concurrence_from_stars(Constellation((Star(1.0, 1.0, 2),))) == 0.0
    bell = Constellation((Star(np.pi / 2, 0.0), Star(np.pi / 2, np.pi)))
    assert concurrence_from_stars(bell) == pytest.approx(1.0)
    for chi in np.linspace(0.05, np.pi / 4, 7):
        theta = np.pi - 2 * np.arctan(np.sqrt(np.tan(chi)))
        c = Constellation((Star(theta, np.pi / 2), Star(theta, 3 * np.pi / 2)))
        assert concurrence_from_stars(c) == pytest.approx(np.sin(2 * chi), abs=1e-12)


def test_permanent():
    assert permanent(np.array([[1, 2], [3, 4]])) == pytest.approx(10)
    assert permanent(np.ones((4, 4))) == pytest.approx(24)


def test_state_from_two_north_stars():
    out = symmetric_state_from_stars(Constellation((Star(0.0, 0.0, 2),)))
    np.testing.assert_allclose(out.amp, PureState.basis("00").amp, atol=1e-15)


def test_state_from_gghz_stars():
    out = symmetric_state_from_stars(constellation_of(_gghz_spin(VT)))
    assert three_tangle(out) == pytest.approx(np.sin(2 * VT) ** 2, abs=1e-9)


def test_state_star_roundtrip(rng):
    for _ in range(100):
        n = int(rng.integers(1, 5))
        c = Constellation(tuple(_random_star(rng) for _ in range(n)))
        s = symmetric_state_from_stars(c)
        assert abs(s.norm - 1) <= 1e-12 and symmetry_defect(s) <= 1e-12
        assert _match(constellation_of(symmetric_to_spin(s)), c) <= 1e-8


def test_overlap_vanishes_at_antipodes(rng):
    for _ in range(50):
        twoj = int(rng.integers(1, 8))
        c = rng.normal(size=twoj + 1) + 1j * rng.normal(size=twoj + 1)
        spin = SpinState(c / np.linalg.norm(c))
        for s in constellation_of(spin).stars:
            a = s.antipode()
            assert abs(coherent_overlap(spin, a.theta, a.phi)) <= 1e-8


def test_three_star_tangle_formula(rng):
    for _ in range(300):
        c = Constellation(tuple(_random_star(rng) for _ in range(3)))
        assert abs(tangle_from_stars(c) - three_tangle(symmetric_state_from_stars(c))) <= 1e-8


def test_two_star_concurrence_formula(rng):
    for _ in range(300):
        c = Constellation(tuple(_random_star(rng) for _ in range(2)))
        assert abs(concurrence_from_stars(c) - concurrence2(symmetric_state_from_stars(c))) <= 1e-10


def test_zero_tangle_states_have_degenerate_stars(rng):
    for _ in range(100):
        c, d, e = rng.uniform(0.05, 1.0, size=3)
        res = symmetrize(PureState([0, c, d, 0, e, 0, 0, 0]).normalized())
        stars = constellation_of(symmetric_to_spin(res.output)).stars
        assert max(s.multiplicity for s in stars) >= 2


def test_repeated_star_means_zero_tangle(rng):
    for _ in range(50):
        a, b = _random_star(rng), _random_star(rng)
        c = Constellation((Star(a.theta, a.phi, 2), b))
        assert three_tangle(symmetric_state_from_stars(c)) <= 1e-12


def test_polynomial_with_roots_at_both_poles():
    c = constellation_from_polynomial([0, 0, 1, 0, 0])
    assert c.stars == (Star(0.0, 0.0, 2), Star(np.pi, 0.0, 2))
