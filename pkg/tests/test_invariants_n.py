import numpy as np
import pytest

from qubitstars.errors import InvalidOperationError, InvalidStateError
from qubitstars.invariants_n import (
    CLUSTER_STATE,
    F_PAIRS,
    f_contraction,
    f_witness,
    four_invariants,
    g_abcd,
    g_abcd_closed_forms,
    g_abcd_from_bells,
    g_matrix_xt,
    inv4_D,
    inv4_H,
    inv4_L,
    inv4_M,
    inv5_F,
    l_parameters,
    l_prime_displayed,
    l_prime_roots,
    l_state,
    l_state_symmetrized,
    cluster_parameters,
    cluster_phase_chain,
    reduced_density,
    special_case_family,
    special_case_roots,
    symmetric_D,
    symmetric_H,
    symmetrizable_generic,
)
from qubitstars.majorana import constellation_of, majorana_polynomial, roots_with_infinity
from qubitstars.qstate import (
    PureState,
    apply_local,
    permute_qubits,
    random_sl_chain,
    random_state,
    random_symmetric_state,
    symmetric_to_spin,
    symmetry_defect,
    transposition,
)


def _rand_abcd(rng):
    return tuple(complex(x, y) for x, y in rng.normal(size=(4, 2)))


def _projective_roots_match(found, expected, tol):
    found = list(found)
    for z in expected:
        i = int(np.argmin([abs(f - z) for f in found]))
        if abs(found[i] - z) > tol * max(1.0, abs(z)):
            return False
        found.pop(i)
    return not found


def test_H_examples():
    assert inv4_H(PureState.basis("0000")) == 0
    ghz4 = PureState(np.eye(16)[0] + np.eye(16)[15]).normalized()
    assert inv4_H(ghz4) == pytest.approx(0.5)
    a, b, c, d = 0.3, 1.1j, -0.4, 0.7 + 0.2j
    assert inv4_H(g_abcd(a, b, c, d)) == pytest.approx(0.5 * (a * a + b * b + c * c + d * d))


def test_D_of_product_state():
    assert inv4_D(PureState.basis("0000")) == 0


def test_wrong_qubit_count():
    with pytest.raises(InvalidStateError):
        inv4_H(PureState.basis("000"))
    with pytest.raises(InvalidStateError):
        inv5_F(PureState.basis("0000"))
    with pytest.raises(InvalidOperationError):
        f_contraction(np.zeros(16))


def test_closed_forms(rng):
    for _ in range(100):
        p = _rand_abcd(rng)
        got = four_invariants(g_abcd(*p))
        want = g_abcd_closed_forms(*p)
        for name in "HLMD":
            assert abs(getattr(got, name) - getattr(want, name)) <= 1e-10 * max(1.0, abs(getattr(want, name)))


def test_bell_construction(rng):
    for _ in range(20):
        p = _rand_abcd(rng)
        np.testing.assert_allclose(g_abcd(*p).amp, g_abcd_from_bells(*p).amp, atol=1e-12)


def test_named_members():
    epr = g_abcd_from_bells(1, 0, 0, 0)
    np.testing.assert_allclose(g_abcd(1, 0, 0, 0).amp, epr.amp, atol=1e-15)
    ghz4 = PureState(np.eye(16)[0] + np.eye(16)[15]).normalized()
    s = 2**-0.5
    np.testing.assert_allclose(g_abcd(s, 0, 0, s).amp, ghz4.amp, atol=1e-15)


def test_cluster_state_from_generic_family():
    out = apply_local(g_abcd(*cluster_parameters()), cluster_phase_chain())
    np.testing.assert_allclose(out.amp, CLUSTER_STATE.amp, atol=1e-15)
    assert all(abs(d - 1) <= 1e-15 for d in cluster_phase_chain().dets)


def test_cluster_with_displayed_parameters():
    # a = (i + e^{-i pi/4})/2, d = (i - e^{-i pi/4})/2 as often quoted
    w = np.exp(-1j * np.pi / 4)
    out = apply_local(g_abcd((1j + w) / 2, 0, 0, (1j - w) / 2), cluster_phase_chain())
    assert np.linalg.norm(out.amp - CLUSTER_STATE.amp) > 0.1


def test_sl_invariance(rng):
    for _ in range(100):
        s = random_state(4, rng)
        before = four_invariants(s)
        after = four_invariants(apply_local(s, random_sl_chain(4, rng)))
        for name in "HLMD":
            b, a = getattr(before, name), getattr(after, name)
            assert abs(a - b) <= 1e-9 * max(abs(b), 1e-300)


def test_symmetric_identities(rng):
    for _ in range(100):
        s = random_symmetric_state(4, rng)
        assert abs(inv4_L(s)) <= 1e-10
        assert abs(inv4_M(s)) <= 1e-10
        assert abs(inv4_D(s) - symmetric_D(s)) <= 1e-10
        assert abs(inv4_H(s) - symmetric_H(s)) <= 1e-12


def test_g_matrix_is_symmetric_for_symmetric_states(rng):
    g = g_matrix_xt(random_symmetric_state(4, rng))
    np.testing.assert_allclose(g, g.T, atol=1e-12)


def test_reduced_density_examples(rng):
    ghz4 = PureState(np.eye(16)[0] + np.eye(16)[15]).normalized()
    np.testing.assert_allclose(reduced_density(ghz4, [0, 1]).rho, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)
    for _ in range(100):
        s = random_state(4, rng)
        assert abs(abs(inv4_L(s)) ** 2 - np.linalg.det(reduced_density(s, [0, 1]).rho).real) <= 1e-9
        assert abs(abs(inv4_M(s)) ** 2 - np.linalg.det(reduced_density(s, [0, 2]).rho).real) <= 1e-9
    with pytest.raises(InvalidOperationError):
        reduced_density(ghz4, [0, 1, 2, 3])


def test_symmetrizable_predicate():
    assert not symmetrizable_generic(1, 0, 0, 0)
    assert not symmetrizable_generic(*cluster_parameters())
    w = np.exp(-1j * np.pi / 4)
    assert not symmetrizable_generic((1j + w) / 2, 0, 0, (1j - w) / 2)
    assert symmetrizable_generic(*l_parameters())


def test_l_state_invariants():
    inv = four_invariants(l_state())
    assert abs(inv.L) <= 1e-15


def test_l_prime_is_symmetric():
    chain, lp = l_state_symmetrized()
    assert symmetry_defect(lp) <= 1e-12
    assert abs(lp.norm - 1) <= 1e-12
    # displayed amplitudes are twice the transformed ones
    np.testing.assert_allclose(l_prime_displayed().amp, 2 * lp.amp, atol=1e-15)
    assert all(abs(d - 1) <= 1e-15 for d in chain.dets)


def test_l_prime_polynomial_and_roots():
    _, lp = l_state_symmetrized()
    p = majorana_polynomial(symmetric_to_spin(lp))
    w = np.exp(2j * np.pi / 3)
    displayed = np.array([(1 - w), 0, -6 * w**2, 0, (1 - w)]) / np.sqrt(3)
    ratio = displayed[0] / p[0]
    np.testing.assert_allclose(p * ratio, displayed, atol=1e-14)
    roots, inf = roots_with_infinity(p)
    assert inf == 0
    assert _projective_roots_match([z for z, _ in roots], l_prime_roots(), 1e-8)


def test_special_family(rng):
    for _ in range(50):
        b, d = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        s = special_case_family(b, d)
        assert symmetry_defect(s) <= 1e-14
        roots, inf = roots_with_infinity(majorana_polynomial(symmetric_to_spin(s.normalized())))
        assert inf == 0
        expanded = [z for z, k in roots for _ in range(k)]
        assert _projective_roots_match(expanded, special_case_roots(b, d), 1e-8)


def test_special_family_equator_when_b_vanishes():
    c = constellation_of(symmetric_to_spin(special_case_family(0, 1.0).normalized()))
    assert [s.theta for s in c.stars] == pytest.approx([np.pi / 2] * 4)


def test_special_family_degree_collapse():
    s = special_case_family(2.0, -1.0).normalized()
    roots, inf = roots_with_infinity(majorana_polynomial(symmetric_to_spin(s)))
    assert inf == 2
    assert roots == [(0j, 2)]
    with pytest.raises(ZeroDivisionError):
        special_case_roots(2.0, -1.0)


def test_f_pairs_cover_every_slot_once():
    ends = [e for pair in F_PAIRS for e in pair]
    assert sorted(ends) == [(c, q) for c in range(6) for q in range(5)]


def test_f_examples():
    assert inv5_F(PureState.basis("00000")) == 0
    assert inv5_F(f_witness()) == pytest.approx(1 / 36, abs=1e-15)


def test_f_vanishes_on_symmetric_states(rng):
    for _ in range(50):
        assert abs(inv5_F(random_symmetric_state(5, rng))) <= 1e-9


def test_f_is_odd_under_transpositions(rng):
    for _ in range(10):
        s = random_state(5, rng)
        f = inv5_F(s)
        for a in range(5):
            for b in range(a + 1, 5):
                g = inv5_F(permute_qubits(s, transposition(5, a, b)))
                assert abs(g + f) <= 1e-12 * max(1.0, abs(f)) + 1e-15


def test_f_sl_invariance_extended_precision(rng):
    worst = 0.0
    for _ in range(100):
        s = random_state(5, rng)
        chain = random_sl_chain(5, rng)
        t = s.tensor.astype(np.clongdouble)
        for op in chain:
            t = np.moveaxis(np.tensordot(op.mat.astype(np.clongdouble), t, axes=([1], [op.slot])), 0, op.slot)
        before = f_contraction(s.amp.astype(np.clongdouble))
        after = f_contraction(t.reshape(32))
        worst = max(worst, float(abs(after - before) / abs(before)))
    assert worst <= 1e-8


def test_witness_is_not_symmetric():
    assert symmetry_defect(f_witness()) > 0.1
    assert abs(f_witness().norm - 1) <= 1e-15

