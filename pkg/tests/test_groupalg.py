import numpy as np
import pytest

from conftest import random_psd

from qinv.errors import ResourceLimitError, ShapeError
from qinv.groupalg import (
    AlgebraElement,
    adjoint,
    convolve,
    delta,
    format_element,
    is_hermitian_idempotent,
    parse_element,
    shadow_element,
    shadow_enumerator,
    shadow_functional,
    subgroup_averager,
)
from qinv.invariants import apply_perm_tuple
from qinv.permtuple import Perm, PermTuple, all_perms, parse_tuple
from qinv.qspace import Operator, SystemShape


def random_tuple(rng, n, k):
    perms = list(all_perms(k))
    return PermTuple(tuple(perms[rng.integers(len(perms))] for _ in range(n)))


def random_element(rng, n, k, size=4):
    terms = {}
    for _ in range(size):
        t = random_tuple(rng, n, k)
        terms[t] = terms.get(t, 0j) + complex(rng.normal(), rng.normal())
    return AlgebraElement(n, k, terms)


def wrap(entries, alpha=2):
    return Operator.from_matrix(np.asarray(entries, dtype=complex), alpha)


class TestConvolution:
    def test_delta_identity_is_unit(self, rng):
        a = random_element(rng, 2, 3)
        unit = delta(PermTuple.identity(2, 3))
        for prod in (convolve(unit, a), convolve(a, unit)):
            assert prod.terms.keys() == a.terms.keys()
            for t, c in a.terms.items():
                assert abs(prod.terms[t] - c) < 1e-14

    def test_group_law_on_deltas(self, rng):
        from qinv.permtuple import tuple_compose

        for _ in range(10):
            s, t = random_tuple(rng, 2, 3), random_tuple(rng, 2, 3)
            prod = convolve(delta(s), delta(t))
            assert prod.terms == {tuple_compose(s, t): 1.0 + 0j}

    def test_associativity_and_distributivity(self, rng):
        a, b, c = (random_element(rng, 2, 2) for _ in range(3))
        left = convolve(convolve(a, b), c)
        right = convolve(a, convolve(b, c))
        diff = left.plus(right.scaled(-1))
        assert all(abs(v) < 1e-12 for v in diff.terms.values())
        lhs = convolve(a, b.plus(c))
        rhs = convolve(a, b).plus(convolve(a, c))
        diff = lhs.plus(rhs.scaled(-1))
        assert all(abs(v) < 1e-12 for v in diff.terms.values())

    def test_shape_mismatch(self, rng):
        with pytest.raises(ShapeError):
            convolve(random_element(rng, 2, 2), random_element(rng, 2, 3))


class TestAdjoint:
    def test_delta_identity(self):
        d = delta(PermTuple.identity(2, 2))
        assert adjoint(d).terms == d.terms

    def test_involution(self, rng):
        a = random_element(rng, 2, 3)
        back = adjoint(adjoint(a))
        assert back.terms.keys() == a.terms.keys()
        for t, c in a.terms.items():
            assert abs(back.terms[t] - c) < 1e-14

    def test_shadow_self_adjoint(self):
        lam = shadow_element({1, 3}, 3)
        adj = adjoint(lam)
        for t, c in lam.terms.items():
            assert abs(adj.terms[t] - c) < 1e-14


class TestShadowElement:
    def test_empty_sign_set(self):
        lam = shadow_element(set(), 3)
        assert len(lam.terms) == 8
        assert all(abs(c - 0.125) < 1e-14 for c in lam.terms.values())

    def test_single_letter_form(self):
        lam = shadow_element({1}, 1)
        ident = PermTuple.identity(1, 2)
        swap = PermTuple((Perm((2, 1)),))
        assert abs(lam.terms[ident] - 0.5) < 1e-14
        assert abs(lam.terms[swap] + 0.5) < 1e-14

    def test_support_size(self):
        for n in (1, 2, 3, 4):
            assert len(shadow_element({1}, n).terms) == 2**n

    def test_idempotent(self):
        for subset in (set(), {1}, {2, 3}, {1, 2, 3}):
            assert is_hermitian_idempotent(shadow_element(subset, 3), 1e-10)

    def test_unnormalized_convolution_scale(self):
        n = 3
        raw = shadow_element({1, 2}, n).scaled(2.0**n)
        prod = convolve(raw, raw)
        expected = raw.scaled(2.0**n)
        diff = prod.plus(expected.scaled(-1))
        assert all(abs(v) < 1e-10 for v in diff.terms.values())


class TestIdempotents:
    def test_delta_identity(self):
        assert is_hermitian_idempotent(delta(PermTuple.identity(2, 3)), 1e-10)

    def test_scaled_delta_is_not(self):
        assert not is_hermitian_idempotent(delta(PermTuple.identity(2, 3)).scaled(2.0), 1e-10)

    def test_subgroup_averager(self, rng):
        gen = parse_tuple("(1,2,3);(1,2,3)", 3)
        avg = subgroup_averager([gen])
        assert len(avg.terms) == 3
        assert is_hermitian_idempotent(avg, 1e-10)

    def test_full_diagonal_averager(self):
        gens = [
            parse_tuple("(1,2);(1,2)", 3),
            parse_tuple("(1,2,3);(1,2,3)", 3),
        ]
        avg = subgroup_averager(gens)
        assert len(avg.terms) == 6
        assert is_hermitian_idempotent(avg, 1e-10)

    def test_closure_cap(self):
        gens = [
            parse_tuple("(1,2);e", 2),
            parse_tuple("e;(1,2)", 2),
        ]
        with pytest.raises(ResourceLimitError):
            subgroup_averager(gens, cap=3)


class TestShadowFunctional:
    def test_delta_identity_gives_trace_power(self, p442):
        for k in (1, 2, 3):
            a = delta(PermTuple.identity(4, k))
            value = shadow_functional(a, [p442] * k)
            assert abs(value - 4.0**k) < 1e-9

    def test_shadow_nonnegative_on_psd(self, rng):
        shape = SystemShape(2, 2)
        lam = shadow_element({1}, 2)
        for _ in range(10):
            ops = [wrap(random_psd(rng, 4)) for _ in range(2)]
            value = shadow_functional(lam, ops)
            assert value.real >= -1e-9
            assert abs(value.imag) < 1e-9

    def test_diagonal_averager_nonnegative_on_rank_one(self, rng):
        gen = parse_tuple("(1,2,3);(1,2,3)", 3)
        avg = subgroup_averager([gen])
        ops = [wrap(random_psd(rng, 4, rank=1)) for _ in range(3)]
        value = shadow_functional(avg, ops)
        assert value.real >= -1e-9

    def test_squared_norm_identity_rank_one(self, rng):
        # the functional on rank-one PSD inputs equals the squared norm of
        # sum over pi of lambda(pi) T(pi) (v_1 (x) ... (x) v_k)
        shape = SystemShape(2, 2)
        lam = shadow_element({2}, 2)
        vecs = [rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(2)]
        ops = [wrap(np.outer(v, v.conj())) for v in vecs]
        big = np.kron(vecs[0], vecs[1])
        acc = np.zeros(16, dtype=complex)
        for t, c in lam.terms.items():
            acc += c * apply_perm_tuple(t, big, shape)
        value = shadow_functional(lam, ops)
        assert abs(value - np.vdot(acc, acc)) < 1e-9


class TestShadowEnumerator:
    def test_fixture_total(self, p442):
        # sum over all 16 subsets of the quadratic enumerators of the
        # ((4,4,2)) projector; the subset sizes contribute 16/2^s each
        value = shadow_enumerator(p442, p442, set())
        assert abs(value - 84.0) < 1e-9

    def test_scalar_embedding(self):
        # diag(c, 0) embeds the scalar [c] into one letter; the two subsets
        # (empty and full) contribute c^2 each
        c = 1.7
        m = Operator(SystemShape(1, 2), np.diag([c, 0.0]))
        value = shadow_enumerator(m, m, set())
        assert abs(value - 2 * c**2) < 1e-12

    def test_matches_functional_scaling(self, rng, p442):
        for subset in (set(), {1}, {1, 3}, {1, 2, 3, 4}):
            lam = shadow_element(subset, 4)
            lhs = shadow_enumerator(p442, p442, subset)
            rhs = (2.0**4) * shadow_functional(lam, [p442, p442])
            assert abs(lhs - rhs) < 1e-9

    def test_nonnegative_on_psd(self, rng):
        shape = SystemShape(2, 2)
        for subset in (set(), {1}, {2}, {1, 2}):
            m = wrap(random_psd(rng, 4))
            n_op = wrap(random_psd(rng, 4))
            value = shadow_enumerator(m, n_op, subset)
            assert value.real >= -1e-9


class TestElementText:
    def test_round_trip(self, rng):
        a = random_element(rng, 2, 3)
        back = parse_element(format_element(a), k=3)
        assert back.terms.keys() == a.terms.keys()
        for t, c in a.terms.items():
            assert abs(back.terms[t] - c) < 1e-12

    def test_degree_inference_across_lines(self):
        text = "1 0 e;e\n-1 0 (1,2);(1,2)\n"
        a = parse_element(text)
        assert a.k == 2 and a.n == 2 and len(a.terms) == 2
