import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coherence_lattice.errors import (
    DeterministicLadderError,
    DeterministicNoResidualError,
    DimensionMismatchError,
    EntryExceedsOneError,
    LadderMismatchError,
    NotNormalizedError,
    UnsupportedTargetError,
)
from coherence_lattice.lattice import canonicalize, join, majorized, meet, uniform
from coherence_lattice.sampling import (
    random_comparable_pair,
    random_probabilistic_instance,
    random_reachable,
    random_vector,
)
from coherence_lattice.transform import (
    DiagonalOperator,
    PureState,
    coherence_fidelity,
    coherence_vector,
    deterministic_feasible,
    failure_operator,
    fidelity,
    intermediate_state,
    ladder,
    max_probability,
    monotones,
    residual_state,
    success_operator,
)

from oracles import suffix_ratio_min
from strategies import exact_vectors


def v(*xs):
    return canonicalize([F(x) if isinstance(x, str) else x for x in xs], "exact")


class TestCoherenceVector:
    def test_worked_state(self):
        s = PureState((math.sqrt(0.5), math.sqrt(0.4), math.sqrt(0.1)))
        assert coherence_vector(s).components == pytest.approx((0.5, 0.4, 0.1), abs=1e-15)

    def test_incoherent(self):
        assert coherence_vector(PureState((1, 0))).components == (1, 0)

    def test_phases_drop_out(self):
        s = PureState(((1 + 1j) / 2, cmath.exp(0.7j) / math.sqrt(2)))
        assert coherence_vector(s).components == pytest.approx((0.5, 0.5))

    def test_sorts(self):
        s = PureState((F(0), F(3, 5), F(4, 5)))
        assert coherence_vector(s).components == (F(16, 25), F(9, 25), 0)

    def test_not_normalized(self):
        with pytest.raises(NotNormalizedError):
            coherence_vector(PureState((1.0, 1.0)))
        with pytest.raises(NotNormalizedError):
            coherence_vector(PureState((F(1), F(1))))


class TestMonotones:
    def test_values(self, psi, phi):
        assert monotones(psi).values == (1, F(1, 2), F(1, 10))
        assert monotones(phi).values == (1, F(3, 10), F(3, 20))
        assert monotones(v(1, 0, 0)).values == (1, 0, 0)

    def test_indexing(self, psi):
        c = monotones(psi)
        assert c[1] == 1 and c[3] == F(1, 10) and c[4] == 0
        with pytest.raises(IndexError):
            c[0]

    @given(exact_vectors())
    def test_structure(self, p):
        c = monotones(p).values
        assert c[0] == 1
        for l in range(len(c) - 1):
            assert c[l] == c[l + 1] + p[l]
            assert c[l + 1] >= 0


class TestFeasibility:
    def test_cases(self, psi, phi):
        assert deterministic_feasible(uniform(3), v(1, 0, 0))
        assert not deterministic_feasible(psi, phi)
        assert deterministic_feasible(psi, psi)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            deterministic_feasible(v(1, 0), v(1, 0, 0))


class TestLadder:
    def test_worked_pair(self, psi, phi):
        lad = ladder(psi, phi)
        assert lad.steps == ((F(2, 3), 3), (F(18, 17), 1))
        assert list(lad.segments()) == [(F(2, 3), 3, 3), (F(18, 17), 1, 2)]
        assert lad.multipliers() == (F(18, 17), F(18, 17), F(2, 3))

    def test_identical_states(self, psi):
        lad = ladder(psi, psi)
        assert lad.steps == ((1, 1),)
        assert lad.deterministic

    def test_deterministic_shortcut(self):
        # monotone ratios (1, 4): minimum 1 at l = 1, the excluded case
        lad = ladder(v("0.6", "0.4"), v("0.9", "0.1"))
        assert lad.steps == ((1, 1),)

    def test_unsupported(self):
        with pytest.raises(UnsupportedTargetError):
            ladder(v(1, 0, 0), v("0.7", "0.15", "0.15"))

    def test_zero_tail_in_target(self):
        lad = ladder(v("0.8", "0.1", "0.1"), v("0.5", "0.5", "0"))
        # C_3 of the target vanishes, so l = 3 never enters the minimisation
        assert lad.steps[0] == (F(2, 5), 2)
        assert lad.indices[-1] == 1

    @pytest.mark.parametrize("d", range(2, 9))
    def test_invariants_random(self, d):
        rng = np.random.default_rng(100 + d)
        for _ in range(300):
            psi, phi = random_probabilistic_instance(rng, d)
            lad = ladder(psi, phi)
            ls, qs = lad.indices, lad.ratios
            assert ls[-1] == 1 and ls[0] <= d
            assert all(a > b for a, b in zip(ls, ls[1:]))
            assert 0 < qs[0] < 1
            assert all(a < b for a, b in zip(qs, qs[1:]))

    @given(st.data())
    def test_first_ratio_is_smallest_minimiser(self, data):
        d = data.draw(st.integers(2, 6))
        psi = data.draw(exact_vectors(d=d, allow_zero=False))
        phi = data.draw(exact_vectors(d=d))
        lad = ladder(psi, phi)
        if lad.deterministic:
            assert majorized(psi, phi)
            return
        cp, cf = monotones(psi), monotones(phi)
        ratios = {l: cp[l] / cf[l] for l in range(1, d + 1) if cf[l] > 0}
        q1, l1 = lad.steps[0]
        assert q1 == min(ratios.values())
        assert l1 == min(l for l, r in ratios.items() if r == q1)


class TestMaxProbability:
    def test_worked(self, psi, phi):
        assert max_probability(psi, phi) == F(2, 3)

    def test_deterministic(self, phi):
        assert max_probability(uniform(3), phi) == 1

    def test_support_deficit(self):
        assert max_probability(v(1, 0, 0), v("0.7", "0.15", "0.15")) == 0

    @given(st.data())
    def test_matches_ladder_and_oracle(self, data):
        d = data.draw(st.integers(2, 6))
        psi = data.draw(exact_vectors(d=d, allow_zero=False))
        phi = data.draw(exact_vectors(d=d))
        q = max_probability(psi, phi)
        assert q == ladder(psi, phi).q1
        assert q == suffix_ratio_min(psi.components, phi.components)
        assert (q == 1) == deterministic_feasible(psi, phi)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_schur_monotonicity(self, d):
        rng = np.random.default_rng(200 + d)
        for _ in range(200):
            fixed = random_vector(rng, d)
            low, high = random_comparable_pair(rng, d)
            # more ordered target: never harder to reach
            assert max_probability(fixed, low) <= max_probability(fixed, high) + 1e-9
            # more ordered source: never easier to convert
            assert max_probability(low, fixed) >= max_probability(high, fixed) - 1e-9


class TestIntermediate:
    def test_worked(self, psi, phi):
        lad = ladder(psi, phi)
        f = intermediate_state(phi, lad)
        assert f.components == (F(63, 85), F(27, 170), F(1, 10))
        assert sum(f.components) == 1
        assert majorized(psi, f)

    def test_deterministic_is_target(self, phi):
        lad = ladder(uniform(3), phi)
        assert intermediate_state(phi, lad) == phi

    def test_thrifty_usage(self, psi, phi):
        lad = ladder(psi, phi)
        t = intermediate_state(meet([psi, phi]), lad)
        assert t.components == (F(9, 17), F(63, 170), F(1, 10))

    def test_mismatch(self, psi, phi):
        lad = ladder(psi, phi)
        with pytest.raises(LadderMismatchError):
            intermediate_state(v("0.5", "0.5"), lad)
        with pytest.raises(LadderMismatchError):
            intermediate_state(v(1, 0, 0), lad)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_majorization_chain(self, d):
        rng = np.random.default_rng(300 + d)
        for _ in range(300):
            psi, phi = random_probabilistic_instance(rng, d)
            f = intermediate_state(phi, ladder(psi, phi))
            assert all(a >= b - 1e-12 for a, b in zip(f, f.components[1:]))
            assert majorized(psi, f, 1e-9)
            assert majorized(phi, f, 1e-9)
            assert majorized(join([psi, phi]), f, 1e-9)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_hadamard_rescaling(self, d):
        # descending a and descending r with sum r_i a_i = 1 give a majorized by r*a
        rng = np.random.default_rng(400 + d)
        for _ in range(200):
            a = random_vector(rng, d)
            r = np.sort(rng.random(d) * 3)[::-1]
            r = r / float(np.dot(r, a.to_floats()))
            ra = canonicalize([x * y for x, y in zip(r, a)], "float")
            assert majorized(a, ra, 1e-9)

    def test_fidelity_optimal_sampled(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            d = int(rng.integers(2, 9))
            psi, phi = random_probabilistic_instance(rng, d)
            best = coherence_fidelity(intermediate_state(phi, ladder(psi, phi)), phi)
            for _ in range(200):
                assert coherence_fidelity(random_reachable(rng, psi), phi) <= best + 1e-9


class TestOperators:
    def test_worked_success_operator(self, psi, phi):
        M = success_operator(ladder(psi, phi))
        assert M.squared == (F(17, 27), F(17, 27), 1)
        assert M.diagonal == pytest.approx((math.sqrt(17 / 27), math.sqrt(17 / 27), 1.0))

    def test_worked_failure_operator(self, psi, phi):
        N = failure_operator(success_operator(ladder(psi, phi)))
        assert N.squared == (F(10, 27), F(10, 27), 0)

    def test_identity_and_zero(self):
        one = DiagonalOperator((F(1), F(1)))
        zero = DiagonalOperator((F(0), F(0)))
        assert failure_operator(one).squared == (0, 0)
        assert failure_operator(zero).squared == (1, 1)

    def test_entry_exceeds_one(self):
        with pytest.raises(EntryExceedsOneError):
            failure_operator(DiagonalOperator((F(5, 4), F(0))))

    def test_deterministic_ladder(self, psi):
        with pytest.raises(DeterministicLadderError):
            success_operator(ladder(psi, psi))

    def test_apply_reproduces_target(self, psi, phi):
        lad = ladder(psi, phi)
        f = intermediate_state(phi, lad)
        out = success_operator(lad).apply(PureState.from_coherence(f).amplitudes)
        expect = [math.sqrt(2 / 3) * a for a in PureState.from_coherence(phi).amplitudes]
        assert out == pytest.approx(expect, abs=1e-12)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_identities_random(self, d):
        rng = np.random.default_rng(500 + d)
        for _ in range(200):
            psi, phi = random_probabilistic_instance(rng, d)
            lad = ladder(psi, phi)
            M = success_operator(lad)
            N = failure_operator(M)
            assert all(x <= 1 for x in M.diagonal)
            assert [a + b for a, b in zip(M.squared, N.squared)] == pytest.approx([1.0] * d, abs=1e-12)
            f = PureState.from_coherence(intermediate_state(phi, lad)).amplitudes
            out = M.apply(f)
            target = PureState.from_coherence(phi).amplitudes
            assert out == pytest.approx([math.sqrt(lad.q1) * a for a in target], abs=1e-12)
            assert math.fsum(abs(x) ** 2 for x in out) == pytest.approx(lad.q1, abs=1e-12)


class TestResidual:
    def test_worked(self, psi, phi):
        lad = ladder(psi, phi)
        mu = residual_state(intermediate_state(phi, lad), lad)
        nu = residual_state(intermediate_state(meet([psi, phi]), lad), lad)
        assert mu.components == (F(14, 17), F(3, 17), 0)
        assert nu.components == (F(10, 17), F(7, 17), 0)
        # unnormalized residuals (0.7, 0.15) and (0.5, 0.35), over 0.85
        assert mu.components[:2] == (F(7, 10) / F(85, 100), F(15, 100) / F(85, 100))
        assert nu.components[:2] == (F(5, 10) / F(85, 100), F(35, 100) / F(85, 100))

    def test_deterministic_guard(self, psi):
        lad = ladder(psi, psi)
        with pytest.raises(DeterministicNoResidualError):
            residual_state(psi, lad)


class TestFidelity:
    def test_cases(self):
        a = PureState((1.0, 0.0))
        assert fidelity(a, a) == pytest.approx(1.0)
        assert fidelity(a, PureState((0.0, 1.0))) == 0
        assert fidelity(PureState((math.sqrt(0.5), math.sqrt(0.5))), a) == pytest.approx(0.5)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            fidelity(PureState((1.0,)), PureState((1.0, 0.0)))
