import random
from fractions import Fraction

import mpmath
import pytest

from invset.exactmath import ExactAngle, NotOnInvariantSet
from invset.multiqubit import (
    MultiSample,
    TwoQubitParams,
    amplitude_of,
    amplitude_table,
    amplitude_table_mp,
    bell_agreement,
    bell_correlation,
    bell_sample,
    bell_sample_from_amplitude,
    compose_many,
    compose_pair,
    joint_counts,
    joint_frequencies,
    marginal,
    multi_sample,
    row_descriptor_status,
    two_qubit_predict,
    two_qubit_sample,
)
from invset.samplespace import BitString, pair_shift

ZERO = ExactAngle(Fraction(0))
# amplitude angles admissible for rational turns: cos in {1, 1/2, 0, -1/2, -1}
THETAS = {
    Fraction(1): ExactAngle(Fraction(0)),
    Fraction(3, 4): ExactAngle(Fraction(1, 6)),
    Fraction(1, 2): ExactAngle(Fraction(1, 4)),
    Fraction(1, 4): ExactAngle(Fraction(1, 3)),
    Fraction(0): ExactAngle(Fraction(1, 2)),
}


def params_for(a1, a2, a3, phis=(ZERO, ZERO, ZERO)):
    return TwoQubitParams(THETAS[Fraction(a1)], THETAS[Fraction(a2)], THETAS[Fraction(a3)], *phis)


class TestAmplitudeGate:
    def test_quarter_amplitudes(self):
        for amp, theta in THETAS.items():
            assert amplitude_of(theta, 6) == amp

    def test_irrational_cos_rejected(self):
        with pytest.raises(NotOnInvariantSet):
            amplitude_of(ExactAngle(Fraction(1, 5)), 6)


class TestComposePair:
    def test_factorization_when_sources_equal(self):
        params = params_for("3/4", "1/2", "1/2")
        ms = two_qubit_sample(params, 6)
        freqs = joint_frequencies(ms)
        pa, pb = marginal(ms, 0), marginal(ms, 1)
        assert freqs[0b00] == pa * pb
        assert freqs[0b01] == pa * (1 - pb)
        assert freqs[0b10] == (1 - pa) * pb

    def test_composed_row_loses_construction_descriptor(self):
        # the general composed row cannot be written as one amplitude-phase
        # construction; the diagnostic reports the reconstruction failure
        ms = bell_sample(THETAS[Fraction(3, 4)], 6)
        assert row_descriptor_status(ms) == [True, False]

    def test_first_cell_is_product_of_cos_squares(self):
        for a1 in ("1/4", "1/2", "3/4"):
            for a2 in ("1/4", "1/2", "3/4"):
                ms = two_qubit_sample(params_for(a1, a2, "1/2"), 6)
                assert joint_frequencies(ms)[0b00] == Fraction(a1) * Fraction(a2)

    def test_anticorrelated_sources_agreement(self):
        # negated second source at balanced head: agreement = cos^2(theta2/2)
        ms = bell_sample(THETAS[Fraction(3, 4)], 6)
        assert bell_agreement(ms) == Fraction(3, 4)

    def test_length_mismatch(self):
        a6, b6 = two_qubit_sample(params_for("1/2", "1/2", "1/2"), 6).rows
        a5 = two_qubit_sample(params_for("1/2", "1/2", "1/2"), 5).rows[0]
        with pytest.raises(ValueError):
            compose_pair(a5, b6, b6)


class TestJointCounts:
    def test_counts_sum_to_length(self):
        ms = two_qubit_sample(params_for("3/4", "1/4", "1/2"), 7)
        counts = joint_counts(ms)
        assert sum(counts.values()) == 128
        assert sum(joint_frequencies(ms).values()) == 1

    def test_all_first_labels_single_cell(self):
        ms = two_qubit_sample(params_for("1", "1", "1"), 5)
        assert joint_counts(ms) == {0b00: 32, 0b01: 0, 0b10: 0, 0b11: 0}

    def test_bell_theta2_zero_perfect_agreement(self):
        ms = bell_sample(THETAS[Fraction(1)], 5)
        counts = joint_counts(ms)
        assert counts[0b01] == 0 and counts[0b10] == 0

    def test_gamma_table_exhaustive_small_n(self):
        for n_bits in (4, 5, 6):
            for a1 in THETAS.values():
                for a2 in THETAS.values():
                    for a3 in THETAS.values():
                        params = TwoQubitParams(a1, a2, a3, ZERO, ZERO, ZERO)
                        freqs = joint_frequencies(two_qubit_sample(params, n_bits))
                        probs = two_qubit_predict(params, n_bits).probs
                        assert [freqs[o] for o in range(4)] == list(probs)

    def test_joint_permutation_covariance(self):
        ms = two_qubit_sample(params_for("3/4", "1/4", "1/2"), 6)
        before = joint_counts(ms)
        shifted = MultiSample(6, tuple(pair_shift(r, 9) for r in ms.rows))
        assert joint_counts(shifted) == before


class TestPredict:
    def test_theta1_zero_reduces_to_one_qubit(self):
        p = two_qubit_predict(params_for("1", "3/4", "1/4"), 6)
        assert p.probs == (Fraction(3, 4), Fraction(1, 4), 0, 0)

    def test_all_balanced(self):
        p = two_qubit_predict(params_for("1/2", "1/2", "1/2"), 6)
        assert p.probs == (Fraction(1, 4),) * 4

    def test_phase_map(self):
        phis = (ExactAngle(Fraction(1, 8)), ExactAngle(Fraction(1, 16)), ExactAngle(Fraction(3, 8)))
        p = two_qubit_predict(params_for("1/2", "1/2", "1/2", phis), 6)
        assert p.phases[0].turns == 0
        assert p.phases[1] == phis[1]  # chi_1 = phi_2
        assert p.phases[2] == phis[0]  # chi_2 = phi_1
        assert p.phases[3] == phis[0] + phis[2]  # chi_3 = phi_1 + phi_3

    def test_phase_gate(self):
        phis = (ExactAngle(Fraction(1, 3)), ZERO, ZERO)
        with pytest.raises(NotOnInvariantSet):
            two_qubit_predict(params_for("1/2", "1/2", "1/2", phis), 6)

    def test_normalization_random(self):
        rng = random.Random(42)
        keys = list(THETAS.values())
        for _ in range(1000):
            params = TwoQubitParams(*(rng.choice(keys) for _ in range(3)), ZERO, ZERO, ZERO)
            assert sum(two_qubit_predict(params, 10).probs) == 1

    def test_marginal_consistency(self):
        # row-b marginal equals the theta1-weighted mixture of the two sources
        for a1 in ("1/4", "1/2", "3/4"):
            for a2 in ("1/4", "3/4"):
                for a3 in ("1/2", "1/4"):
                    ms = two_qubit_sample(params_for(a1, a2, a3), 6)
                    expected = Fraction(a1) * Fraction(a2) + (1 - Fraction(a1)) * Fraction(a3)
                    assert marginal(ms, 1) == expected


class TestBell:
    def test_extreme_orientations(self):
        assert bell_correlation(bell_sample(THETAS[Fraction(1)], 6)) == 1  # theta2 = 0
        assert bell_correlation(bell_sample(THETAS[Fraction(0)], 6)) == -1  # theta2 = pi

    def test_sixty_degrees(self):
        ms = bell_sample(ExactAngle(Fraction(1, 6)), 6)  # cos theta2 = 1/2
        assert bell_agreement(ms) == Fraction(3, 4)
        assert bell_correlation(ms) == Fraction(1, 2)

    def test_correlation_equals_cosine_for_every_amplitude(self):
        n_bits = 8
        for count in range(0, 257, 5):
            amp = Fraction(count, 256)
            ms = bell_sample_from_amplitude(amp, n_bits)
            assert bell_agreement(ms) == amp
            assert bell_correlation(ms) == 2 * amp - 1

    def test_inadmissible_amplitude(self):
        with pytest.raises(NotOnInvariantSet):
            bell_sample_from_amplitude(Fraction(1, 3), 8)


class TestComposeMany:
    def test_m2_matches_compose_pair(self):
        params = params_for("3/4", "1/4", "1/2")
        pair = two_qubit_sample(params, 6)
        head, _ = pair.rows
        # rebuild the sources the harness used
        from invset.multiqubit import _fill

        amp1 = amplitude_of(params.theta1, 6)
        _, firsts, seconds = _fill([(0, 64)], amp1)
        sb1_bits, _, _ = _fill(firsts + seconds, amplitude_of(params.theta2, 6))
        sb2_bits, _, _ = _fill(firsts + seconds, amplitude_of(params.theta3, 6))
        sb1 = BitString(6, sb1_bits, "b", None)
        sb2 = BitString(6, sb2_bits, "b", None)
        many = compose_many(head, MultiSample(6, (sb1,)), MultiSample(6, (sb2,)))
        assert [r.bits for r in many.rows] == [r.bits for r in pair.rows]

    def test_equal_branches_make_head_independent(self):
        sub = [THETAS[Fraction(1, 4)], THETAS[Fraction(1, 2)], THETAS[Fraction(3, 4)]]
        thetas = [THETAS[Fraction(3, 4)]] + sub + sub
        ms = multi_sample(6, thetas)
        freqs = joint_frequencies(ms)
        pa = marginal(ms, 0)
        for o in range(8):
            sub = o & 0b11
            sub_prob = freqs[sub] + freqs[0b100 | sub]
            assert freqs[o] == (pa if o < 4 else 1 - pa) * sub_prob

    def test_m3_matches_expander(self):
        rng = random.Random(77)
        keys = list(THETAS.values())
        for _ in range(100):
            thetas = [rng.choice(keys) for _ in range(7)]
            ms = multi_sample(6, thetas)
            freqs = joint_frequencies(ms)
            table = amplitude_table(thetas, [ZERO] * 7, 6)
            assert [freqs[o] for o in range(8)] == [p for p, _ in table]

    def test_m4_matches_expander(self):
        keys = list(THETAS.values())
        rng = random.Random(15)
        for _ in range(10):
            thetas = [rng.choice(keys) for _ in range(15)]
            ms = multi_sample(10, thetas)
            assert [r.tag for r in ms.rows] == ["a", "b", "c", "d"]
            freqs = joint_frequencies(ms)
            table = amplitude_table(thetas, [ZERO] * 15, 10)
            assert [freqs[o] for o in range(16)] == [p for p, _ in table]

    def test_nonrealizable_raises(self):
        # N=3: head count 6, conditional 6 * 3/4 = 4.5 labels
        with pytest.raises(NotOnInvariantSet):
            multi_sample(3, [THETAS[Fraction(3, 4)], THETAS[Fraction(3, 4)], THETAS[Fraction(1, 2)]])

    def test_arity_mismatch(self):
        ms1 = MultiSample(6, two_qubit_sample(params_for("1/2", "1/2", "1/2"), 6).rows[:1])
        ms2 = two_qubit_sample(params_for("1/2", "1/2", "1/2"), 6)
        with pytest.raises(ValueError):
            compose_many(ms2.rows[0], ms1, ms2)


def test_counts_csv_layout():
    from invset.multiqubit import counts_csv

    ms = two_qubit_sample(params_for("1/2", "1/2", "1/2"), 4)
    lines = counts_csv(ms).splitlines()
    assert lines[0] == "outcome,count,freq_numerator,freq_denominator"
    assert lines[1] == "0,4,1,4"
    assert len(lines) == 5


class TestAmplitudeExpander:
    def test_probabilities_sum_to_one(self):
        thetas = [THETAS[Fraction(3, 4)], THETAS[Fraction(1, 4)], THETAS[Fraction(1, 2)]]
        table = amplitude_table(thetas, [ZERO] * 3, 6)
        assert sum(p for p, _ in table) == 1

    def test_phase_accumulation(self):
        phis = [ExactAngle(Fraction(1, 8)), ExactAngle(Fraction(1, 16)), ExactAngle(Fraction(5, 16))]
        thetas = [THETAS[Fraction(1, 2)]] * 3
        table = amplitude_table(thetas, phis, 6)
        assert table[0b00][1].turns == 0
        assert table[0b01][1] == phis[1]
        assert table[0b10][1] == phis[0]
        assert table[0b11][1] == phis[0] + phis[2]

    def test_numeric_expander_matches_exact(self):
        thetas = [THETAS[Fraction(3, 4)], THETAS[Fraction(1, 4)], THETAS[Fraction(1, 2)]]
        phis = [ExactAngle(Fraction(1, 8)), ZERO, ExactAngle(Fraction(3, 8))]
        exact = amplitude_table(thetas, phis, 6)
        numeric = amplitude_table_mp([t.turns for t in thetas], [p.turns for p in phis])
        with mpmath.workprec(240):
            for (prob, phase), amp in zip(exact, numeric):
                assert abs(abs(amp) ** 2 - mpmath.mpf(prob.numerator) / prob.denominator) < mpmath.mpf(2) ** -200
                if prob != 0:
                    angle = mpmath.arg(amp) / (2 * mpmath.pi) % 1
                    target = mpmath.mpf(phase.turns.numerator) / phase.turns.denominator
                    assert min(abs(angle - target), abs(angle - target + 1), abs(angle - target - 1)) < mpmath.mpf(2) ** -200
