"""Acceptance criteria, one test per criterion, each printing a PASS line
with its runtime.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import json
import random
import time
from fractions import Fraction

import mpmath
import pytest

from invset import checks
from invset.cli import main as cli_main
from invset.dirac import (
    dispersion_check,
    evolution_matrix,
    full_evolve,
    gamma_pattern,
    rest_step,
    spinor,
)
from invset.exactmath import (
    ExactAngle,
    cos_exact,
    pythagorean_solutions,
    simultaneous_describability,
)
from invset.experiments import (
    ChshConfig,
    chsh_run,
    mz_gates,
    mz_run,
    MzConfig,
    pbr_simultaneity,
    pbr_x,
    pbr_z,
    simultaneity_obstruction,
)
from invset.highprec import cos_turns, nearest_describable, to_mpf
from invset.multiqubit import (
    TwoQubitParams,
    amplitude_table,
    amplitude_table_mp,
    bell_agreement,
    bell_correlation,
    bell_sample_from_amplitude,
    joint_frequencies,
    multi_sample,
    two_qubit_predict,
    two_qubit_sample,
)
from invset.padic import PadicInt, interval_for, padic_dist, padic_norm
from invset.samplespace import (
    canonical_string,
    fraction,
    hilbert_shadow,
    pair_shift,
    phase_string,
    quarter_turn,
    rotation_table,
    sample,
)

ZERO = ExactAngle(Fraction(0))
# all rational-turn angles with rational cosine, folded over [0, pi]
ADMISSIBLE_THETA_TURNS = [
    Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
    Fraction(2, 3), Fraction(3, 4), Fraction(5, 6),
]


class _timed:
    def __init__(self, label, budget_s=None):
        self.label, self.budget = label, budget_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            budget = f", budget {self.budget:.0f}s" if self.budget else ""
            print(f"ACCEPTANCE {self.label}: PASS ({elapsed:.2f}s{budget})")
            if self.budget is not None:
                assert elapsed < self.budget, f"{self.label} exceeded runtime budget"
        else:
            print(f"ACCEPTANCE {self.label}: FAIL ({elapsed:.2f}s)")
        return False


def test_01_golden_table():
    with _timed("01 golden-table", 1.0):
        expected = checks.golden_table_text()
        produced = "\n".join(rotation_table(4)) + "\n"
        assert produced == expected


def test_02_operator_algebra():
    with _timed("02 operator-algebra", 10.0):
        rng = random.Random(2)
        for n_bits in range(3, 17):
            base = canonical_string(n_bits)
            length = 1 << n_bits
            half = length >> 1
            assert pair_shift(base, half) == base
            from invset.samplespace import BitString

            raw = BitString(n_bits, rng.getrandbits(length), "a", None)
            assert quarter_turn(raw, 4) == raw
            assert quarter_turn(raw, 2).bits == raw.bits ^ ((1 << length) - 1)
            assert quarter_turn(base, 1) == pair_shift(base, 1 << (n_bits - 3))
            # the shift group is cyclic of order exactly 2^(N-1)
            assert pair_shift(base, half >> 1) != base


def test_03_amplitude_law_exhaustive():
    with _timed("03 amplitude-law", 60.0):
        for n_bits in range(3, 13):
            half = 1 << (n_bits - 1)
            for theta_turns in ADMISSIBLE_THETA_TURNS:
                theta = ExactAngle(theta_turns)
                folded = theta_turns if theta_turns <= Fraction(1, 2) else 1 - theta_turns
                expected = (1 + cos_exact(ExactAngle(folded))) / 2
                for k in range(half):
                    s = sample(n_bits, theta, ExactAngle(Fraction(k, half)))
                    assert fraction(s) == expected


def test_04_multiqubit_frequencies():
    with _timed("04 multiqubit-frequencies", 120.0):
        thetas = [ExactAngle(t) for t in ADMISSIBLE_THETA_TURNS[:5]]
        # 2-qubit: exhaustive over the admissible amplitude grid for N up to 10
        for n_bits in range(4, 11):
            for t1 in thetas:
                for t2 in thetas:
                    for t3 in thetas:
                        params = TwoQubitParams(t1, t2, t3, ZERO, ZERO, ZERO)
                        freqs = joint_frequencies(two_qubit_sample(params, n_bits))
                        probs = two_qubit_predict(params, n_bits).probs
                        assert [freqs[o] for o in range(4)] == list(probs)
        # Bell: agreement and correlation exact for every describable amplitude
        n_bits = 10
        for count in range(0, (1 << n_bits) + 1):
            amp = Fraction(count, 1 << n_bits)
            ms = bell_sample_from_amplitude(amp, n_bits)
            assert bell_agreement(ms) == amp
            assert bell_correlation(ms) == 2 * amp - 1
        # 3 qubits: exhaustive against the inductive amplitude expander at the
        # smallest fully realizable N, spot-checked at N=10
        for combo in range(5**7):
            digits, c = [], combo
            for _ in range(7):
                digits.append(c % 5)
                c //= 5
            tree = [thetas[d] for d in digits]
            freqs = joint_frequencies(multi_sample(6, tree))
            table = amplitude_table(tree, [ZERO] * 7, 6)
            assert [freqs[o] for o in range(8)] == [p for p, _ in table]
        rng = random.Random(4)
        for _ in range(100):
            tree = [rng.choice(thetas) for _ in range(7)]
            freqs = joint_frequencies(multi_sample(10, tree))
            table = amplitude_table(tree, [ZERO] * 7, 10)
            assert [freqs[o] for o in range(8)] == [p for p, _ in table]


def test_05_chsh():
    with _timed("05 chsh", 60.0):
        report = chsh_run(
            ChshConfig(20, ExactAngle(Fraction(0)), ExactAngle(Fraction(1, 4)),
                       ExactAngle(Fraction(1, 8)), ExactAngle(Fraction(3, 8)))
        )
        with mpmath.workprec(240):
            s = to_mpf(report.s_value)
            assert abs(s - 2 * mpmath.sqrt(2)) < mpmath.mpf(2) ** -10
        for actual, row in report.admissibility.items():
            for cf, cell in row.items():
                if cf != actual:
                    assert cell["verdict"] == "excluded"
                    assert cell["reason"] in ("irrational_sine", "pythagorean_obstruction")
        for k in range(1, 13):
            assert pythagorean_solutions(k) == []


def test_06_padic_properties():
    with _timed("06 padic", 60.0):
        assert padic_dist(7, 3, 2) == Fraction(1, 4)
        assert padic_dist(15, 7, 2) == Fraction(1, 8)
        rng = random.Random(6)

        def rand_fraction():
            return Fraction(rng.randrange(-90, 91), rng.randrange(1, 91))

        for _ in range(10_000):
            p = rng.choice((2, 3, 5))
            a, b, c = rand_fraction(), rand_fraction(), rand_fraction()
            assert padic_dist(a, c, p) <= max(padic_dist(a, b, p), padic_dist(b, c, p))
        for _ in range(10_000):
            p = rng.choice((2, 3, 5))
            x, y = rand_fraction(), rand_fraction()
            assert padic_norm(x * y, p) == padic_norm(x, p) * padic_norm(y, p)
        for p in (2, 3, 5):
            for ell in range(0, 13):
                digits_a = [rng.randrange(p) for _ in range(ell + 2)]
                digits_b = list(digits_a)
                digits_b[ell] = (digits_a[ell] + rng.randrange(1, p)) % p
                za, zb = PadicInt(p, tuple(digits_a)), PadicInt(p, tuple(digits_b))
                assert padic_dist(za.value(), zb.value(), p) == Fraction(1, p**ell)
                assert interval_for(za, ell) == interval_for(zb, ell)
                assert interval_for(za, ell + 1) != interval_for(zb, ell + 1)


def test_07_rational_cosine_grid():
    with _timed("07 rational-cosine-grid", 120.0):
        gap = mpmath.mpf(2) ** -100
        tiny = mpmath.mpf(2) ** -150
        exceptional = {Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)}
        with mpmath.workprec(240):
            for n in range(1, 101):
                for m in range(0, 2 * n):
                    angle = ExactAngle(Fraction(m, 2 * n))  # the angle m*pi/n
                    value = cos_exact(angle)
                    approx = cos_turns(angle.turns)
                    doubled = 2 * approx
                    nearest_int = mpmath.nint(doubled)
                    if value is not None:
                        assert value in exceptional
                        assert abs(approx - to_mpf(value)) < tiny
                        assert abs(doubled - nearest_int) < tiny  # 2cos is an integer
                    else:
                        # exact-square/algebraic-integer oracle: 2cos is not an
                        # integer, and no 64-bit-describable rational is close
                        assert abs(doubled - nearest_int) > gap
                        near = nearest_describable(approx, 64)
                        assert abs(approx - to_mpf(near)) > gap


def test_08_mach_zehnder():
    with _timed("08 mach-zehnder", 60.0):
        n_bits = 10
        half = 1 << (n_bits - 1)
        for k in range(half):
            report = mz_run(MzConfig("which_way", ExactAngle(Fraction(k, half)), n_bits))
            assert report.probabilities["D_b"] == Fraction(1, 2)
        for turns, expected in ((Fraction(0), Fraction(1)), (Fraction(1, 6), Fraction(3, 4)),
                                (Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 3), Fraction(1, 4)),
                                (Fraction(1, 2), Fraction(0))):
            report = mz_run(MzConfig("interference", ExactAngle(turns), n_bits))
            assert report.probabilities["D_c"] == expected
        both = {Fraction(k, half) for k in range(half) if mz_gates(ExactAngle(Fraction(k, half)), n_bits)[1]}
        assert both == {Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)}


def test_09_pbr():
    with _timed("09 pbr", 120.0):
        rng = random.Random(9)
        with mpmath.workprec(240):
            tol = mpmath.mpf(2) ** -100
            for _ in range(1000):
                at = Fraction(rng.randrange(0, 720), 720)
                bt = Fraction(rng.randrange(0, 720), 720)
                tt = Fraction(rng.randrange(0, 360), 720)
                x = pbr_x(ExactAngle(at), ExactAngle(bt), ExactAngle(tt))
                z = pbr_z(ExactAngle(at), ExactAngle(bt), ExactAngle(tt))
                amps = amplitude_table_mp([tt] * 3, [(at - bt) % 1, (at - bt) % 1, (-bt) % 1])
                a = amps[0b00] + amps[0b11]
                b = amps[0b01] + amps[0b10]
                xv = to_mpf(x) if isinstance(x, Fraction) else x
                zv = to_mpf(z) if isinstance(z, Fraction) else z
                assert abs(xv - abs(a) ** 2) < tol
                assert abs(zv - (abs(a - b) ** 2 - 2 * abs(b) ** 2)) < tol
        # bisection oracle for a null of Z
        alpha, beta = ExactAngle(Fraction(1, 2)), ExactAngle(Fraction(1, 6))
        with mpmath.workprec(320):

            def z_at(t):
                turns = Fraction(int(t * (1 << 200)), 1 << 200)
                return pbr_z(alpha, beta, ExactAngle(turns), prec=320)

            lo, hi = mpmath.mpf(1) / 1000, mpmath.mpf(1) / 4
            assert z_at(lo) > 0 > z_at(hi)
            for _ in range(260):
                mid = (lo + hi) / 2
                if z_at(mid) > 0:
                    lo = mid
                else:
                    hi = mid
            root = (lo + hi) / 2
            assert abs(z_at(root)) < mpmath.mpf(2) ** -60
            root_turns = Fraction(int(root * (1 << 200)), 1 << 200)
            assert pbr_x(alpha, beta, ExactAngle(root_turns), prec=320) > 0
        # simultaneity verdicts agree with the exactmath engine
        n_bits = 6
        for num_a in range(-(1 << n_bits) + 1, 1 << n_bits):
            ca = Fraction(num_a, 1 << n_bits)
            for cb in (Fraction(1, 2), Fraction(3, 4), Fraction(0), Fraction(1)):
                assert simultaneity_obstruction(ca, cb, n_bits) == simultaneous_describability(ca, cb, n_bits)
        assert pbr_simultaneity(ExactAngle(Fraction(1, 2)), ExactAngle(Fraction(1, 6)), 8).excluded
        assert not pbr_simultaneity(ExactAngle(Fraction(5, 32)), ExactAngle(Fraction(0)), 8).excluded


def test_10_dirac():
    with _timed("10 dirac", 60.0):
        for n_bits in range(3, 17):
            psi = spinor(n_bits)
            half = 1 << (n_bits - 1)
            assert rest_step(psi, half).components == psi.components
            assert rest_step(psi, half >> 1).components != psi.components
        # helicity opposition on shadows
        n_bits = 8
        comps = tuple(
            phase_string(n_bits, ExactAngle(Fraction(r, 1 << (n_bits - 1))), f"s{i+1}")
            for i, r in enumerate((3, 5, 7, 11))
        )
        psi = spinor(n_bits, comps)
        for n in (1, 5, 17):
            stepped = rest_step(psi, n)
            for idx, sign in ((0, 1), (1, 1), (2, -1), (3, -1)):
                before = hilbert_shadow(psi.components[idx]).phase_turns.as_fraction()
                after = hilbert_shadow(stepped.components[idx]).phase_turns.as_fraction()
                assert (after - before) % 1 == Fraction(sign * n, 1 << (n_bits - 1)) % 1
        for axis in range(4):
            assert evolution_matrix(axis, 1, 8).skeleton(1) == gamma_pattern(axis)
        assert dispersion_check(1, (0, 0, 0)).omega == 1
        assert dispersion_check(3, (4, 0, 0)).omega == 5
        # finite-N shadow action equals complex action under roots of unity
        psi = spinor(n_bits, comps, mass=3, wavevector=(4, 1, 2))
        steps = (5, 3, 2, 7)
        mat = evolution_matrix(0, steps[0], n_bits)
        for axis in (1, 2, 3):
            mat = mat @ evolution_matrix(axis, steps[axis], n_bits)
        evolved = full_evolve(psi, *steps)
        in_turns = [hilbert_shadow(c).phase_turns.as_fraction() for c in psi.components]
        for row in range(4):
            col = next(j for j in range(4) if mat.entries[row][j] is not None)
            predicted = (mat.entry_phase_turns(row, col) + in_turns[col]) % 1
            assert hilbert_shadow(evolved.components[row]).phase_turns.as_fraction() == predicted


def test_11_cli_reproducibility(tmp_path):
    with _timed("11 cli-reproducibility", 60.0):
        config = {"n_bits": 12, "angles": {"A1": "0", "A2": "1/4", "B1": "1/8", "B2": "3/8"}}
        cfg = tmp_path / "chsh.json"
        cfg.write_text(json.dumps(config))
        hashes = []
        for run in ("r1", "r2"):
            out = tmp_path / run
            assert cli_main(["chsh", "--config", str(cfg), "--out", str(out)]) == 0
            hashes.append(json.loads((out / "manifest.json").read_text())["output_sha256"])
        assert hashes[0] == hashes[1]
        mz_cfg = tmp_path / "mz.json"
        mz_cfg.write_text(json.dumps({"n_bits": 10, "mode": "which_way", "phi_turns": "5/256"}))
        mz_hashes = []
        for run in ("m1", "m2"):
            out = tmp_path / run
            assert cli_main(["mz", "--config", str(mz_cfg), "--out", str(out)]) == 0
            mz_hashes.append(json.loads((out / "manifest.json").read_text())["output_sha256"])
        assert mz_hashes[0] == mz_hashes[1]
