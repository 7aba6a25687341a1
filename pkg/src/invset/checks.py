"""Named invariant suites behind the ``check`` subcommand.

Each suite returns a list of (name, passed, detail) rows; randomized checks
take an explicit seed so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import dirac, exactmath, highprec, multiqubit, padic, samplespace
from .exactmath import ExactAngle

DEFAULT_SEED = 12345

#: Amplitude angles admissible for rational-turn inputs: the exceptional
#: cosine set mapped into [0, pi].
NIVEN_THETAS = [ExactAngle(Fraction(t)) for t in ("0", "1/6", "1/4", "1/3", "1/2")]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _row(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def golden_table_text() -> str:
    return resources.files("invset.data").joinpath("canonical_table_n4.txt").read_text()


def golden_d2_text() -> str:
    return resources.files("invset.data").joinpath("padic_d2.txt").read_text()


def _random_fraction(rng: random.Random, bound: int = 60) -> Fraction:
    num = rng.randrange(-bound, bound + 1)
    den = rng.randrange(1, bound + 1)
    return Fraction(num, den)


def suite_algebra(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    rows = []
    ok_golden = "\n".join(samplespace.rotation_table(4)) + "\n" == golden_table_text()
    rows.append(_row("golden-table-n4", ok_golden))
    for n_bits in range(3, 13):
        base = samplespace.canonical_string(n_bits)
        half = 1 << (n_bits - 1)
        raw = samplespace.BitString(n_bits, rng.getrandbits(1 << n_bits), "a", None)
        ok = (
            samplespace.pair_shift(base, half) == base
            and samplespace.quarter_turn(raw, 4) == raw
            and samplespace.quarter_turn(raw, 2).bits == raw.bits ^ ((1 << (1 << n_bits)) - 1)
            and samplespace.quarter_turn(base, 1) == samplespace.pair_shift(base, 1 << (n_bits - 3))
            and samplespace.fraction(base) == Fraction(1, 2)
        )
        rows.append(_row(f"operator-algebra-N{n_bits}", ok))
    # phase composition: shifting a phase string adds to the shadow phase
    n_bits = 8
    phi = ExactAngle(Fraction(3, 1 << (n_bits - 1)))
    shifted = samplespace.pair_shift(samplespace.phase_string(n_bits, phi), 5)
    shadow = samplespace.hilbert_shadow(shifted)
    rows.append(_row("shadow-phase-additivity", shadow.phase_turns == Fraction(8, 1 << (n_bits - 1))))
    return rows


def suite_padic(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    rows = [
        _row("d2-examples", padic.padic_dist(7, 3, 2) == Fraction(1, 4) and padic.padic_dist(15, 7, 2) == Fraction(1, 8)),
    ]
    for p in (2, 3, 5):
        ultra = all(
            padic.padic_dist(a, c, p) <= max(padic.padic_dist(a, b, p), padic.padic_dist(b, c, p))
            for a, b, c in (
                tuple(_random_fraction(rng) for _ in range(3)) for _ in range(2000)
            )
        )
        rows.append(_row(f"ultrametric-p{p}", ultra))
        mult = all(
            padic.padic_norm(x * y, p) == padic.padic_norm(x, p) * padic.padic_norm(y, p)
            for x, y in ((_random_fraction(rng), _random_fraction(rng)) for _ in range(2000))
        )
        rows.append(_row(f"norm-multiplicativity-p{p}", mult))
        ok_prefix = True
        for ell in range(0, 9):
            digits_a = [rng.randrange(p) for _ in range(ell + 3)]
            digits_b = list(digits_a)
            digits_b[ell] = (digits_a[ell] + rng.randrange(1, p)) % p
            za, zb = padic.PadicInt(p, tuple(digits_a)), padic.PadicInt(p, tuple(digits_b))
            ok_prefix &= padic.padic_dist(za.value(), zb.value(), p) == Fraction(1, p**ell)
            ok_prefix &= padic.interval_for(za, ell) == padic.interval_for(zb, ell)
            ok_prefix &= padic.interval_for(za, ell + 1) != padic.interval_for(zb, ell + 1)
        rows.append(_row(f"prefix-law-p{p}", ok_prefix))
    iv = padic.cantor_iterates(2, 1)
    rows.append(
        _row(
            "cantor-ternary-level1",
            [(i.left, i.right) for i in iv] == [(Fraction(0), Fraction(1, 3)), (Fraction(2, 3), Fraction(1))],
        )
    )
    probe = padic.euclid_padic_probe(padic.PadicInt.from_int(1, 2, 4), Fraction(5, 4))
    rows.append(_row("euclid-padic-probe", probe.padic_gap == 4 and probe.euclid_gap == Fraction(1, 4)))
    return rows


def suite_multiqubit(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    rows = []
    zero = ExactAngle(Fraction(0))
    for n_bits in (4, 6):
        ok = True
        for t1 in NIVEN_THETAS:
            for t2 in NIVEN_THETAS:
                for t3 in NIVEN_THETAS:
                    params = multiqubit.TwoQubitParams(t1, t2, t3, zero, zero, zero)
                    ms = multiqubit.two_qubit_sample(params, n_bits)
                    freqs = multiqubit.joint_frequencies(ms)
                    probs = multiqubit.two_qubit_predict(params, n_bits).probs
                    ok &= [freqs[o] for o in range(4)] == list(probs)
        rows.append(_row(f"two-qubit-gamma-table-N{n_bits}", ok))
    n_bits = 8
    ok_bell = True
    for count in range(0, (1 << n_bits) + 1, 8):
        amp = Fraction(count, 1 << n_bits)
        ms = multiqubit.bell_sample_from_amplitude(amp, n_bits)
        ok_bell &= multiqubit.bell_agreement(ms) == amp
        ok_bell &= multiqubit.bell_correlation(ms) == 2 * amp - 1
    rows.append(_row("bell-agreement-correlation", ok_bell))
    ok_m3 = True
    for _ in range(50):
        thetas = [rng.choice(NIVEN_THETAS) for _ in range(7)]
        phis = [zero] * 7
        ms = multiqubit.multi_sample(6, thetas)
        freqs = multiqubit.joint_frequencies(ms)
        table = multiqubit.amplitude_table(thetas, phis, 6)
        ok_m3 &= [freqs[o] for o in range(8)] == [p for p, _ in table]
    rows.append(_row("three-qubit-vs-expander", ok_m3))
    ok_norm = True
    for _ in range(200):
        t1, t2, t3 = (rng.choice(NIVEN_THETAS) for _ in range(3))
        params = multiqubit.TwoQubitParams(t1, t2, t3, zero, zero, zero)
        ok_norm &= sum(multiqubit.two_qubit_predict(params, 10).probs) == 1
    rows.append(_row("gamma-normalization", ok_norm))
    return rows


def suite_dirac(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rows = []
    ok_skeleton = all(
        dirac.evolution_matrix(axis, 1, 6).skeleton(1) == dirac.gamma_pattern(axis) for axis in range(4)
    )
    rows.append(_row("skeleton-matches-gamma", ok_skeleton))
    for n_bits in range(3, 13):
        psi = dirac.spinor(n_bits)
        half = 1 << (n_bits - 1)
        ok = dirac.rest_step(psi, half).components == psi.components
        ok &= dirac.rest_step(psi, half >> 1).components != psi.components
        rows.append(_row(f"rest-period-N{n_bits}", ok))
    disp = dirac.dispersion_check(3, (4, 0, 0))
    rows.append(_row("dispersion-3-4-5", disp.omega == 5))
    disp2 = dirac.dispersion_check(1, (1, 0, 0))
    rows.append(_row("dispersion-irrational-flag", disp2.omega is None and disp2.omega_sq == 2))
    psi = dirac.spinor(6, mass=1)
    ok_rest = dirac.full_evolve(psi, 3, 7, 7, 7).components == dirac.rest_step(psi, 3).components
    rows.append(_row("zero-wavevector-reduces-to-rest", ok_rest))
    return rows


def suite_numbertheory(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rows = []
    ok_pyth = all(exactmath.pythagorean_solutions(k) == [] for k in range(1, 13))
    rows.append(_row("pythagorean-empty-k1-12", ok_pyth))
    ok_grid = True
    import mpmath

    tiny, gap = mpmath.mpf(2) ** -150, mpmath.mpf(2) ** -100
    for n in range(1, 41):
        for m in range(0, 2 * n):
            angle = ExactAngle(Fraction(m, 2 * n))
            val = exactmath.cos_exact(angle)
            approx = highprec.cos_turns(angle.turns)
            if val is not None:
                ok_grid &= abs(approx - highprec.to_mpf(val)) < tiny
            else:
                near = highprec.nearest_describable(approx, 64)
                ok_grid &= abs(approx - highprec.to_mpf(near)) > gap
    rows.append(_row("rational-cosine-grid-n40", ok_grid))
    rows.append(
        _row(
            "describability-examples",
            exactmath.is_describable(Fraction(3, 8), 3)
            and not exactmath.is_describable(Fraction(1, 3), 30)
            and not exactmath.is_describable(Fraction(3, 8), 2),
        )
    )
    v = exactmath.simultaneous_describability(Fraction(3, 4), Fraction(1, 2), 2)
    rows.append(_row("addition-obstruction", v.excluded and v.reason == exactmath.REASON_IRRATIONAL_SINE))
    return rows


SUITES = {
    "algebra": suite_algebra,
    "padic": suite_padic,
    "multiqubit": suite_multiqubit,
    "dirac": suite_dirac,
    "numbertheory": suite_numbertheory,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    if name == "all":
        rows: list[CheckResult] = []
        for suite in SUITES.values():
            rows.extend(suite(seed))
        return rows
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed)
