"""End-to-end experiment harnesses: CHSH correlations with counterfactual
admissibility, which-way versus interference runs, and the two-observer
preparation obstruction.

Every reported statistic is an exact rational computed by counting labels on
constructed strings; high-precision numerics appear only to pick the nearest
describable substitute for a requested setting and on the numeric fallback
path of the closed-form circuit probabilities.  Each correlation comes from
its own sub-ensemble - no value is ever computed from a counterfactual run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .exactmath import (
    ExactAngle,
    NoAdmissibleAngle,
    ObstructionVerdict,
    REASON_DESCRIBABLE,
    ZERO_ANGLE,
    combine_degenerate_cosine,
    cos_exact,
    fraction_str,
    is_describable,
    simultaneous_describability,
    sin_exact,
)
from .highprec import DEFAULT_PREC, acos_as_turns, cos_turns, to_mpf
from .multiqubit import bell_agreement, bell_correlation, bell_sample_from_amplitude
from .samplespace import fraction, sample

PAIR_NAMES = ("A1B1", "A1B2", "A2B1", "A2B2")
BRIDGE_NAMES = ("A1A2", "B1B2")


def relative_turns(x: ExactAngle, y: ExactAngle) -> Fraction:
    """Relative orientation of two settings as a turn fraction in [0, 1/2]."""
    t = (x - y).turns
    return t if t <= Fraction(1, 2) else 1 - t


@dataclass(frozen=True)
class AngleSubstitution:
    """A requested relative angle and its nearest describable stand-in.

    ``cos_value`` = 2*first_count/2^N - 1 is exact; ``delta_turns_float`` is
    the display-only size of the (irrational) angular adjustment, checked
    against the window at high precision before this record is built.
    """

    name: str
    requested_turns: Fraction
    first_count: int
    cos_value: Fraction
    delta_turns_float: float

    def record(self) -> dict:
        return {
            "name": self.name,
            "requested_turns": fraction_str(self.requested_turns),
            "first_count": self.first_count,
            "cos": fraction_str(self.cos_value),
            "delta_turns_float_derived": self.delta_turns_float,
        }


def substitute_describable(
    requested_turns: Fraction,
    n_bits: int,
    window_turns: Fraction,
    name: str = "",
    prec: int = DEFAULT_PREC,
) -> AngleSubstitution:
    """Nearest angle whose cos^2(theta/2) is describable by N bits.

    ``requested_turns`` is a relative orientation folded into [0, 1/2].
    Raises NoAdmissibleAngle when the substitute is farther (in turns) than
    the window, which models the finite precision of a real apparatus; near
    the poles the cosine grid is angularly coarse, so tight windows refuse
    rather than stretch.  Substitutions are always reported, never silent.
    """
    length = 1 << n_bits
    with mpmath.workprec(prec):
        c = cos_turns(requested_turns, prec)
        count = int(mpmath.nint((1 + c) / 2 * length))
        count = min(max(count, 0), length)
        cos_sub = Fraction(2 * count, length) - 1
        sub_turns = acos_as_turns(cos_sub, prec)
        delta = abs(sub_turns - to_mpf(requested_turns, prec))
        if delta >= to_mpf(window_turns, prec):
            raise NoAdmissibleAngle(
                f"no describable angle within {window_turns} turns of {requested_turns} at N={n_bits}"
            )
        return AngleSubstitution(name, requested_turns, count, cos_sub, float(delta))


@dataclass(frozen=True)
class ChshConfig:
    n_bits: int
    a1: ExactAngle
    a2: ExactAngle
    b1: ExactAngle
    b2: ExactAngle
    window_turns: Fraction | None = None  # default 2**-(N-2)

    @property
    def window(self) -> Fraction:
        return self.window_turns if self.window_turns is not None else Fraction(1, 1 << (self.n_bits - 2))


@dataclass(frozen=True)
class SubEnsemble:
    """One of the four separately-prepared measurement runs."""

    pair: str
    substitution: AngleSubstitution
    agreement: Fraction
    correlation: Fraction

    def record(self) -> dict:
        return {
            "pair": self.pair,
            "substitution": self.substitution.record(),
            "agreement": fraction_str(self.agreement),
            "correlation": fraction_str(self.correlation),
            "correlation_float_derived": float(self.correlation),
        }


@dataclass(frozen=True)
class ChshReport:
    n_bits: int
    window_turns: Fraction
    sub_ensembles: dict[str, SubEnsemble]
    s_value: Fraction
    admissibility: dict[str, dict[str, dict]]
    bridges: dict[str, AngleSubstitution]

    def record(self) -> dict:
        return {
            "n_bits": self.n_bits,
            "window_turns": fraction_str(self.window_turns),
            "sub_ensembles": {k: v.record() for k, v in self.sub_ensembles.items()},
            "s_value": fraction_str(self.s_value),
            "s_value_float_derived": float(self.s_value),
            "bridges": {k: v.record() for k, v in self.bridges.items()},
            "admissibility": self.admissibility,
        }


def chsh_admissibility(cos_a1a2: Fraction, cos_a2b1: Fraction, n_bits: int) -> ObstructionVerdict:
    """Counterfactual verdict for the summed setting: is cos of the joint
    angle still describable?  Inputs are the describable cosines of the
    re-measurement bridge and of an actual sub-ensemble."""
    return simultaneous_describability(cos_a1a2, cos_a2b1, n_bits)


def _admissibility_matrix(
    subs: dict[str, AngleSubstitution], bridges: dict[str, AngleSubstitution], n_bits: int
) -> dict[str, dict[str, dict]]:
    matrix: dict[str, dict[str, dict]] = {}
    for actual in PAIR_NAMES:
        row: dict[str, dict] = {}
        for counterfactual in PAIR_NAMES:
            if counterfactual == actual:
                row[counterfactual] = {"verdict": "actual", "reason": REASON_DESCRIBABLE, "via": []}
                continue
            chain = []
            if actual[:2] != counterfactual[:2]:
                chain.append("A1A2")
            if actual[2:] != counterfactual[2:]:
                chain.append("B1B2")
            current = subs[actual].cos_value
            outcome: dict | None = None
            for bridge in chain:
                verdict = chsh_admissibility(bridges[bridge].cos_value, current, n_bits)
                if verdict.excluded:
                    outcome = {"verdict": "excluded", "reason": verdict.reason, "via": chain}
                    break
                current = combine_degenerate_cosine(current, bridges[bridge].cos_value)
            if outcome is None:
                outcome = {"verdict": "admissible", "reason": REASON_DESCRIBABLE, "via": chain}
            row[counterfactual] = outcome
        matrix[actual] = row
    return matrix


def chsh_run(cfg: ChshConfig, prec: int = DEFAULT_PREC) -> ChshReport:
    """Run the four sub-experiments on separate sub-ensembles and assemble
    S = |C(A1,B1) - C(A1,B2)| + |C(A2,B1) + C(A2,B2)| exactly."""
    settings = {"A1": cfg.a1, "A2": cfg.a2, "B1": cfg.b1, "B2": cfg.b2}
    subs: dict[str, AngleSubstitution] = {}
    ensembles: dict[str, SubEnsemble] = {}
    for pair in PAIR_NAMES:
        t = relative_turns(settings[pair[:2]], settings[pair[2:]])
        sub = substitute_describable(t, cfg.n_bits, cfg.window, pair, prec)
        ms = bell_sample_from_amplitude(Fraction(sub.first_count, 1 << cfg.n_bits), cfg.n_bits)
        ensembles[pair] = SubEnsemble(pair, sub, bell_agreement(ms), bell_correlation(ms))
        subs[pair] = sub
    bridges = {
        name: substitute_describable(
            relative_turns(settings[name[:2]], settings[name[2:]]), cfg.n_bits, cfg.window, name, prec
        )
        for name in BRIDGE_NAMES
    }
    c = {pair: ensembles[pair].correlation for pair in PAIR_NAMES}
    s_value = abs(c["A1B1"] - c["A1B2"]) + abs(c["A2B1"] + c["A2B2"])
    return ChshReport(
        cfg.n_bits,
        cfg.window,
        ensembles,
        s_value,
        _admissibility_matrix(subs, bridges, cfg.n_bits),
        bridges,
    )


WHICH_WAY = "which_way"
INTERFERENCE = "interference"


@dataclass(frozen=True)
class MzConfig:
    mode: str
    phi: ExactAngle
    n_bits: int


@dataclass(frozen=True)
class MzReport:
    mode: str
    phi_turns: Fraction
    probabilities: dict[str, Fraction]
    phase_gate: bool  # phi/2pi describable by N-1 bits
    amplitude_gate: bool  # cos^2(phi/2) describable by N bits
    counterfactual_mode: str
    counterfactual_admissible: bool
    exceptional: bool  # both gates pass: cos(phi) in {0, +-1/2, +-1} on the grid

    def record(self) -> dict:
        return {
            "mode": self.mode,
            "phi_turns": fraction_str(self.phi_turns),
            "probabilities": {k: fraction_str(v) for k, v in self.probabilities.items()},
            "probabilities_float_derived": {k: float(v) for k, v in self.probabilities.items()},
            "phase_gate": self.phase_gate,
            "amplitude_gate": self.amplitude_gate,
            "counterfactual_mode": self.counterfactual_mode,
            "counterfactual_admissible": self.counterfactual_admissible,
            "exceptional": self.exceptional,
        }


def mz_gates(phi: ExactAngle, n_bits: int) -> tuple[bool, bool]:
    """(phase gate, amplitude gate) for one phase-shifter setting.

    The two gates are simultaneously satisfiable only on the exceptional
    cosine set - the number-theoretic incommensurateness of a phase and its
    cosine.
    """
    phase_ok = is_describable(phi.turns, n_bits - 1)
    c = cos_exact(phi)
    amplitude_ok = c is not None and is_describable((1 + c) / 2, n_bits)
    return phase_ok, amplitude_ok


def mz_run(cfg: MzConfig) -> MzReport:
    """Which-way mode sends the input to the balanced string at phase phi
    (detector probabilities exactly 1/2); interference mode sends it to the
    amplitude-phi string at phase zero (bright-port probability exactly
    cos^2(phi/2)).  The mode whose gate fails is off the invariant set."""
    phase_ok, amplitude_ok = mz_gates(cfg.phi, cfg.n_bits)
    quarter = ExactAngle(Fraction(1, 4))
    if cfg.mode == WHICH_WAY:
        s = sample(cfg.n_bits, quarter, cfg.phi, tag="b")  # raises if phase gate fails
        p = fraction(s).as_fraction()
        probs = {"D_b": p, "D_not_b": 1 - p}
        counterfactual, cf_ok = INTERFERENCE, amplitude_ok
    elif cfg.mode == INTERFERENCE:
        s = sample(cfg.n_bits, cfg.phi, ZERO_ANGLE, tag="c")  # raises if amplitude gate fails
        p = fraction(s).as_fraction()
        probs = {"D_c": p, "D_not_c": 1 - p}
        counterfactual, cf_ok = WHICH_WAY, phase_ok
    else:
        raise ValueError(f"unknown mode {cfg.mode!r}")
    return MzReport(
        cfg.mode,
        cfg.phi.turns,
        probs,
        phase_ok,
        amplitude_ok,
        counterfactual,
        cf_ok,
        phase_ok and amplitude_ok,
    )


def pbr_x(alpha: ExactAngle, beta: ExactAngle, theta: ExactAngle, prec: int = DEFAULT_PREC):
    """Closed-form probability of the distinguishing outcome for the matched
    preparation: cos^4(t/2) + sin^4(t/2) + 2cos^2 sin^2 cos(a-2b).

    Exact Fraction when all trigonometric values are rational, else an mpf at
    the working precision."""
    delta = alpha - beta - beta  # alpha - 2*beta
    ct, cd = cos_exact(theta), cos_exact(delta)
    if ct is not None:
        c2, s2 = (1 + ct) / 2, (1 - ct) / 2
        if c2 * s2 == 0 or cd is not None:  # the mixed term vanishes or is rational
            return c2 * c2 + s2 * s2 + 2 * c2 * s2 * (cd or 0)
    with mpmath.workprec(prec):
        half = mpmath.pi * to_mpf(theta.turns, prec)
        c, s = mpmath.cos(half), mpmath.sin(half)
        return c**4 + s**4 + 2 * c**2 * s**2 * cos_turns(delta.turns, prec)


def pbr_z(alpha: ExactAngle, beta: ExactAngle, theta: ExactAngle, prec: int = DEFAULT_PREC):
    """Closed-form value whose vanishing the circuit parameters must achieve
    for the mismatched preparation:
    X - 4c^2s^2 - 4c^3 s cos(a-b) - 4c s^3 cos(b) with c, s the half-angle
    cosine and sine."""
    delta = alpha - beta - beta
    diff = alpha - beta
    ct, st = cos_exact(theta), sin_exact(theta)
    cd, cdiff, cb = cos_exact(delta), cos_exact(diff), cos_exact(beta)
    if ct is not None and st is not None:
        c2, s2, cs = (1 + ct) / 2, (1 - ct) / 2, st / 2
        # each phase cosine is needed only where its coefficient is nonzero
        if (c2 * s2 == 0 or cd is not None) and (c2 * cs == 0 or cdiff is not None) and (s2 * cs == 0 or cb is not None):
            x = c2 * c2 + s2 * s2 + 2 * c2 * s2 * (cd or 0)
            return x - 4 * c2 * s2 - 4 * c2 * cs * (cdiff or 0) - 4 * s2 * cs * (cb or 0)
    with mpmath.workprec(prec):
        half = mpmath.pi * to_mpf(theta.turns, prec)
        c, s = mpmath.cos(half), mpmath.sin(half)
        x = c**4 + s**4 + 2 * c**2 * s**2 * cos_turns(delta.turns, prec)
        return (
            x
            - 4 * c**2 * s**2
            - 4 * c**3 * s * cos_turns(diff.turns, prec)
            - 4 * c * s**3 * cos_turns(beta.turns, prec)
        )


def simultaneity_obstruction(cos_alpha_minus_2beta: Fraction, cos_beta: Fraction, n_bits: int) -> ObstructionVerdict:
    """The preparation obstruction on cosine values: with cos(a-2b) and
    cos(b) describable, cos(a-b) = cos(a-2b)cos(b) - sin(a-2b)sin(b) is
    excluded unless the pair is degenerate.  Same engine as the CHSH
    counterfactual check."""
    return simultaneous_describability(cos_alpha_minus_2beta, cos_beta, n_bits)


def pbr_simultaneity(alpha: ExactAngle, beta: ExactAngle, n_bits: int) -> ObstructionVerdict:
    """Angle-level wrapper: both cos(a-2b) and cos(b) must be rational and
    describable (precondition), then the cosine-level obstruction decides.
    A vanishing sine on either side is degenerate - cos(a-b) then reduces to
    (plus or minus) one of the actual cosines - and is admissible without
    further preconditions."""
    delta = alpha - beta - beta
    if sin_exact(beta) == 0 or sin_exact(delta) == 0:
        return ObstructionVerdict(False, REASON_DESCRIBABLE)
    cd, cb = cos_exact(delta), cos_exact(beta)
    if cd is None or cb is None:
        raise ValueError("precondition: cos(alpha-2beta) and cos(beta) must be rational")
    return simultaneity_obstruction(cd, cb, n_bits)


@dataclass(frozen=True)
class PbrConfig:
    alpha: ExactAngle
    beta: ExactAngle
    theta: ExactAngle
    n_bits: int
    prec: int = DEFAULT_PREC


@dataclass(frozen=True)
class PbrReport:
    x_value: object  # Fraction when exact, mpf otherwise
    z_value: object
    x_exact: bool
    z_exact: bool
    simultaneity: dict = field(default_factory=dict)

    def record(self) -> dict:
        def num(v, exact):
            if exact:
                return {"exact": fraction_str(v), "float_derived": float(v)}
            return {"exact": None, "float_derived": float(v), "highprec_derived": mpmath.nstr(v, 50)}

        return {
            "X": num(self.x_value, self.x_exact),
            "Z": num(self.z_value, self.z_exact),
            "simultaneity": self.simultaneity,
        }


def pbr_run(cfg: PbrConfig) -> PbrReport:
    x = pbr_x(cfg.alpha, cfg.beta, cfg.theta, cfg.prec)
    z = pbr_z(cfg.alpha, cfg.beta, cfg.theta, cfg.prec)
    cd = cos_exact(cfg.alpha - cfg.beta - cfg.beta)
    cb = cos_exact(cfg.beta)
    if cd is None or cb is None or not (is_describable(cd, cfg.n_bits) and is_describable(cb, cfg.n_bits)):
        sim = {"applicable": False, "reason": "cos(alpha-2beta) or cos(beta) not describable"}
    else:
        v = simultaneity_obstruction(cd, cb, cfg.n_bits)
        sim = {"applicable": True, "verdict": v.verdict, "reason": v.reason}
    return PbrReport(x, z, isinstance(x, Fraction), isinstance(z, Fraction), sim)
