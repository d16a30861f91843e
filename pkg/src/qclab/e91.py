"""Entanglement-based key distribution with eavesdropping detection.

A source emits spin-1/2 pairs; Alice and Bob measure each pair along
independently random analyzer directions in the x-y plane.  After the
exchange they publicly sort the records: mismatched-analyzer pairs feed
a CHSH test statistic whose value distinguishes an undisturbed channel
(s -> -2*sqrt(2)) from one whose pairs ever passed through a
product-state preparation (|s| <= sqrt(2)); matched-analyzer pairs are
perfectly anticorrelated and become the key.

Sources model the honest channel and three adversarial strategies.  A
pair's outcome statistics depend only on its own row of pre-drawn
uniforms, so sampling is reproducible and order-independent.
"""

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, TextIO

import numpy as np

from ._jsonfmt import dumps as json_dumps
from .errors import DomainError, InsufficientDataError, UnsupportedStrategyError

SQRT2 = math.sqrt(2.0)

# Uniform-draw columns consumed per pair (fixed positional contract so
# that transcripts are reproducible whatever the source type):
#   0: loss  1: Alice basis  2: Bob basis
#   3: Alice outcome  4: Bob outcome  5,6: auxiliary directions
#   7: strategy choice (mixture component / intercept angle)
_DRAWS_PER_PAIR = 8
_U_ALICE, _U_BOB, _U_AUX1, _U_AUX2, _U_CHOICE = 0, 1, 2, 3, 4

CHSH_COMBINATIONS = ((1, 1), (1, 3), (3, 1), (3, 3))
KEY_COMBINATIONS = ((2, 1), (3, 2))


@dataclass(frozen=True)
class AnalyzerSet:
    """Azimuthal analyzer angles for both parties, in radians."""

    alice: tuple[float, float, float] = (0.0, math.pi / 4, math.pi / 2)
    bob: tuple[float, float, float] = (math.pi / 4, math.pi / 2, 3 * math.pi / 4)

    def __post_init__(self):
        for angle in (*self.alice, *self.bob):
            if not 0.0 <= angle < 2 * math.pi:
                raise DomainError(f"analyzer angle {angle} outside [0, 2*pi)")

    def alice_angle(self, basis: int) -> float:
        return self.alice[basis - 1]

    def bob_angle(self, basis: int) -> float:
        return self.bob[basis - 1]


DEFAULT_ANALYZERS = AnalyzerSet()


class PairSource:
    """Base class for pair-emission strategies."""

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Singlet(PairSource):
    """The undisturbed channel: every pair in the singlet state."""

    def describe(self) -> str:
        return "singlet"


@dataclass(frozen=True)
class Werner(PairSource):
    """Singlet with probability v, isotropic product noise otherwise."""

    visibility: float

    def __post_init__(self):
        if not 0.0 <= self.visibility <= 1.0:
            raise DomainError(f"visibility {self.visibility} outside [0, 1]")

    def describe(self) -> str:
        return f"werner:{self.visibility:g}"


@dataclass(frozen=True)
class ProductMixture(PairSource):
    """Discrete mixture of product preparations (weight, phi_a, phi_b).

    The most favourable full-knowledge eavesdropping strategy: every
    pair is a product state with known directions.
    """

    components: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        if not self.components:
            raise DomainError("a product mixture needs at least one component")
        weights = np.array([w for w, _, _ in self.components], dtype=float)
        if np.any(weights <= 0.0):
            raise DomainError("mixture weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise DomainError(f"mixture weights sum to {weights.sum()!r}, not 1")

    def describe(self) -> str:
        parts = ";".join(f"{w:g},{a:g},{b:g}" for w, a, b in self.components)
        return f"product:{parts}"


@dataclass(frozen=True)
class InterceptResend(PairSource):
    """Eve measures each singlet in transit along a random angle from
    her list and forwards the two collapsed (product) spins."""

    eve_angles: tuple[float, ...]

    def __post_init__(self):
        if not self.eve_angles:
            raise DomainError("intercept-resend needs at least one angle")

    def describe(self) -> str:
        return "intercept:" + ",".join(f"{a:g}" for a in self.eve_angles)

    def equivalent_product_mixture(self) -> ProductMixture:
        """The product mixture Alice and Bob effectively receive.

        For each intercept angle phi, Eve's two outcomes are equally
        likely and leave anticorrelated spins along phi.
        """
        m = len(self.eve_angles)
        tau = 2 * math.pi
        components = []
        for phi in self.eve_angles:
            components.append((0.5 / m, phi % tau, (phi + math.pi) % tau))
            components.append((0.5 / m, (phi + math.pi) % tau, phi % tau))
        return ProductMixture(tuple(components))


@dataclass(frozen=True)
class PairRecord:
    pair_index: int
    alice_basis: int
    bob_basis: int
    alice_outcome: Optional[int]
    bob_outcome: Optional[int]
    lost: bool


@dataclass(frozen=True)
class SessionTranscript:
    """Column-oriented per-pair records of one exchange."""

    analyzers: AnalyzerSet
    source_description: str
    seed: Optional[int]
    alice_basis: np.ndarray  # int8, values 1..3
    bob_basis: np.ndarray  # int8, values 1..3
    alice_outcome: np.ndarray  # int8, +-1 (0 where lost)
    bob_outcome: np.ndarray  # int8, +-1 (0 where lost)
    lost: np.ndarray  # bool

    def __len__(self) -> int:
        return len(self.alice_basis)

    def __iter__(self) -> Iterator[PairRecord]:
        for i in range(len(self)):
            yield self.record(i)

    def record(self, i: int) -> PairRecord:
        lost = bool(self.lost[i])
        return PairRecord(
            pair_index=i,
            alice_basis=int(self.alice_basis[i]),
            bob_basis=int(self.bob_basis[i]),
            alice_outcome=None if lost else int(self.alice_outcome[i]),
            bob_outcome=None if lost else int(self.bob_outcome[i]),
            lost=lost,
        )


@dataclass(frozen=True)
class RecordGroup:
    """A subset of a transcript's surviving records."""

    indices: np.ndarray
    alice_basis: np.ndarray
    bob_basis: np.ndarray
    alice_outcome: np.ndarray
    bob_outcome: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)

    @classmethod
    def from_transcript(cls, t: SessionTranscript, mask: np.ndarray) -> "RecordGroup":
        idx = np.flatnonzero(mask)
        return cls(
            indices=idx,
            alice_basis=t.alice_basis[idx],
            bob_basis=t.bob_basis[idx],
            alice_outcome=t.alice_outcome[idx],
            bob_outcome=t.bob_outcome[idx],
        )


@dataclass(frozen=True)
class ChshEstimate:
    e11: float
    e13: float
    e31: float
    e33: float
    counts: dict
    s: float
    stderr_s: float


class Verdict:
    ABORT = "Abort"
    QPA_REQUIRED = "QpaRequired"
    SECURE = "Secure"


@dataclass(frozen=True)
class ChannelVerdict:
    verdict: str
    s: float
    stderr_s: float
    z: float
    abort_threshold: float
    secure_threshold: float


@dataclass(frozen=True)
class SiftedKey:
    bits: np.ndarray  # uint8
    pair_indices: np.ndarray
    qber: float
    empty: bool

    def __len__(self) -> int:
        return len(self.bits)


def correlation_closed_form(
    source: PairSource, alice_angle: float, bob_angle: float
) -> float:
    """Exact expectation of the outcome product at the given angles."""
    delta = alice_angle - bob_angle
    if isinstance(source, Singlet):
        return -math.cos(delta)
    if isinstance(source, Werner):
        return -source.visibility * math.cos(delta)
    if isinstance(source, ProductMixture):
        return sum(
            w * math.cos(alice_angle - phi_a) * math.cos(bob_angle - phi_b)
            for w, phi_a, phi_b in source.components
        )
    if isinstance(source, InterceptResend):
        raise UnsupportedStrategyError(
            "no closed form for intercept-resend; estimate empirically "
            "(or use equivalent_product_mixture())"
        )
    raise UnsupportedStrategyError(f"unknown source {source!r}")


def chsh_closed_form(source: PairSource, analyzers: AnalyzerSet = DEFAULT_ANALYZERS) -> float:
    """Exact s = e11 - e13 + e31 + e33 for a closed-form source."""
    e = {
        (i, j): correlation_closed_form(
            source, analyzers.alice_angle(i), analyzers.bob_angle(j)
        )
        for (i, j) in CHSH_COMBINATIONS
    }
    return e[(1, 1)] - e[(1, 3)] + e[(3, 1)] + e[(3, 3)]


def _product_outcomes(
    alice_angles: np.ndarray,
    bob_angles: np.ndarray,
    dir_a: np.ndarray,
    dir_b: np.ndarray,
    draws: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Independent outcomes for spins prepared along dir_a / dir_b."""
    p_plus_a = 0.5 * (1.0 + np.cos(alice_angles - dir_a))
    p_plus_b = 0.5 * (1.0 + np.cos(bob_angles - dir_b))
    a = np.where(draws[:, _U_ALICE] < p_plus_a, 1, -1)
    b = np.where(draws[:, _U_BOB] < p_plus_b, 1, -1)
    return a, b


def _singlet_outcomes(
    alice_angles: np.ndarray, bob_angles: np.ndarray, draws: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Joint outcomes with P(same sign) = (1 - cos(delta)) / 2."""
    a = np.where(draws[:, _U_ALICE] < 0.5, 1, -1)
    p_same = 0.5 * (1.0 - np.cos(alice_angles - bob_angles))
    b = np.where(draws[:, _U_BOB] < p_same, a, -a)
    return a, b


def _sample_outcomes(
    source: PairSource,
    alice_angles: np.ndarray,
    bob_angles: np.ndarray,
    draws: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(source, Singlet):
        return _singlet_outcomes(alice_angles, bob_angles, draws)

    if isinstance(source, Werner):
        sa, sb = _singlet_outcomes(alice_angles, bob_angles, draws)
        dir_a = 2 * np.pi * draws[:, _U_AUX1]
        dir_b = 2 * np.pi * draws[:, _U_AUX2]
        pa, pb = _product_outcomes(alice_angles, bob_angles, dir_a, dir_b, draws)
        is_singlet = draws[:, _U_CHOICE] < source.visibility
        return np.where(is_singlet, sa, pa), np.where(is_singlet, sb, pb)

    if isinstance(source, ProductMixture):
        weights = np.array([w for w, _, _ in source.components])
        phi_a = np.array([a for _, a, _ in source.components])
        phi_b = np.array([b for _, _, b in source.components])
        cumulative = np.cumsum(weights)
        chosen = np.searchsorted(cumulative, draws[:, _U_CHOICE], side="right")
        chosen = np.minimum(chosen, len(weights) - 1)
        return _product_outcomes(
            alice_angles, bob_angles, phi_a[chosen], phi_b[chosen], draws
        )

    if isinstance(source, InterceptResend):
        angles = np.array(source.eve_angles)
        chosen = np.minimum(
            (draws[:, _U_CHOICE] * len(angles)).astype(np.int64), len(angles) - 1
        )
        eve_angle = angles[chosen]
        eve_plus = draws[:, _U_AUX2] < 0.5
        # collapsed spins are anticorrelated along Eve's axis
        dir_a = np.where(eve_plus, eve_angle, eve_angle + np.pi)
        dir_b = np.where(eve_plus, eve_angle + np.pi, eve_angle)
        return _product_outcomes(alice_angles, bob_angles, dir_a, dir_b, draws)

    raise UnsupportedStrategyError(f"unknown source {source!r}")


def sample_pair(
    source: PairSource,
    alice_basis: int,
    bob_basis: int,
    rng: np.random.Generator,
    analyzers: AnalyzerSet = DEFAULT_ANALYZERS,
) -> tuple[int, int]:
    """Draw one pair of +-1 outcomes for fixed analyzer bases."""
    if alice_basis not in (1, 2, 3) or bob_basis not in (1, 2, 3):
        raise DomainError("bases must be 1, 2 or 3")
    draws = rng.random((1, 5))
    a, b = _sample_outcomes(
        source,
        np.array([analyzers.alice_angle(alice_basis)]),
        np.array([analyzers.bob_angle(bob_basis)]),
        draws,
    )
    return int(a[0]), int(b[0])


def run_exchange(
    source: PairSource,
    n_pairs: int,
    loss_probability: float = 0.0,
    rng: Optional[np.random.Generator] = None,
    analyzers: AnalyzerSet = DEFAULT_ANALYZERS,
    seed: Optional[int] = None,
) -> SessionTranscript:
    """Simulate a full exchange of ``n_pairs`` emitted pairs.

    Each pair is independently lost with ``loss_probability``;
    surviving pairs get uniform independent basis choices and outcomes
    drawn from the source's joint distribution.
    """
    if n_pairs < 1:
        raise DomainError("n_pairs must be at least 1")
    if not 0.0 <= loss_probability < 1.0:
        raise DomainError("loss_probability must be in [0, 1)")
    if rng is None:
        raise DomainError("an explicit random generator is required")

    draws = rng.random((n_pairs, _DRAWS_PER_PAIR))
    lost = draws[:, 0] < loss_probability
    alice_basis = (draws[:, 1] * 3).astype(np.int8) + 1
    bob_basis = (draws[:, 2] * 3).astype(np.int8) + 1
    alice_angles = np.array(analyzers.alice)[alice_basis - 1]
    bob_angles = np.array(analyzers.bob)[bob_basis - 1]
    a_out, b_out = _sample_outcomes(
        source, alice_angles, bob_angles, draws[:, 3:]
    )
    a_out = np.where(lost, 0, a_out).astype(np.int8)
    b_out = np.where(lost, 0, b_out).astype(np.int8)
    return SessionTranscript(
        analyzers=analyzers,
        source_description=source.describe(),
        seed=seed,
        alice_basis=alice_basis,
        bob_basis=bob_basis,
        alice_outcome=a_out,
        bob_outcome=b_out,
        lost=lost,
    )


@dataclass(frozen=True)
class SiftResult:
    chsh_group: RecordGroup
    key_group: RecordGroup
    discarded: RecordGroup


def sift(transcript: SessionTranscript) -> SiftResult:
    """Publicly sort records by announced analyzer choices.

    Four mixed-basis combinations feed the CHSH estimate, the two
    matched-angle combinations feed the key, and everything else
    (including lost pairs) is discarded.
    """
    a = transcript.alice_basis
    b = transcript.bob_basis
    alive = ~transcript.lost
    chsh_mask = np.zeros(len(transcript), dtype=bool)
    for i, j in CHSH_COMBINATIONS:
        chsh_mask |= (a == i) & (b == j)
    key_mask = np.zeros(len(transcript), dtype=bool)
    for i, j in KEY_COMBINATIONS:
        key_mask |= (a == i) & (b == j)
    chsh_mask &= alive
    key_mask &= alive
    discard_mask = ~(chsh_mask | key_mask)
    return SiftResult(
        chsh_group=RecordGroup.from_transcript(transcript, chsh_mask),
        key_group=RecordGroup.from_transcript(transcript, key_mask),
        discarded=RecordGroup.from_transcript(transcript, discard_mask),
    )


def estimate_chsh(chsh_group: RecordGroup) -> ChshEstimate:
    """Frequency estimates of the four correlations and their combination.

    stderr propagates the per-combination variances (1 - E^2)/N, which
    are independent because the combinations use disjoint pairs.
    """
    estimates = {}
    counts = {}
    variance = 0.0
    for i, j in CHSH_COMBINATIONS:
        mask = (chsh_group.alice_basis == i) & (chsh_group.bob_basis == j)
        n = int(mask.sum())
        if n == 0:
            raise InsufficientDataError(f"no records for combination (a{i}, b{j})")
        products = chsh_group.alice_outcome[mask].astype(np.float64) * chsh_group.bob_outcome[mask]
        e = float(products.mean())
        estimates[(i, j)] = e
        counts[(i, j)] = n
        variance += (1.0 - e * e) / n
    s = (
        estimates[(1, 1)]
        - estimates[(1, 3)]
        + estimates[(3, 1)]
        + estimates[(3, 3)]
    )
    return ChshEstimate(
        e11=estimates[(1, 1)],
        e13=estimates[(1, 3)],
        e31=estimates[(3, 1)],
        e33=estimates[(3, 3)],
        counts=counts,
        s=s,
        stderr_s=math.sqrt(variance),
    )


def channel_verdict(estimate: ChshEstimate, z: float = 3.0) -> ChannelVerdict:
    """Classify the channel from |s| against the two exact bounds.

    |s| <= sqrt(2) (within z sigma) is the product-state regime: abort.
    |s| >= 2*sqrt(2) (within z sigma) certifies the undisturbed
    channel.  Anything between needs privacy amplification.
    """
    if not math.isfinite(estimate.stderr_s):
        raise DomainError("stderr must be finite")
    if z < 0:
        raise DomainError("z must be nonnegative")
    magnitude = abs(estimate.s)
    abort_threshold = SQRT2 + z * estimate.stderr_s
    secure_threshold = 2 * SQRT2 - z * estimate.stderr_s
    if magnitude <= abort_threshold:
        verdict = Verdict.ABORT
    elif magnitude >= secure_threshold:
        verdict = Verdict.SECURE
    else:
        verdict = Verdict.QPA_REQUIRED
    return ChannelVerdict(
        verdict=verdict,
        s=estimate.s,
        stderr_s=estimate.stderr_s,
        z=z,
        abort_threshold=abort_threshold,
        secure_threshold=secure_threshold,
    )


def extract_key(key_group: RecordGroup) -> SiftedKey:
    """Alice's bits become the key; Bob flips his to match.

    On matched analyzers the singlet anticorrelates exactly, so Bob's
    flipped bit should equal Alice's; the disagreement fraction is the
    bit error rate.
    """
    if len(key_group) == 0:
        return SiftedKey(
            bits=np.zeros(0, dtype=np.uint8),
            pair_indices=key_group.indices,
            qber=0.0,
            empty=True,
        )
    alice_bits = ((key_group.alice_outcome + 1) // 2).astype(np.uint8)
    bob_flipped = (1 - (key_group.bob_outcome + 1) // 2).astype(np.uint8)
    qber = float(np.mean(alice_bits != bob_flipped))
    return SiftedKey(
        bits=alice_bits, pair_indices=key_group.indices, qber=qber, empty=False
    )


TRANSCRIPT_CSV_HEADER = "pair_index,alice_basis,bob_basis,alice_outcome,bob_outcome,lost"


def write_transcript_csv(transcript: SessionTranscript, stream: TextIO) -> None:
    """CSV export; lost pairs keep their basis columns, outcomes empty."""
    stream.write(TRANSCRIPT_CSV_HEADER + "\n")
    for i in range(len(transcript)):
        if transcript.lost[i]:
            a_out = b_out = ""
            lost = "true"
        else:
            a_out = f"{int(transcript.alice_outcome[i]):+d}"
            b_out = f"{int(transcript.bob_outcome[i]):+d}"
            lost = "false"
        stream.write(
            f"{i},{int(transcript.alice_basis[i])},{int(transcript.bob_basis[i])},"
            f"{a_out},{b_out},{lost}\n"
        )


def session_report(
    estimate: ChshEstimate,
    verdict: ChannelVerdict,
    key: SiftedKey,
    seed: Optional[int],
) -> dict:
    """The exported estimate/verdict object."""
    return {
        "e11": estimate.e11,
        "e13": estimate.e13,
        "e31": estimate.e31,
        "e33": estimate.e33,
        "s": estimate.s,
        "stderr_s": estimate.stderr_s,
        "verdict": verdict.verdict,
        "key_length": len(key),
        "qber": key.qber,
        "seed": seed,
    }


def session_report_json(
    estimate: ChshEstimate,
    verdict: ChannelVerdict,
    key: SiftedKey,
    seed: Optional[int],
) -> str:
    return json_dumps(session_report(estimate, verdict, key, seed))
