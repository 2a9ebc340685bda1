"""Equivalence harness: permanent predictions versus brute-force parity statistics.

For n photons added to (or subtracted from) n identically squeezed modes and a
special-orthogonal network O, the probability of any parity pattern with
exactly n odd modes equals |Per(O_S)|^2, where O_S keeps the rows of the odd
modes and the first n columns. The identity is exact and independent of the
squeezing strength; the harness checks it numerically against the truncated
Fock oracle and measures, rather than assumes, everything else (collision
sector mass, truncation loss, the subtracted-variant matrix convention).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .configurations import (
    ParityPattern,
    collision_free_configurations,
    parity_pattern_of,
)
from .distributions import OutputDistribution, total_variation_distance  # noqa: F401
from .errors import SizeLimitError, ValidationError
from .evolution import (
    ADDED,
    SUBTRACTED,
    apply_network,
    as_squeezing,
    build_passv_input,
    build_squeezed_product,
    parity_distribution,
    required_cutoff,
    state_overlap,
)
from .networks import LinearNetwork, ORTHOGONAL, haar_special_orthogonal, reck_decompose
from .permanents import permanent_ryser
from .sampling import uniform_input
from .networks import scattering_submatrix

MAX_ORACLE_MODES = 5
MAX_SQUEEZING = 1.0
CONJUGATE = "conjugate"
TRANSPOSE = "transpose"

# Amplitudes dropped at the cutoff can compound while the network is applied
# element by element, so the comparison tolerance carries a 10x safety factor
# over the raw m * epsilon_tail budget.
BUDGET_FACTOR = 10.0
TOLERANCE_FLOOR = 1e-9


def comparison_tolerance(modes: int, epsilon_tail: float) -> float:
    return BUDGET_FACTOR * modes * epsilon_tail + TOLERANCE_FLOOR


def predicted_parity_distribution(network: LinearNetwork, total_photons: int,
                                  variant: str = ADDED, *,
                                  convention: str = CONJUGATE) -> OutputDistribution:
    """Permanent-based probabilities of the n-odd parity patterns.

    The table is deliberately sub-normalized: patterns with fewer than n odd
    modes (collision sectors) carry squeezing-dependent mass and are not
    predicted, so their total shows up in ``normalization_defect``.

    For the subtracted variant the sampled matrix is the elementwise
    conjugate, which for a real network is the network itself; this is the
    convention the brute-force oracle confirms. ``convention="transpose"`` is
    kept for diagnostics.
    """
    if not isinstance(network, LinearNetwork):
        raise ValidationError("predicted_parity_distribution expects a LinearNetwork")
    if network.kind != ORTHOGONAL:
        raise ValidationError("parity predictions are defined for special-orthogonal networks")
    if variant not in (ADDED, SUBTRACTED):
        raise ValidationError(f"variant must be '{ADDED}' or '{SUBTRACTED}', got {variant!r}")
    if convention not in (CONJUGATE, TRANSPOSE):
        raise ValidationError(f"unknown convention {convention!r}")
    m = network.dimension
    n = total_photons
    if not (1 <= n <= m):
        raise ValidationError(f"need 1 <= n <= m, got n={n}, m={m}")
    entries = network.entries
    if variant == SUBTRACTED:
        entries = np.conj(entries) if convention == CONJUGATE else entries.T
    effective = LinearNetwork(entries, ORTHOGONAL, allow_reflection=True)
    pump = uniform_input(n, m)
    pairs = []
    for s in collision_free_configurations(n, m):
        sub = scattering_submatrix(effective, pump, s)
        prob = abs(permanent_ryser(sub)) ** 2
        pairs.append((parity_pattern_of(s), prob))
    return OutputDistribution(pairs)


@dataclass
class EquivalenceReport:
    """Side-by-side parity probabilities for one network across squeezings.

    ``brute`` holds one probability row per squeezing value, aligned with
    ``patterns``; deviations are taken over collision-free patterns only.
    ``collision_sector_mass`` and ``truncation_loss`` are measured per
    squeezing value, and the comparison ``tolerance`` is derived from the
    truncation budget.
    """

    total_photons: int
    modes: int
    variant: str
    xi_values: list[float]
    seed: int
    epsilon_tail: float
    cutoffs: list[int]
    patterns: list[ParityPattern]
    predicted: list[float]
    brute: list[list[float]]
    max_deviation: float
    cross_xi_deviation: float
    collision_sector_mass: list[float]
    truncation_loss: list[float]
    truncation_budget: float
    tolerance: float
    transpose_convention_deviation: float | None = None

    def passes(self) -> bool:
        return (
            self.max_deviation <= self.tolerance
            and self.cross_xi_deviation <= self.tolerance
            and all(loss <= self.truncation_budget for loss in self.truncation_loss)
        )

    def to_json_dict(self) -> dict:
        d = {
            "n": self.total_photons,
            "m": self.modes,
            "variant": self.variant,
            "xi": [float(x) for x in self.xi_values],
            "seed": self.seed,
            "epsilon_tail": self.epsilon_tail,
            "cutoffs": list(self.cutoffs),
            "patterns": [p.serialize() for p in self.patterns],
            "predicted": [float(x) for x in self.predicted],
            "brute": [[float(x) for x in row] for row in self.brute],
            "max_deviation": float(self.max_deviation),
            "cross_xi_deviation": float(self.cross_xi_deviation),
            "collision_sector_mass": [float(x) for x in self.collision_sector_mass],
            "truncation_loss": [float(x) for x in self.truncation_loss],
            "truncation_budget": float(self.truncation_budget),
            "tolerance": float(self.tolerance),
            "passes": self.passes(),
        }
        if self.transpose_convention_deviation is not None:
            d["transpose_convention_deviation"] = float(self.transpose_convention_deviation)
        return d

    def to_csv_rows(self) -> list[list[str]]:
        header = ["pattern", "predicted"] + [f"p_xi{i}" for i in range(len(self.xi_values))]
        rows = [header]
        for k, pattern in enumerate(self.patterns):
            row = [pattern.serialize(), repr(float(self.predicted[k]))]
            row += [repr(float(self.brute[i][k])) for i in range(len(self.xi_values))]
            rows.append(row)
        return rows


def run_equivalence_experiment(total_photons: int, modes: int, xi_values,
                               variant: str = ADDED, *, seed: int,
                               epsilon_tail: float = 1e-8) -> EquivalenceReport:
    """Compare permanent predictions with brute-force parity statistics.

    Draws one Haar special-orthogonal network from ``seed``, evolves the
    photon-added or photon-subtracted squeezed input through its two-mode
    elements at every requested squeezing magnitude, and tabulates the parity
    probabilities of the collision-free patterns against |Per(O_S)|^2.
    """
    n, m = total_photons, modes
    if not (1 <= n <= m):
        raise ValidationError(f"need 1 <= n <= m, got n={n}, m={m}")
    if m > MAX_ORACLE_MODES:
        raise ValidationError(
            f"the brute-force oracle is limited to m <= {MAX_ORACLE_MODES} modes"
        )
    xi_list = [as_squeezing(x) for x in xi_values]
    if not xi_list:
        raise ValidationError("at least one squeezing value is required")
    for sq in xi_list:
        if sq.r > MAX_SQUEEZING:
            raise ValidationError(
                f"squeezing magnitude {sq.r} exceeds the supported {MAX_SQUEEZING}"
            )
    network = haar_special_orthogonal(m, seed)
    decomposition = reck_decompose(network)
    predicted_dist = predicted_parity_distribution(network, n, variant)
    patterns = predicted_dist.keys
    predicted = [predicted_dist.probability(p) for p in patterns]

    budget = BUDGET_FACTOR * m * epsilon_tail
    brute_rows: list[list[float]] = []
    collision_mass: list[float] = []
    losses: list[float] = []
    cutoffs: list[int] = []
    for sq in xi_list:
        # Sector overflow during mixing loses more amplitude than the
        # single-mode tails alone, so grow the cutoff until the recorded
        # loss fits the declared budget. Each step of two shrinks the
        # overflow by roughly tanh(r)^2.
        cutoff = required_cutoff(sq, epsilon_tail, headroom=n)
        while True:
            if (cutoff + 1) ** m > 25_000_000:
                raise SizeLimitError(
                    f"cutoff {cutoff} over {m} modes exceeds the oracle memory "
                    "budget; reduce the squeezing or epsilon_tail"
                )
            state = build_passv_input(n, m, sq, variant, cutoff)
            apply_network(state, decomposition)
            if state.truncation_loss <= budget:
                break
            cutoff += 2
        cutoffs.append(cutoff)
        parity = parity_distribution(state)
        row = [parity.probability(p) for p in patterns]
        brute_rows.append(row)
        collision_mass.append(max(0.0, 1.0 - sum(row)))
        losses.append(state.truncation_loss)

    max_dev = max(
        abs(row[k] - predicted[k]) for row in brute_rows for k in range(len(patterns))
    )
    cross = 0.0
    for a in range(len(brute_rows)):
        for b in range(a + 1, len(brute_rows)):
            for k in range(len(patterns)):
                cross = max(cross, abs(brute_rows[a][k] - brute_rows[b][k]))

    transpose_dev = None
    if variant == SUBTRACTED:
        alt = predicted_parity_distribution(network, n, variant, convention=TRANSPOSE)
        transpose_dev = max(
            abs(row[k] - alt.probability(patterns[k]))
            for row in brute_rows
            for k in range(len(patterns))
        )

    return EquivalenceReport(
        total_photons=n,
        modes=m,
        variant=variant,
        xi_values=[sq.r for sq in xi_list],
        seed=int(seed),
        epsilon_tail=float(epsilon_tail),
        cutoffs=cutoffs,
        patterns=patterns,
        predicted=predicted,
        brute=brute_rows,
        max_deviation=float(max_dev),
        cross_xi_deviation=float(cross),
        collision_sector_mass=collision_mass,
        truncation_loss=losses,
        truncation_budget=budget,
        tolerance=comparison_tolerance(m, epsilon_tail),
        transpose_convention_deviation=transpose_dev,
    )


def squeezed_invariance_check(network: LinearNetwork, xi, cutoff: int) -> float:
    """|overlap| between a product squeezed state and its network image.

    Real rotations leave the identically squeezed product invariant up to
    truncation, since they mix only like quadratures; a genuinely complex
    network entangles the modes and the overlap drops measurably below 1.
    """
    if not isinstance(network, LinearNetwork):
        raise ValidationError("squeezed_invariance_check expects a LinearNetwork")
    state0 = build_squeezed_product(network.dimension, xi, cutoff)
    evolved = state0.copy()
    apply_network(evolved, reck_decompose(network))
    return abs(state_overlap(state0, evolved))
