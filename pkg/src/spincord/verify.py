"""Reference-value checks.

Each :class:`VerifyRow` compares one computed number with a published or
closed-form expectation. Structural checks (spectra, matrix elements,
booleans) are expressed as a deviation whose expected value is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clusters, decoherence, qcore
from .clusters import PairKind, TetramerParams, TrimerParams
from .xstate import (
    XState,
    analytic_report,
    classical_correlation_symmetric,
    concurrence,
    discord_numeric,
    discord_symmetric,
    from_matrix,
    is_zero_discord,
    mutual_information,
    wootters_concurrence,
    xstate_eigenvalues,
)

PUBLISHED_TOL = 1e-3
NUMERIC_TOL = 1e-5
EXACT_TOL = 1e-10


@dataclass(frozen=True)
class VerifyRow:
    label: str
    computed: float
    expected: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(abs(self.computed - self.expected) <= self.tolerance)


def _dev(x, y) -> float:
    return float(np.max(np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))))


def _flag(ok: bool) -> float:
    return 0.0 if ok else 1.0


AFM_PAIR = XState(1 / 6, 1 / 3, 1 / 3, 1 / 6, -1 / 6, 0.0)
FM_PAIR = XState(1 / 3, 1 / 6, 1 / 6, 1 / 3, 1 / 6, 0.0)


def _spectrum_rows() -> list[VerifyRow]:
    rows = []
    e = qcore.eig_hermitian(clusters.trimer_hamiltonian(TrimerParams(1.0, 1.0, 0.0))).eigenvalues
    rows.append(VerifyRow("trimer eps=1 spectrum {-3/4 x4, +3/4 x4}", _dev(e, [-0.75] * 4 + [0.75] * 4), 0, EXACT_TOL))
    e = qcore.eig_hermitian(clusters.trimer_hamiltonian(TrimerParams(1.0, 0.5, 0.0))).eigenvalues
    rows.append(VerifyRow("trimer eps=1/2 ground level E2 = -J/2", e[0], -0.5, EXACT_TOL))
    h = 0.7
    e = qcore.eig_hermitian(clusters.trimer_hamiltonian(TrimerParams(1.0, 1.0, h))).eigenvalues
    rows.append(VerifyRow("trimer field E1 = 3J/4 + 3h/2 (h=0.7)", e[-1], 0.75 + 1.5 * h, EXACT_TOL))
    rows.append(VerifyRow("trimer field E8 = 3J/4 - 3h/2 (h=0.7)", min(abs(e - (0.75 - 1.5 * h))), 0, EXACT_TOL))
    e = qcore.eig_hermitian(clusters.tetramer_hamiltonian(TetramerParams(1.0, 0.5))).eigenvalues
    expect = sorted([1.25] * 5 + [-0.25] * 6 + [-0.75] * 4 + [-1.75])
    rows.append(VerifyRow("tetramer J1=1 J2=0.5 spectrum (5,6,3,1,1)", _dev(e, expect), 0, EXACT_TOL))
    rows.append(VerifyRow("tetramer J1=1 J2=0.5 minimum e5", e[0], -1.75, EXACT_TOL))
    e = qcore.eig_hermitian(clusters.tetramer_hamiltonian(TetramerParams(0.5, 1.0))).eigenvalues
    rows.append(VerifyRow("tetramer J1=0.5 J2=1 minimum e4", e[0], -1.5, EXACT_TOL))
    T = 0.8
    z_num = float(np.sum(np.exp(-qcore.eig_hermitian(clusters.trimer_hamiltonian(TrimerParams(1.0, 1.0))).eigenvalues / T)))
    rows.append(VerifyRow("trimer partition function (eps=1, T=0.8)", z_num, clusters.trimer_partition_function(TrimerParams(1.0, 1.0, 0.0, T)), EXACT_TOL))
    p = TetramerParams(1.0, 0.5, T)
    z_num = float(np.sum(np.exp(-qcore.eig_hermitian(clusters.tetramer_hamiltonian(p)).eigenvalues / T)))
    rows.append(VerifyRow("tetramer partition function (T=0.8)", z_num, clusters.tetramer_partition_function(p), EXACT_TOL))
    return rows


def _state_rows() -> list[VerifyRow]:
    rows = []
    afm = clusters.trimer_ground_rdm(TrimerParams(1.0, 1.0, 0.0))
    rows.append(VerifyRow("AFM trimer pair (1/6,1/3,1/3,1/6,-1/6,0)", _dev(from_matrix(afm).astuple(), AFM_PAIR.astuple()), 0, EXACT_TOL))
    full = clusters.trimer_state(TrimerParams(1.0, 1.0, 0.0))
    rows.append(VerifyRow("AFM trimer ground mixture entropy (4-fold)", qcore.von_neumann_entropy(full), 2.0, EXACT_TOL))
    qpt = clusters.trimer_state(TrimerParams(1.0, 1.0, 1.5))
    rows.append(VerifyRow("trimer h=3J/2 ground mixture entropy (3-fold)", qcore.von_neumann_entropy(qpt), math.log2(3), EXACT_TOL))
    fm = clusters.trimer_ground_rdm(TrimerParams(-1.0, 1.0, 0.0))
    rows.append(VerifyRow("FM trimer pair (1/3,1/6,1/6,1/3,1/6,0)", _dev(from_matrix(fm).astuple(), FM_PAIR.astuple()), 0, EXACT_TOL))
    field_state = from_matrix(clusters.trimer_ground_rdm(TrimerParams(1.0, 1.0, 1.0)))
    rows.append(VerifyRow("trimer 0<h<3J/2 pair (0,1/3,1/3,1/3,-1/6,0)", _dev(field_state.astuple(), (0, 1 / 3, 1 / 3, 1 / 3, -1 / 6, 0)), 0, EXACT_TOL))
    qpt_state = from_matrix(clusters.trimer_ground_rdm(TrimerParams(1.0, 1.0, 1.5)))
    rows.append(VerifyRow("trimer h=3J/2 pair (0,2/9,2/9,5/9,-1/9,0)", _dev(qpt_state.astuple(), (0, 2 / 9, 2 / 9, 5 / 9, -1 / 9, 0)), 0, EXACT_TOL))
    cold = clusters.trimer_thermal_xstate(TrimerParams(1.0, 1.0, 0.0, 1e-3))
    rows.append(VerifyRow("AFM trimer thermal elements as T->0", _dev(cold.astuple(), AFM_PAIR.astuple()), 0, 1e-8))
    singlet = qcore.partial_trace_pair(clusters.tetramer_state(TetramerParams(0.5, 1.0)), 0, 2)
    rows.append(VerifyRow("tetramer |10> diagonal pair is a singlet", _dev(from_matrix(singlet).astuple(), (0, 0.5, 0.5, 0, -0.5, 0)), 0, EXACT_TOL))
    cold = clusters.tetramer_thermal_xstate(TetramerParams(1.0, 0.5, 1e-3), PairKind.NN)
    rows.append(VerifyRow("tetramer n.n. thermal elements as T->0", _dev(cold.astuple(), (1 / 12, 5 / 12, 5 / 12, 1 / 12, -1 / 3, 0)), 0, 1e-8))
    lam = sorted(xstate_eigenvalues(AFM_PAIR))
    rows.append(VerifyRow("AFM pair eigenvalues {1/2,1/6,1/6,1/6}", _dev(lam, [1 / 6, 1 / 6, 1 / 6, 1 / 2]), 0, 1e-12))
    lam = sorted(xstate_eigenvalues(FM_PAIR))
    rows.append(VerifyRow("FM pair eigenvalues {1/3,1/3,1/3,0}", _dev(lam, [0, 1 / 3, 1 / 3, 1 / 3]), 0, 1e-12))
    return rows


def _trimer_rows() -> list[VerifyRow]:
    rows = []
    afm = analytic_report(AFM_PAIR)
    rows += [
        VerifyRow("trimer AFM ground I = 0.207", afm.I, 0.207, PUBLISHED_TOL),
        VerifyRow("trimer AFM ground C = 0.082", afm.C, 0.082, PUBLISHED_TOL),
        VerifyRow("trimer AFM ground Q = 0.1258 (analytic)", afm.Q, 0.1258, PUBLISHED_TOL),
    ]
    num = discord_numeric(clusters.trimer_ground_rdm(TrimerParams(1.0, 1.0, 0.0)))
    rows.append(VerifyRow("trimer AFM ground Q = 0.1258 (numeric)", num.Q, 0.1258, PUBLISHED_TOL))
    rows.append(VerifyRow("trimer AFM ground Q analytic vs numeric", num.Q, afm.Q, NUMERIC_TOL))
    rows.append(VerifyRow("trimer AFM pair concurrence = 0", concurrence(AFM_PAIR), 0.0, EXACT_TOL))
    rows.append(VerifyRow("trimer AFM pair fails zero-discord test", _flag(not is_zero_discord(AFM_PAIR)), 0, 0))
    fm = analytic_report(FM_PAIR)
    rows += [
        VerifyRow("trimer FM ground I = 0.415", fm.I, 0.415, PUBLISHED_TOL),
        VerifyRow("trimer FM ground C = 0.082", fm.C, 0.082, PUBLISHED_TOL),
        VerifyRow("trimer FM ground Q = 0.333", fm.Q, 0.333, PUBLISHED_TOL),
    ]
    for h in (0.5, 1.0, 1.4):
        q = discord_numeric(clusters.trimer_ground_rdm(TrimerParams(1.0, 1.0, h))).Q
        rows.append(VerifyRow(f"trimer field ground Q = 0.125815 (h={h})", q, 0.125815, NUMERIC_TOL))
    q = discord_numeric(clusters.trimer_ground_rdm(TrimerParams(1.0, 1.0, 1.5))).Q
    rows.append(VerifyRow("trimer QPT h=3J/2 Q = 0.0838764", q, 0.0838764, NUMERIC_TOL))
    q = discord_numeric(clusters.trimer_ground_rdm(TrimerParams(1.0, 1.0, 2.0))).Q
    rows.append(VerifyRow("trimer h=2J ground Q = 0", q, 0.0, 1e-9))
    return rows


def _tetramer_rows() -> list[VerifyRow]:
    rows = []
    cases = [
        ("J1>J2", TetramerParams(1.0, 0.5), {PairKind.NN: (0.350, 0.442), PairKind.NNN: (0.082, 0.333)}),
        ("J1<J2", TetramerParams(0.5, 1.0), {PairKind.NN: (0.0, 0.0), PairKind.NNN: (1.0, 1.0)}),
        ("QPT J1=J2", TetramerParams(1.0, 1.0), {PairKind.NN: (0.082, 0.1258), PairKind.NNN: (0.082, 0.1258)}),
    ]
    for name, p, expect in cases:
        for pair, (c_exp, q_exp) in expect.items():
            x = clusters.tetramer_ground_rdm(p, pair)
            rows.append(VerifyRow(f"tetramer {name} {pair.value} C = {c_exp}", classical_correlation_symmetric(x), c_exp, PUBLISHED_TOL))
            rows.append(VerifyRow(f"tetramer {name} {pair.value} Q = {q_exp}", discord_symmetric(x), q_exp, PUBLISHED_TOL))
    x = clusters.tetramer_ground_rdm(TetramerParams(1.0, 0.5), PairKind.NN)
    rows.append(VerifyRow("tetramer J1>J2 n.n. I = C + Q", mutual_information(x), classical_correlation_symmetric(x) + discord_symmetric(x), 1e-9))
    scan = clusters.qpt_scan("tetramer_ratio", 0.5, 2.0, 151, pair=PairKind.NNN)
    rows.append(VerifyRow("tetramer n.n.n. scan: Q = 1 below J1=J2", scan.rows[0].Q, 1.0, PUBLISHED_TOL))
    rows.append(VerifyRow("tetramer n.n.n. scan: Q = 0.333 above J1=J2", scan.rows[-1].Q, 0.333, PUBLISHED_TOL))
    rows.append(VerifyRow("tetramer n.n.n. scan: jump brackets J1/J2 = 1", _flag(any(lo <= 1.0 <= hi for lo, hi in scan.jumps)), 0, 0))
    return rows


def _dephasing_rows() -> list[VerifyRow]:
    rows = []
    rows.append(VerifyRow("Werner alpha=1/3 equals AFM trimer pair", _dev(from_matrix(decoherence.werner(1 / 3)).astuple(), AFM_PAIR.astuple()), 0, EXACT_TOL))
    nn = clusters.tetramer_ground_rdm(TetramerParams(1.0, 0.5), PairKind.NN)
    rows.append(VerifyRow("Werner alpha=2/3 equals tetramer n.n. pair", _dev(from_matrix(decoherence.werner(2 / 3)).astuple(), nn.astuple()), 0, EXACT_TOL))
    traj = decoherence.trajectory(2 / 3, 101)
    rows.append(VerifyRow("alpha=2/3 CN(0) = 1/2", traj.rows[0].concurrence, 0.5, EXACT_TOL))
    rows.append(VerifyRow("alpha=2/3 CN sudden death at gamma = 0.75", decoherence.sudden_death_gamma(2 / 3), 0.75, 1e-9))
    rows.append(VerifyRow("alpha=2/3 CN = 0 for gamma >= 0.75", float(traj.concurrences[traj.gammas >= 0.75].max()), 0.0, 0))
    gammas = np.linspace(0, 1, 200)  # 0.75 deliberately off-grid
    signed = [wootters_concurrence(decoherence.apply_dephasing(decoherence.werner(2 / 3), float(g)), signed=True) for g in gammas]
    rows.append(VerifyRow("alpha=2/3 Kraus+Wootters zero at gamma = 0.75", decoherence.first_zero(gammas, signed), 0.75, 1e-6))
    rows.append(VerifyRow("alpha=2/3 Q > 0 for all gamma < 1", _flag(bool(np.all(traj.discords[:-1] > 0))), 0, 0))
    rows.append(VerifyRow("alpha=2/3 Q(gamma=1) = 0", traj.rows[-1].discord, 0.0, 1e-12))
    traj = decoherence.trajectory(1 / 3, 101)
    rows.append(VerifyRow("alpha=1/3 CN = 0 on the whole grid", float(traj.concurrences.max()), 0.0, 0))
    rows.append(VerifyRow("alpha=1/3 Q(gamma=0) = 0.125815", traj.rows[0].discord, 0.125815, NUMERIC_TOL))
    rows.append(VerifyRow("alpha=1/3 Q(gamma=1) = 0", traj.rows[-1].discord, 0.0, 1e-12))
    worst = 0.0
    for alpha in (1 / 3, 2 / 3):
        for g in np.linspace(0, 1, 6):
            num = discord_numeric(decoherence.apply_dephasing(decoherence.werner(alpha), float(g))).Q
            worst = max(worst, abs(num - decoherence.discord_closed(alpha, float(g))))
    rows.append(VerifyRow("dephasing closed-form Q vs Kraus+numeric", worst, 0.0, NUMERIC_TOL))
    return rows


def verify_rows() -> list[VerifyRow]:
    """Every reference check, in a fixed order."""
    return _spectrum_rows() + _state_rows() + _trimer_rows() + _tetramer_rows() + _dephasing_rows()
