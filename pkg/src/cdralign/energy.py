"""Synthetic interface energies and the reward quantities derived from them.

A single Lennard-Jones split stands in for a full molecular force field: the
attractive r^-6 branch is always <= 0, the repulsive r^-12 branch >= 0 and
capped so overlapping residues cannot dominate every other signal. Backbone
clashes are double-weighted relative to side-chain clashes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .structures import CdrState, ComplexInstance

SIGMA = 4.0  # contact radius, angstrom
CUTOFF = 12.0  # interactions vanish beyond this distance
SWITCH_ON = 10.0  # cosine taper starts here
REP_CAP = 100.0
MARGIN_EPS = 1e-6


@dataclass(frozen=True)
class EnergyReport:
    """Per-residue and total interface energies for one design."""

    e_att_per_res: np.ndarray
    e_rep_per_res: np.ndarray
    e_att_total: float
    e_rep_total: float
    e_intra: float
    dg_proxy: float

    def to_obj(self) -> dict:
        return {
            "e_att_per_res": [float(v) for v in self.e_att_per_res],
            "e_rep_per_res": [float(v) for v in self.e_rep_per_res],
            "e_att_total": self.e_att_total,
            "e_rep_total": self.e_rep_total,
            "e_intra": self.e_intra,
            "dg_proxy": self.dg_proxy,
        }

    @staticmethod
    def from_obj(obj: dict) -> "EnergyReport":
        return EnergyReport(
            e_att_per_res=np.array(obj["e_att_per_res"], dtype=float),
            e_rep_per_res=np.array(obj["e_rep_per_res"], dtype=float),
            e_att_total=float(obj["e_att_total"]),
            e_rep_total=float(obj["e_rep_total"]),
            e_intra=float(obj["e_intra"]),
            dg_proxy=float(obj["dg_proxy"]),
        )


@dataclass(frozen=True)
class RewardVector:
    """Sign-flipped energy totals: lower energy means higher reward."""

    r_att: float
    r_rep: float


def _switch(d: np.ndarray) -> np.ndarray:
    """Smooth taper: 1 below SWITCH_ON, cosine ramp to 0 at CUTOFF."""
    out = np.ones_like(d)
    ramp = (d - SWITCH_ON) / (CUTOFF - SWITCH_ON)
    mask = d > SWITCH_ON
    out[mask] = 0.5 * (1.0 + np.cos(np.pi * np.clip(ramp[mask], 0.0, 1.0)))
    out[d >= CUTOFF] = 0.0
    return out


def pair_potential(d):
    """Split LJ potential at distance ``d``: (attraction <= 0, repulsion >= 0)."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("pair_potential requires strictly positive distances")
    inv6 = (SIGMA / d) ** 6
    sw = _switch(d)
    ep_att = -inv6 * sw
    ep_rep = np.minimum(inv6 * inv6, REP_CAP) * sw
    if d.ndim == 0:
        return float(ep_att), float(ep_rep)
    return ep_att, ep_rep


def _dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)


def cdr_ag_energies(cx: ComplexInstance, cdr: CdrState) -> EnergyReport:
    """Interface and intra-CDR energies for a design against its antigen.

    Attraction counts only the CDR side-chain proxy against antigen points;
    repulsion also counts the CDR backbone proxy with weight 2.
    """
    sites = cx.antigen_sites
    ag_points = np.concatenate(
        [np.stack([sc for sc, _ in sites]), np.stack([bb for _, bb in sites])]
    )
    sc = np.stack([r.sc_point for r in cdr.residues])
    bb = np.stack([r.bb_point for r in cdr.residues])

    att_sc, rep_sc = pair_potential(np.maximum(_dists(sc, ag_points), 1e-9))
    _, rep_bb = pair_potential(np.maximum(_dists(bb, ag_points), 1e-9))

    e_att = att_sc.sum(axis=1)
    e_rep = rep_sc.sum(axis=1) + 2.0 * rep_bb.sum(axis=1)

    # CDR-internal proxy over non-adjacent residue pairs, side-chain points.
    e_intra = 0.0
    m = len(cdr)
    for i in range(m):
        for j in range(i + 2, m):
            d = max(float(np.linalg.norm(sc[i] - sc[j])), 1e-9)
            a, r = pair_potential(d)
            e_intra += a + r

    e_att_total = float(e_att.sum())
    e_rep_total = float(e_rep.sum())
    return EnergyReport(
        e_att_per_res=e_att,
        e_rep_per_res=e_rep,
        e_att_total=e_att_total,
        e_rep_total=e_rep_total,
        e_intra=float(e_intra),
        dg_proxy=e_att_total + e_rep_total,
    )


def rewards(report: EnergyReport) -> RewardVector:
    return RewardVector(r_att=-report.e_att_total, r_rep=-report.e_rep_total)


def collective_reward(r: RewardVector, w: np.ndarray) -> float:
    """Weighted scalarization w_att * r_att + w_rep * r_rep."""
    w = np.asarray(w, dtype=float)
    if w.shape != (2,) or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
        raise ConfigError(f"weights must be nonnegative and sum to 1, got {w}")
    return float(w[0] * r.r_att + w[1] * r.r_rep)


def reward_margin(rhat_w: float, rhat_l: float) -> float:
    """Log of the collective-reward gap, clamped away from log(0)."""
    if rhat_w <= rhat_l:
        raise ValueError(
            f"winner reward must exceed loser reward ({rhat_w} <= {rhat_l})"
        )
    return math.log(max(rhat_w - rhat_l, MARGIN_EPS))


ENERGY_CSV_HEADER = [
    "complex_id", "design_seed", "e_att", "e_rep", "e_intra", "dg_proxy",
    "r_att", "r_rep", "r_hat",
]


def write_energy_csv(path, rows: list[dict]) -> None:
    """Rows need the keys in ENERGY_CSV_HEADER."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=ENERGY_CSV_HEADER)
        writer.writeheader()
        writer.writerows(rows)
