"""Domain state types: residues, CDR loops, antigen-antibody complexes.

Each residue is reduced to a rigid body plus two interaction points: a
backbone proxy (the C-alpha coordinate itself) and a side-chain proxy placed
along the residue frame's local x-axis at a per-type distance. Bulky
aromatics (W, Y, F) reach far, glycine not at all, so residue identity and
orientation both influence interface energies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

AA_ALPHABET = "ACDEFGHIKLMNPQRSTVWY"
N_AA = 20

ROLE_FRAMEWORK = "antibody-framework"
ROLE_ANTIGEN = "antigen"

# Side-chain proxy reach (angstrom) per residue type, local +x direction.
_SC_REACH = {
    "A": 0.5, "C": 0.8, "D": 0.9, "E": 1.4, "F": 1.9, "G": 0.0, "H": 1.5,
    "I": 1.3, "K": 1.7, "L": 1.3, "M": 1.5, "N": 0.9, "P": 0.8, "Q": 1.4,
    "R": 2.0, "S": 0.6, "T": 0.7, "V": 0.9, "W": 2.4, "Y": 2.1,
}
SC_REACH = np.array([_SC_REACH[a] for a in AA_ALPHABET])


@dataclass(frozen=True)
class ResidueState:
    """One amino acid: type index (0..19), C-alpha coordinate, orientation."""

    aa: int
    x: np.ndarray
    orient: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "orient", np.asarray(self.orient, dtype=float))
        if not (0 <= self.aa < N_AA):
            raise ValueError(f"amino acid index out of range: {self.aa}")
        if not np.all(np.isfinite(self.x)):
            raise ValueError("non-finite residue coordinate")

    @property
    def sc_point(self) -> np.ndarray:
        """Side-chain proxy point derived from the residue frame."""
        return self.x + self.orient @ np.array([SC_REACH[self.aa], 0.0, 0.0])

    @property
    def bb_point(self) -> np.ndarray:
        return self.x


@dataclass(frozen=True)
class CdrState:
    """Ordered designable residues, logical indices l+1 .. l+m."""

    residues: tuple[ResidueState, ...]

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(self.residues))
        if len(self.residues) < 1:
            raise ValueError("CDR must contain at least one residue")

    def __len__(self) -> int:
        return len(self.residues)

    @property
    def aa_indices(self) -> np.ndarray:
        return np.array([r.aa for r in self.residues], dtype=int)

    @property
    def coords(self) -> np.ndarray:
        return np.stack([r.x for r in self.residues])

    @property
    def orients(self) -> np.ndarray:
        return np.stack([r.orient for r in self.residues])

    @staticmethod
    def from_arrays(aa: Sequence[int], coords: np.ndarray, orients: np.ndarray) -> "CdrState":
        return CdrState(
            tuple(
                ResidueState(int(a), np.array(x), np.array(o))
                for a, x, o in zip(aa, coords, orients)
            )
        )


@dataclass(frozen=True)
class ComplexInstance:
    """Fixed conditioning context: framework + antigen residues, one CDR span."""

    id: str
    framework: tuple[ResidueState, ...]
    roles: tuple[str, ...]
    cdr_span: tuple[int, int]  # (l, m): CDR occupies logical indices l+1..l+m

    def __post_init__(self):
        object.__setattr__(self, "framework", tuple(self.framework))
        object.__setattr__(self, "roles", tuple(self.roles))
        object.__setattr__(self, "cdr_span", tuple(int(v) for v in self.cdr_span))
        if len(self.framework) != len(self.roles):
            raise ValueError("framework/roles length mismatch")
        if not any(r == ROLE_ANTIGEN for r in self.roles):
            raise ValueError("complex needs at least one antigen residue")

    @property
    def antigen_residues(self) -> tuple[ResidueState, ...]:
        return tuple(
            r for r, role in zip(self.framework, self.roles) if role == ROLE_ANTIGEN
        )

    @property
    def antigen_sites(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """(side-chain proxy, backbone proxy) per antigen residue."""
        return [(r.sc_point, r.bb_point) for r in self.antigen_residues]

    @property
    def anchor_residues(self) -> tuple[ResidueState, ...]:
        return tuple(
            r for r, role in zip(self.framework, self.roles) if role == ROLE_FRAMEWORK
        )

    @property
    def anchor_midpoint(self) -> np.ndarray:
        anchors = self.anchor_residues
        return np.mean([a.x for a in anchors], axis=0)

    @property
    def cdr_length(self) -> int:
        return self.cdr_span[1]


@dataclass(frozen=True)
class Design:
    """A sampled or annealed CDR for one complex, with optional energies."""

    complex_id: str
    cdr: CdrState
    seed: int
    energies: "object | None" = field(default=None)  # EnergyReport, kept untyped to avoid a cycle

    def with_energies(self, report) -> "Design":
        return replace(self, energies=report)


def _apply_rigid_residue(r: ResidueState, rot: np.ndarray, tvec: np.ndarray) -> ResidueState:
    return ResidueState(r.aa, rot @ r.x + tvec, rot @ r.orient)


def apply_rigid(obj, rot: np.ndarray, tvec: np.ndarray):
    """Apply the rigid motion x -> R x + t to every coordinate and frame."""
    rot = np.asarray(rot, dtype=float)
    tvec = np.asarray(tvec, dtype=float)
    if isinstance(obj, ResidueState):
        return _apply_rigid_residue(obj, rot, tvec)
    if isinstance(obj, CdrState):
        return CdrState(tuple(_apply_rigid_residue(r, rot, tvec) for r in obj.residues))
    if isinstance(obj, ComplexInstance):
        return ComplexInstance(
            id=obj.id,
            framework=tuple(_apply_rigid_residue(r, rot, tvec) for r in obj.framework),
            roles=obj.roles,
            cdr_span=obj.cdr_span,
        )
    if isinstance(obj, Design):
        return replace(obj, cdr=apply_rigid(obj.cdr, rot, tvec))
    raise TypeError(f"cannot apply rigid motion to {type(obj).__name__}")


# ---------------------------------------------------------------------------
# JSON-lines serialization. Floats go through Python's shortest-repr encoder,
# which round-trips 64-bit values exactly.

def residue_to_obj(r: ResidueState, role: str | None = None) -> dict:
    obj = {
        "aa": int(r.aa),
        "x": [float(v) for v in r.x],
        "orient": [float(v) for v in r.orient.reshape(9)],
    }
    if role is not None:
        obj = {"role": role, **obj}
    return obj


def residue_from_obj(obj: dict) -> ResidueState:
    return ResidueState(
        int(obj["aa"]),
        np.array(obj["x"], dtype=float),
        np.array(obj["orient"], dtype=float).reshape(3, 3),
    )


def complex_to_obj(cx: ComplexInstance) -> dict:
    return {
        "id": cx.id,
        "residues": [
            residue_to_obj(r, role) for r, role in zip(cx.framework, cx.roles)
        ],
        "cdr_span": list(cx.cdr_span),
    }


def complex_from_obj(obj: dict) -> ComplexInstance:
    residues = [residue_from_obj(r) for r in obj["residues"]]
    roles = [r["role"] for r in obj["residues"]]
    return ComplexInstance(
        id=obj["id"],
        framework=tuple(residues),
        roles=tuple(roles),
        cdr_span=tuple(obj["cdr_span"]),
    )


def design_to_obj(d: Design) -> dict:
    obj = {
        "complex_id": d.complex_id,
        "seed": int(d.seed),
        "residues": [residue_to_obj(r) for r in d.cdr.residues],
    }
    if d.energies is not None:
        obj["energies"] = d.energies.to_obj()
    return obj


def design_from_obj(obj: dict) -> Design:
    from .energy import EnergyReport  # local import to avoid a cycle

    cdr = CdrState(tuple(residue_from_obj(r) for r in obj["residues"]))
    energies = None
    if obj.get("energies") is not None:
        energies = EnergyReport.from_obj(obj["energies"])
    return Design(complex_id=obj["complex_id"], cdr=cdr, seed=obj["seed"], energies=energies)


def dump_jsonl(path, objs: Iterable[dict]) -> None:
    with open(path, "w") as fh:
        for obj in objs:
            fh.write(json.dumps(obj) + "\n")


def load_jsonl(path) -> list[dict]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}: malformed JSON at line {lineno}: {exc}") from exc
    return out
