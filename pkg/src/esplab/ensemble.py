"""Finite point ensembles and forward trajectories."""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import check_points
from .exceptions import DomainError


@dataclass(frozen=True)
class Provenance:
    alpha: Optional[float] = None
    input_id: Optional[str] = None
    steps: int = 0

    def header(self):
        return f"alpha={self.alpha!r} input={self.input_id} steps={self.steps}"


@dataclass(frozen=True, eq=False)
class StateEnsemble:
    """A finite set of states, one per row of ``points``.

    Row order is part of the identity of an ensemble: propagation maps row
    ``i`` of the initial ensemble to row ``i`` of the result.
    """

    points: np.ndarray
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self):
        P = check_points(self.points, name="ensemble points")
        if np.any(np.abs(P) > 1.0):
            raise DomainError("ensemble points must lie in [-1, 1]^N")
        P.setflags(write=False)
        object.__setattr__(self, "points", P)

    @property
    def dim(self):
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def to_csv(self, path):
        """Write one point per line with provenance in a leading '#' line."""
        from .io import write_text_atomic, format_rows

        text = "# " + self.provenance.header() + "\n" + format_rows(self.points)
        write_text_atomic(path, text)

    @classmethod
    def from_csv(cls, path):
        from .io import read_matrix_csv

        prov = Provenance()
        with open(path, encoding="utf-8") as fh:
            first = fh.readline()
        if first.startswith("#"):
            fields = dict(tok.split("=", 1) for tok in first[1:].split())
            alpha = fields.get("alpha", "None")
            prov = Provenance(
                alpha=None if alpha == "None" else float(alpha),
                input_id=None if fields.get("input") == "None" else fields.get("input"),
                steps=int(fields.get("steps", 0)),
            )
        return cls(read_matrix_csv(path), prov)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States ``x_0 .. x_T`` and, optionally, the read-out ``y_k = <w, x_k>``."""

    states: np.ndarray
    readout: Optional[np.ndarray] = None

    def __len__(self):
        return self.states.shape[0]
