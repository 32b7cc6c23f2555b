"""Action-unit intensity vectors and the edit-delta grammar.

The lab works with 12 pseudo action units, each tied to one documented
geometric deformation of the synthetic renderer (see synthface.geometry).
Absolute intensities live on a [0, 5] scale; edit deltas are signed and
capped at magnitude 10 at the API boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

AU_NAMES = (
    "AU1",
    "AU2",
    "AU4",
    "AU6",
    "AU9",
    "AU12",
    "AU15",
    "AU17",
    "AU20",
    "AU25",
    "AU26",
    "AU43",
)
AU_COUNT = len(AU_NAMES)
AU_INDEX = {name: i for i, name in enumerate(AU_NAMES)}

AU_LABELS = {
    "AU1": "Inner Brow Raiser",
    "AU2": "Outer Brow Raiser",
    "AU4": "Brow Lowerer",
    "AU6": "Cheek Raiser",
    "AU9": "Nose Wrinkler",
    "AU12": "Lip Corner Puller",
    "AU15": "Lip Corner Depressor",
    "AU17": "Chin Raiser",
    "AU20": "Lip Stretcher",
    "AU25": "Lips Part",
    "AU26": "Jaw Drop",
    "AU43": "Eyes Closed",
}

AU_MIN, AU_MAX = 0.0, 5.0
DELTA_CAP = 10.0


class AUValidationError(ValueError):
    """Raised when an AU vector or delta violates its contract."""


def _as_float12(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if arr.shape != (AU_COUNT,):
        raise AUValidationError(f"{what} must have exactly {AU_COUNT} components, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise AUValidationError(f"{what} contains non-finite components")
    return arr


@dataclass(frozen=True)
class AUVector:
    """Absolute AU intensities, clamped componentwise to [0, 5] on construction."""

    values: np.ndarray = field(default_factory=lambda: np.zeros(AU_COUNT))

    def __post_init__(self):
        arr = _as_float12(self.values, "AUVector")
        object.__setattr__(self, "values", np.clip(arr, AU_MIN, AU_MAX))

    def __getitem__(self, au: str | int) -> float:
        idx = AU_INDEX[au] if isinstance(au, str) else au
        return float(self.values[idx])

    def __sub__(self, other: "AUVector") -> "AUDelta":
        return AUDelta(self.values - other.values)

    def as_list(self) -> list[float]:
        return [float(v) for v in self.values]


@dataclass(frozen=True)
class AUDelta:
    """Signed per-AU intensity changes; positive amplifies, negative suppresses."""

    values: np.ndarray = field(default_factory=lambda: np.zeros(AU_COUNT))

    def __post_init__(self):
        object.__setattr__(self, "values", _as_float12(self.values, "AUDelta"))

    def __getitem__(self, au: str | int) -> float:
        idx = AU_INDEX[au] if isinstance(au, str) else au
        return float(self.values[idx])

    def is_zero(self) -> bool:
        return bool(np.all(self.values == 0.0))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def check_cap(self, cap: float = DELTA_CAP) -> "AUDelta":
        """Enforce the inference-time magnitude cap; raises naming the worst AU."""
        bad = np.flatnonzero(np.abs(self.values) > cap)
        if bad.size:
            name = AU_NAMES[int(bad[np.argmax(np.abs(self.values[bad]))])]
            raise AUValidationError(
                f"delta for {name} is {self.values[bad[0]]:+g}, exceeds magnitude cap {cap}"
            )
        return self

    def as_list(self) -> list[float]:
        return [float(v) for v in self.values]


_DELTA_TERM = re.compile(r"^(AU\d+)=([+-]?\d+(?:\.\d+)?)$")


def parse_delta(text: str) -> AUDelta:
    """Parse the edit grammar ``"AU4=-6,AU12=+2"``; unlisted AUs default to 0."""
    values = np.zeros(AU_COUNT)
    text = text.strip()
    if not text:
        return AUDelta(values)
    for term in text.split(","):
        term = term.strip()
        m = _DELTA_TERM.match(term)
        if m is None:
            raise AUValidationError(f"bad delta term {term!r}; expected e.g. AU12=+3 or AU4=-6")
        name, val = m.group(1), float(m.group(2))
        if name not in AU_INDEX:
            raise AUValidationError(f"unknown action unit {name!r}; known: {', '.join(AU_NAMES)}")
        values[AU_INDEX[name]] = val
    return AUDelta(values)


def format_delta(delta: AUDelta) -> str:
    """Inverse of parse_delta for the nonzero components."""
    parts = [
        f"{AU_NAMES[i]}={delta.values[i]:+g}"
        for i in range(AU_COUNT)
        if delta.values[i] != 0.0
    ]
    return ",".join(parts)
