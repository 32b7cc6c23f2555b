"""Scene parameters: identity geometry, pose proxies, background patterns.

A SceneSpec is the full generative description of one synthetic face image
and doubles as the oracle's ground truth. All bounds here are renderer-safe:
every feature stays inside the face ellipse and the ellipse stays inside the
64x64 canvas at any pose within bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from auedit.aus import AUVector

IMAGE_SIZE = 64

# Per-field renderer-safe bounds. Offsets are pixels, roll radians, colors [0,1].
IDENTITY_BOUNDS = {
    "face_width": (26.0, 36.0),
    "face_height": (36.0, 44.0),
    "eye_spacing": (9.0, 15.0),
    "eye_size": (2.5, 4.0),
    "nose_length": (4.5, 6.5),
}
POSE_BOUNDS = {
    "yaw_offset": (-5.0, 5.0),
    "pitch_offset": (-5.0, 5.0),
    "roll": (-0.35, 0.35),
    "scale": (0.8, 1.2),
}
BACKGROUND_KINDS = ("solid", "vertical-gradient", "two-band", "checker")


class SpecValidationError(ValueError):
    """Raised with the offending field name when a spec is out of bounds."""


def _check_range(name: str, value: float, lo: float, hi: float):
    if not np.isfinite(value):
        raise SpecValidationError(f"{name} is not finite: {value!r}")
    if not (lo <= value <= hi):
        raise SpecValidationError(f"{name}={value:g} outside renderer-safe bounds [{lo}, {hi}]")


def _check_color(name: str, color) -> tuple[float, float, float]:
    arr = np.asarray(color, dtype=np.float64).reshape(-1)
    if arr.shape != (3,):
        raise SpecValidationError(f"{name} must be a 3-channel color, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0:
        raise SpecValidationError(f"{name} components must lie in [0, 1], got {arr.tolist()}")
    return (float(arr[0]), float(arr[1]), float(arr[2]))


@dataclass(frozen=True)
class IdentitySpec:
    face_width: float
    face_height: float
    eye_spacing: float
    eye_size: float
    nose_length: float
    skin_tone: tuple[float, float, float]
    hair_tone: tuple[float, float, float]
    identity_id: int

    def __post_init__(self):
        for name, (lo, hi) in IDENTITY_BOUNDS.items():
            _check_range(name, getattr(self, name), lo, hi)
        object.__setattr__(self, "skin_tone", _check_color("skin_tone", self.skin_tone))
        object.__setattr__(self, "hair_tone", _check_color("hair_tone", self.hair_tone))
        if int(self.identity_id) != self.identity_id or self.identity_id < 0:
            raise SpecValidationError(f"identity_id must be a non-negative integer, got {self.identity_id!r}")
        # Cross-field: eyes must fit inside the ellipse at eye height.
        half_w = self.face_width / 2.0
        if self.eye_spacing / 2.0 + self.eye_size + 0.5 > 0.9 * half_w:
            raise SpecValidationError(
                f"eye_spacing={self.eye_spacing:g} with eye_size={self.eye_size:g} "
                f"does not fit inside face_width={self.face_width:g}"
            )

    def geometric_fields(self) -> tuple[float, ...]:
        return (self.face_width, self.face_height, self.eye_spacing, self.eye_size, self.nose_length)

    def to_dict(self) -> dict[str, Any]:
        return {
            "face_width": self.face_width,
            "face_height": self.face_height,
            "eye_spacing": self.eye_spacing,
            "eye_size": self.eye_size,
            "nose_length": self.nose_length,
            "skin_tone": list(self.skin_tone),
            "hair_tone": list(self.hair_tone),
            "identity_id": self.identity_id,
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "IdentitySpec":
        return IdentitySpec(
            face_width=d["face_width"],
            face_height=d["face_height"],
            eye_spacing=d["eye_spacing"],
            eye_size=d["eye_size"],
            nose_length=d["nose_length"],
            skin_tone=tuple(d["skin_tone"]),
            hair_tone=tuple(d["hair_tone"]),
            identity_id=int(d["identity_id"]),
        )


@dataclass(frozen=True)
class PoseSpec:
    yaw_offset: float = 0.0
    pitch_offset: float = 0.0
    roll: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        for name, (lo, hi) in POSE_BOUNDS.items():
            _check_range(name, getattr(self, name), lo, hi)

    def as_array(self) -> np.ndarray:
        return np.array([self.yaw_offset, self.pitch_offset, self.roll, self.scale])

    def to_dict(self) -> dict[str, Any]:
        return {
            "yaw_offset": self.yaw_offset,
            "pitch_offset": self.pitch_offset,
            "roll": self.roll,
            "scale": self.scale,
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "PoseSpec":
        return PoseSpec(d["yaw_offset"], d["pitch_offset"], d["roll"], d["scale"])

    @staticmethod
    def clamped(yaw_offset: float, pitch_offset: float, roll: float, scale: float) -> "PoseSpec":
        """Build a PoseSpec from raw estimates, clamping into the legal box."""
        (ylo, yhi), (plo, phi), (rlo, rhi), (slo, shi) = (
            POSE_BOUNDS["yaw_offset"],
            POSE_BOUNDS["pitch_offset"],
            POSE_BOUNDS["roll"],
            POSE_BOUNDS["scale"],
        )
        return PoseSpec(
            float(np.clip(yaw_offset, ylo, yhi)),
            float(np.clip(pitch_offset, plo, phi)),
            float(np.clip(roll, rlo, rhi)),
            float(np.clip(scale, slo, shi)),
        )


@dataclass(frozen=True)
class BackgroundSpec:
    kind: str = "solid"
    colors: tuple = ((0.5, 0.5, 0.5), (0.5, 0.5, 0.5))
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in BACKGROUND_KINDS:
            raise SpecValidationError(f"kind={self.kind!r} not one of {BACKGROUND_KINDS}")
        colors = tuple(self.colors)
        if len(colors) == 1:
            colors = (colors[0], colors[0])
        if len(colors) != 2:
            raise SpecValidationError(f"colors must hold 1 or 2 entries, got {len(colors)}")
        colors = tuple(_check_color(f"colors[{i}]", c) for i, c in enumerate(colors))
        object.__setattr__(self, "colors", colors)
        if not np.isfinite(self.phase):
            raise SpecValidationError(f"phase is not finite: {self.phase!r}")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "colors": [list(c) for c in self.colors], "phase": self.phase}

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "BackgroundSpec":
        return BackgroundSpec(d["kind"], tuple(tuple(c) for c in d["colors"]), d["phase"])


@dataclass(frozen=True)
class SceneSpec:
    identity: IdentitySpec
    pose: PoseSpec = field(default_factory=PoseSpec)
    background: BackgroundSpec = field(default_factory=BackgroundSpec)
    aus: AUVector = field(default_factory=AUVector)

    def to_dict(self) -> dict[str, Any]:
        return {
            "identity": self.identity.to_dict(),
            "pose": self.pose.to_dict(),
            "background": self.background.to_dict(),
            "aus": self.aus.as_list(),
        }

    @staticmethod
    def from_dict(d: dict[str, Any]) -> "SceneSpec":
        return SceneSpec(
            identity=IdentitySpec.from_dict(d["identity"]),
            pose=PoseSpec.from_dict(d["pose"]),
            background=BackgroundSpec.from_dict(d["background"]),
            aus=AUVector(d["aus"]),
        )


def sample_identity(rng: np.random.Generator, identity_id: int) -> IdentitySpec:
    def u(lo, hi):
        return float(rng.uniform(lo, hi))

    face_width = u(*IDENTITY_BOUNDS["face_width"])
    eye_size = u(*IDENTITY_BOUNDS["eye_size"])
    # Keep the cross-field constraint satisfied by construction.
    max_spacing = min(IDENTITY_BOUNDS["eye_spacing"][1], 2 * (0.9 * face_width / 2 - eye_size - 0.6))
    return IdentitySpec(
        face_width=face_width,
        face_height=u(*IDENTITY_BOUNDS["face_height"]),
        eye_spacing=u(IDENTITY_BOUNDS["eye_spacing"][0], max_spacing),
        eye_size=eye_size,
        nose_length=u(*IDENTITY_BOUNDS["nose_length"]),
        skin_tone=tuple(rng.uniform(0.45, 0.95, size=3).tolist()),
        hair_tone=tuple(rng.uniform(0.05, 0.85, size=3).tolist()),
        identity_id=identity_id,
    )


def sample_pose(rng: np.random.Generator) -> PoseSpec:
    return PoseSpec(
        yaw_offset=float(rng.uniform(*POSE_BOUNDS["yaw_offset"])),
        pitch_offset=float(rng.uniform(*POSE_BOUNDS["pitch_offset"])),
        roll=float(rng.uniform(*POSE_BOUNDS["roll"])),
        scale=float(rng.uniform(*POSE_BOUNDS["scale"])),
    )


def sample_background(rng: np.random.Generator) -> BackgroundSpec:
    kind = BACKGROUND_KINDS[int(rng.integers(len(BACKGROUND_KINDS)))]
    colors = tuple(tuple(rng.uniform(0.0, 1.0, size=3).tolist()) for _ in range(2))
    return BackgroundSpec(kind=kind, colors=colors, phase=float(rng.uniform(0.0, 1.0)))


def sample_aus(rng: np.random.Generator) -> AUVector:
    # Sparse activations: most AUs near zero, a few strongly active, mirroring
    # the zero-centered delta statistics the conditioning relies on.
    values = np.zeros(12)
    active = rng.random(12) < 0.45
    values[active] = rng.uniform(0.0, 5.0, size=int(active.sum()))
    return AUVector(values)


def sample_scene(rng: np.random.Generator, identity: IdentitySpec) -> SceneSpec:
    return SceneSpec(
        identity=identity,
        pose=sample_pose(rng),
        background=sample_background(rng),
        aus=sample_aus(rng),
    )
