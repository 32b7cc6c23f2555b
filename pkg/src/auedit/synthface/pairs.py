"""Training-pair construction: same identity, resampled pose/background/AUs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from auedit.aus import AUDelta
from auedit.synthface.render import SceneImage, build_condition_image, render_face
from auedit.synthface.specs import (
    IdentitySpec,
    SceneSpec,
    sample_aus,
    sample_background,
    sample_pose,
)

RESAMPLE_PROB = 0.9


@dataclass
class TrainingPair:
    identity_image: SceneImage
    target_image: SceneImage
    au_delta: AUDelta
    condition_image: SceneImage

    @property
    def identity_spec(self) -> SceneSpec:
        return self.identity_image.provenance

    @property
    def target_spec(self) -> SceneSpec:
        return self.target_image.provenance


def make_pair_specs(identity_spec: IdentitySpec, rng: np.random.Generator) -> tuple[SceneSpec, SceneSpec]:
    """Sample the two scenes of a pair; pose/background each resampled with prob 0.9."""
    pose_a = sample_pose(rng)
    bg_a = sample_background(rng)
    pose_b = sample_pose(rng) if rng.random() < RESAMPLE_PROB else pose_a
    bg_b = sample_background(rng) if rng.random() < RESAMPLE_PROB else bg_a
    aus_a = sample_aus(rng)
    aus_b = sample_aus(rng)
    scene_a = SceneSpec(identity=identity_spec, pose=pose_a, background=bg_a, aus=aus_a)
    scene_b = SceneSpec(identity=identity_spec, pose=pose_b, background=bg_b, aus=aus_b)
    return scene_a, scene_b


def make_pair(identity_spec: IdentitySpec, rng_seed: int) -> TrainingPair:
    """Deterministic training pair: identity image, target, delta, condition image."""
    rng = np.random.default_rng(rng_seed)
    scene_a, scene_b = make_pair_specs(identity_spec, rng)
    identity_image = render_face(scene_a)
    target_image = render_face(scene_b)
    return TrainingPair(
        identity_image=identity_image,
        target_image=target_image,
        au_delta=scene_b.aus - scene_a.aus,
        condition_image=build_condition_image(target_image),
    )
