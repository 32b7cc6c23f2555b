from auedit.synthface.dataset import (
    DatasetManifest,
    PairRecord,
    generate_dataset,
    load_manifest,
)
from auedit.synthface.geometry import AU_SLOPES, FaceGeometry, face_geometry
from auedit.synthface.pairs import TrainingPair, make_pair
from auedit.synthface.render import (
    SceneImage,
    build_condition_image,
    load_scene_image,
    render_face,
    save_scene_image,
)
from auedit.synthface.specs import (
    BackgroundSpec,
    IdentitySpec,
    PoseSpec,
    SceneSpec,
    SpecValidationError,
    sample_background,
    sample_identity,
    sample_pose,
    sample_scene,
)

__all__ = [
    "AU_SLOPES",
    "FaceGeometry",
    "face_geometry",
    "IdentitySpec",
    "PoseSpec",
    "BackgroundSpec",
    "SceneSpec",
    "SpecValidationError",
    "sample_identity",
    "sample_pose",
    "sample_background",
    "sample_scene",
    "SceneImage",
    "render_face",
    "build_condition_image",
    "save_scene_image",
    "load_scene_image",
    "TrainingPair",
    "make_pair",
    "generate_dataset",
    "load_manifest",
    "DatasetManifest",
    "PairRecord",
]
