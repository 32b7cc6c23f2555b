"""Analytic face geometry: the documented linear map from AU intensity to deformation.

Every pseudo-AU drives exactly one geometric quantity, affinely in intensity.
Displacement slopes are in face-frame pixels per intensity unit (at pose scale
1.0); opacity slopes are dimensionless per unit. The face frame has its origin
at the face-ellipse center, x to the right, y downward; image coordinates are
obtained by rotating by the pose roll, scaling, and translating to the
ellipse center.

AU -> deformation:
  AU1   inner brow endpoint raised        (y -= AU1 * 0.6)
  AU2   outer brow endpoint raised        (y -= AU2 * 0.6)
  AU4   whole brow lowered                (y += AU4 * 0.7)
  AU6   lower eyelid raised               (y -= AU6 * 0.3)
  AU9   nose-wrinkle line opacity         (opacity = AU9 * 0.2)
  AU12  mouth corners curved upward       (y -= AU12 * 0.8)
  AU15  mouth corners curved downward     (y += AU15 * 0.8)
  AU17  chin crease raised                (y -= AU17 * 0.5, opacity = AU17 * 0.2)
  AU20  mouth corners stretched outward   (|x| += AU20 * 0.7)
  AU25  lips parted                       (gap = AU25 * 0.5)
  AU26  jaw dropped, lower lip down       (y += AU26 * 0.7)
  AU43  upper eyelid closed               (y += AU43 * 0.4 * eye aperture half-height)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from auedit.synthface.specs import IMAGE_SIZE, SceneSpec

AU_SLOPES = {
    "AU1": 0.6,
    "AU2": 0.6,
    "AU4": 0.7,
    "AU6": 0.3,
    "AU9": 0.2,
    "AU12": 0.8,
    "AU15": 0.8,
    "AU17": 0.5,
    "AU20": 0.7,
    "AU25": 0.5,
    "AU26": 0.7,
    "AU43": 0.4,  # fraction of the eye aperture half-height per unit
}

N_CHIN_LANDMARKS = 14


@dataclass(frozen=True)
class FaceGeometry:
    """All rendered keypoints/quantities, in face-frame coordinates.

    Fields suffixed _l/_r are left/right of the image (negative/positive x).
    """

    half_width: float
    half_height: float
    brow_inner_l: tuple[float, float]
    brow_outer_l: tuple[float, float]
    brow_inner_r: tuple[float, float]
    brow_outer_r: tuple[float, float]
    eye_center_l: tuple[float, float]
    eye_center_r: tuple[float, float]
    eye_half_w: float
    eye_half_h: float
    upper_lid_y: float
    lower_lid_y: float
    nose_top: tuple[float, float]
    nose_tip: tuple[float, float]
    wrinkle_y: float
    wrinkle_opacity: float
    mouth_corner_l: tuple[float, float]
    mouth_corner_r: tuple[float, float]
    mouth_center_y: float
    upper_lip_mid_y: float
    lower_lip_mid_y: float
    chin_crease_y: float
    chin_crease_opacity: float
    hair_line_y: float


def face_geometry(spec: SceneSpec) -> FaceGeometry:
    ident, aus = spec.identity, spec.aus
    a = ident.face_width / 2.0
    b = ident.face_height / 2.0
    s = AU_SLOPES

    # Brows
    brow_y = -0.40 * b + s["AU4"] * aus["AU4"]
    inner_x = 0.28 * ident.eye_spacing
    outer_x = min(0.78 * ident.eye_spacing, 0.80 * a)
    inner_y = brow_y - s["AU1"] * aus["AU1"]
    outer_y = brow_y - s["AU2"] * aus["AU2"]

    # Eyes
    eye_y = -0.16 * b
    eye_x = ident.eye_spacing / 2.0
    eye_half_h = 0.6 * ident.eye_size
    upper_lid_y = eye_y - eye_half_h + s["AU43"] * eye_half_h * aus["AU43"]
    lower_lid_y = eye_y + eye_half_h - s["AU6"] * aus["AU6"]

    # Nose
    nose_top_y = -0.05 * b
    nose_tip_y = nose_top_y + ident.nose_length
    wrinkle_y = nose_top_y + 0.3 * ident.nose_length

    # Mouth
    mouth_y = 0.45 * b
    corner_dy = -s["AU12"] * aus["AU12"] + s["AU15"] * aus["AU15"]
    corner_x = 0.32 * a + s["AU20"] * aus["AU20"]
    gap = s["AU25"] * aus["AU25"]
    upper_lip_mid_y = mouth_y - gap / 2.0
    lower_lip_mid_y = mouth_y + gap / 2.0 + s["AU26"] * aus["AU26"]

    # Chin crease
    crease_y = 0.72 * b - s["AU17"] * aus["AU17"]

    return FaceGeometry(
        half_width=a,
        half_height=b,
        brow_inner_l=(-inner_x, inner_y),
        brow_outer_l=(-outer_x, outer_y),
        brow_inner_r=(inner_x, inner_y),
        brow_outer_r=(outer_x, outer_y),
        eye_center_l=(-eye_x, eye_y),
        eye_center_r=(eye_x, eye_y),
        eye_half_w=ident.eye_size,
        eye_half_h=eye_half_h,
        upper_lid_y=upper_lid_y,
        lower_lid_y=lower_lid_y,
        nose_top=(0.0, nose_top_y),
        nose_tip=(0.0, nose_tip_y),
        wrinkle_y=wrinkle_y,
        wrinkle_opacity=s["AU9"] * aus["AU9"],
        mouth_corner_l=(-corner_x, mouth_y + corner_dy),
        mouth_corner_r=(corner_x, mouth_y + corner_dy),
        mouth_center_y=mouth_y,
        upper_lip_mid_y=upper_lip_mid_y,
        lower_lip_mid_y=lower_lip_mid_y,
        chin_crease_y=crease_y,
        chin_crease_opacity=s["AU17"] * aus["AU17"] * 0.4,
        hair_line_y=-0.62 * b,
    )


def face_to_image(spec: SceneSpec, points: np.ndarray) -> np.ndarray:
    """Map face-frame points (N, 2) to image pixel coordinates (x, y)."""
    pose = spec.pose
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    c, sn = np.cos(pose.roll), np.sin(pose.roll)
    x = pose.scale * (c * pts[:, 0] - sn * pts[:, 1])
    y = pose.scale * (sn * pts[:, 0] + c * pts[:, 1])
    cx = IMAGE_SIZE / 2.0 + pose.yaw_offset
    cy = IMAGE_SIZE / 2.0 + pose.pitch_offset
    return np.stack([x + cx, y + cy], axis=1)


def chin_landmarks(spec: SceneSpec) -> np.ndarray:
    """The 14 landmarks along the lower face-ellipse contour, left to right."""
    geo_a = spec.identity.face_width / 2.0
    geo_b = spec.identity.face_height / 2.0
    # theta from pi to 0 walks the y>0 (lower) half left to right.
    theta = np.pi - np.arange(N_CHIN_LANDMARKS) * np.pi / (N_CHIN_LANDMARKS - 1)
    pts = np.stack([geo_a * np.cos(theta), geo_b * np.sin(theta)], axis=1)
    return face_to_image(spec, pts)


def face_ellipse_mask(spec: SceneSpec, size: int = IMAGE_SIZE) -> np.ndarray:
    """Boolean mask of the analytic face-ellipse region on the pixel grid."""
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    pose = spec.pose
    cx = size / 2.0 + pose.yaw_offset
    cy = size / 2.0 + pose.pitch_offset
    u = xs - cx
    v = ys - cy
    c, sn = np.cos(pose.roll), np.sin(pose.roll)
    px = (c * u + sn * v) / pose.scale
    py = (-sn * u + c * v) / pose.scale
    a = spec.identity.face_width / 2.0
    b = spec.identity.face_height / 2.0
    return (px / a) ** 2 + (py / b) ** 2 <= 1.0
