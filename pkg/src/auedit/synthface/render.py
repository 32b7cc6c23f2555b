"""Procedural face renderer and conditional-image builder.

Rendering is a pure function of the SceneSpec: all features are evaluated as
analytic regions in the face frame on the pixel grid, so identical specs give
bit-identical images and the face mask equals the analytic ellipse region.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image, PngImagePlugin

from auedit.synthface.geometry import (
    FaceGeometry,
    chin_landmarks,
    face_ellipse_mask,
    face_geometry,
)
from auedit.synthface.specs import IMAGE_SIZE, SceneSpec

# Fixed palette for non-skin features.
SCLERA = np.array([0.93, 0.93, 0.96])
PUPIL = np.array([0.08, 0.06, 0.05])
LASH = np.array([0.10, 0.08, 0.06])
LIP = np.array([0.62, 0.22, 0.22])
MOUTH_INTERIOR = np.array([0.22, 0.05, 0.05])
CONTOUR_COLOR = np.array([1.0, 1.0, 1.0])  # 1-px pure white stroke

BROW_HALF_THICK = 0.8
NOSE_HALF_THICK = 0.45
LIP_HALF_THICK = 0.7
LINE_HALF_THICK = 0.5


class RenderError(ValueError):
    pass


@dataclass
class SceneImage:
    """An HxWx3 float image in [0,1] plus renderer-side annotations."""

    pixels: np.ndarray
    provenance: SceneSpec | None = None
    face_mask: np.ndarray | None = None
    chin_landmarks: np.ndarray | None = None

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.float64)
        if px.ndim != 3 or px.shape[2] != 3:
            raise RenderError(f"pixels must be HxWx3, got {px.shape}")
        if not np.all(np.isfinite(px)) or px.min() < 0.0 or px.max() > 1.0:
            raise RenderError("pixel values must be finite and within [0, 1]")
        self.pixels = px

    @property
    def size(self) -> int:
        return self.pixels.shape[0]

    def copy(self) -> "SceneImage":
        return SceneImage(
            pixels=self.pixels.copy(),
            provenance=self.provenance,
            face_mask=None if self.face_mask is None else self.face_mask.copy(),
            chin_landmarks=None if self.chin_landmarks is None else self.chin_landmarks.copy(),
        )


def _background_pixels(spec: SceneSpec, size: int) -> np.ndarray:
    bg = spec.background
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    c0 = np.asarray(bg.colors[0])
    c1 = np.asarray(bg.colors[1])
    if bg.kind == "solid":
        img = np.broadcast_to(c0, (size, size, 3)).copy()
    elif bg.kind == "vertical-gradient":
        t = np.clip(ys / (size - 1) + (bg.phase - 0.5), 0.0, 1.0)[..., None]
        img = (1.0 - t) * c0 + t * c1
    elif bg.kind == "two-band":
        split = size * (0.25 + 0.5 * (bg.phase % 1.0))
        img = np.where((ys < split)[..., None], c0, c1)
    elif bg.kind == "checker":
        cell = 8.0
        par = (np.floor((xs + bg.phase * cell) / cell) + np.floor(ys / cell)) % 2
        img = np.where((par == 0)[..., None], c0, c1)
    else:  # pragma: no cover - guarded by BackgroundSpec validation
        raise RenderError(f"unknown background kind {bg.kind!r}")
    return np.ascontiguousarray(img, dtype=np.float64)


def _seg_dist2(px, py, p0, p1):
    """Squared distance from each grid point to segment p0-p1 (face frame)."""
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return (px - p0[0]) ** 2 + (py - p0[1]) ** 2
    t = np.clip(((px - p0[0]) * dx + (py - p0[1]) * dy) / L2, 0.0, 1.0)
    return (px - p0[0] - t * dx) ** 2 + (py - p0[1] - t * dy) ** 2


def render_face(spec: SceneSpec, size: int = IMAGE_SIZE) -> SceneImage:
    """Render a SceneSpec deterministically; populates mask and chin landmarks."""
    geo: FaceGeometry = face_geometry(spec)
    img = _background_pixels(spec, size)

    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    pose = spec.pose
    cx = size / 2.0 + pose.yaw_offset
    cy = size / 2.0 + pose.pitch_offset
    u, v = xs - cx, ys - cy
    c, sn = np.cos(pose.roll), np.sin(pose.roll)
    px = (c * u + sn * v) / pose.scale
    py = (-sn * u + c * v) / pose.scale

    a, b = geo.half_width, geo.half_height
    mask = (px / a) ** 2 + (py / b) ** 2 <= 1.0

    skin = np.asarray(spec.identity.skin_tone)
    hair = np.asarray(spec.identity.hair_tone)

    def paint(region: np.ndarray, color: np.ndarray, opacity: float = 1.0):
        region = region & mask
        if opacity >= 1.0:
            img[region] = color
        elif opacity > 0.0:
            img[region] = (1.0 - opacity) * img[region] + opacity * color

    paint(mask, skin)
    paint(py <= geo.hair_line_y, hair)

    # Chin crease (position and opacity both linear in AU17)
    crease = (np.abs(py - geo.chin_crease_y) <= LINE_HALF_THICK) & (np.abs(px) <= 0.20 * a)
    paint(crease, skin * 0.6, min(1.0, geo.chin_crease_opacity))

    # Nose line + wrinkle
    nose = (np.abs(px) <= NOSE_HALF_THICK) & (py >= geo.nose_top[1]) & (py <= geo.nose_tip[1])
    paint(nose, skin * 0.72)
    wrinkle = (np.abs(py - geo.wrinkle_y) <= LINE_HALF_THICK) & (np.abs(px) <= 2.4)
    paint(wrinkle, skin * 0.55, min(1.0, geo.wrinkle_opacity))

    # Brows
    for p0, p1 in ((geo.brow_inner_l, geo.brow_outer_l), (geo.brow_inner_r, geo.brow_outer_r)):
        paint(_seg_dist2(px, py, p0, p1) <= BROW_HALF_THICK**2, hair * 0.55)

    # Eyes: sclera clipped by lids, pupil, lash line following the upper lid
    for ex, ey in (geo.eye_center_l, geo.eye_center_r):
        in_eye = ((px - ex) / geo.eye_half_w) ** 2 + ((py - ey) / geo.eye_half_h) ** 2 <= 1.0
        open_band = (py >= geo.upper_lid_y) & (py <= geo.lower_lid_y)
        paint(in_eye & open_band, SCLERA)
        pupil = (px - ex) ** 2 + (py - ey) ** 2 <= (0.38 * geo.eye_half_w * 2 / 2) ** 2
        paint(pupil & open_band & in_eye, PUPIL)
        lash = (np.abs(py - geo.upper_lid_y) <= 0.4) & (np.abs(px - ex) <= geo.eye_half_w)
        paint(lash, LASH)

    # Mouth: corner-anchored parabolas for the two lips
    cx_m = geo.mouth_corner_r[0]
    corner_y = geo.mouth_corner_r[1]
    rel = np.clip(px / cx_m, -1.0, 1.0)
    upper = geo.upper_lip_mid_y + (corner_y - geo.upper_lip_mid_y) * rel**2
    lower = geo.lower_lip_mid_y + (corner_y - geo.lower_lip_mid_y) * rel**2
    in_mouth_x = np.abs(px) <= cx_m
    paint(in_mouth_x & (py > upper) & (py < lower), MOUTH_INTERIOR)
    paint(in_mouth_x & (np.abs(py - upper) <= LIP_HALF_THICK), LIP)
    paint(in_mouth_x & (np.abs(py - lower) <= LIP_HALF_THICK), LIP)

    img = np.clip(img, 0.0, 1.0)
    return SceneImage(
        pixels=img,
        provenance=spec,
        face_mask=mask,
        chin_landmarks=chin_landmarks(spec),
    )


def rasterize_polyline(points: np.ndarray, size: int) -> set[tuple[int, int]]:
    """Bresenham rasterization of a point chain; returns the set of (row, col) pixels."""
    pts = np.rint(np.asarray(points)).astype(int)
    pixels: set[tuple[int, int]] = set()
    for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
        dx, dy = abs(x1 - x0), -abs(y1 - y0)
        sx = 1 if x0 < x1 else -1
        sy = 1 if y0 < y1 else -1
        err = dx + dy
        x, y = x0, y0
        while True:
            if 0 <= y < size and 0 <= x < size:
                pixels.add((y, x))
            if x == x1 and y == y1:
                break
            e2 = 2 * err
            if e2 >= dy:
                err += dy
                x += sx
            if e2 <= dx:
                err += dx
                y += sy
    return pixels


def build_condition_image(img: SceneImage) -> SceneImage:
    """Zero the face region and draw the chin contour as a 1-px white polyline."""
    if img.face_mask is None or img.chin_landmarks is None:
        raise RenderError("condition image needs face_mask and chin_landmarks")
    out = img.copy()
    out.pixels[img.face_mask] = 0.0
    for row, col in rasterize_polyline(img.chin_landmarks, out.size):
        out.pixels[row, col] = CONTOUR_COLOR
    return out


# --- lossless 8-bit PNG round trip with provenance sidecar metadata ---

PROVENANCE_KEY = "auedit-scene-spec"


def to_uint8(pixels: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(pixels * 255.0), 0, 255).astype(np.uint8)


def from_uint8(arr: np.ndarray) -> np.ndarray:
    return arr.astype(np.float64) / 255.0


def save_scene_image(img: SceneImage, path: str | Path):
    """Write an 8-bit RGB PNG; provenance (when present) rides in a text chunk."""
    path = Path(path)
    info = PngImagePlugin.PngInfo()
    if img.provenance is not None:
        info.add_text(PROVENANCE_KEY, json.dumps(img.provenance.to_dict(), sort_keys=True))
    Image.fromarray(to_uint8(img.pixels), mode="RGB").save(path, format="PNG", pnginfo=info)


def load_scene_image(path: str | Path) -> SceneImage:
    """Load a PNG; if provenance metadata is present, mask/landmarks are rebuilt."""
    with Image.open(Path(path)) as im:
        im = im.convert("RGB")
        pixels = from_uint8(np.asarray(im))
        raw = im.info.get(PROVENANCE_KEY)
    spec = SceneSpec.from_dict(json.loads(raw)) if raw else None
    return SceneImage(
        pixels=pixels,
        provenance=spec,
        face_mask=None if spec is None else face_ellipse_mask(spec, pixels.shape[0]),
        chin_landmarks=None if spec is None else chin_landmarks(spec),
    )
