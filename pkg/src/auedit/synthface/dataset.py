"""Dataset generation: rendered pair images plus a line-delimited JSON manifest.

Manifest format (schema "auedit-dataset/1"): first line is a header record,
every following line is one pair record with file paths, both SceneSpecs and
the AU delta. Identities are partitioned 80/10/10 into train/val/test by
identity_id, so no identity appears in two splits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from auedit.aus import AUDelta
from auedit.synthface.pairs import make_pair_specs
from auedit.synthface.render import render_face, save_scene_image
from auedit.synthface.specs import SceneSpec, sample_identity

MANIFEST_SCHEMA = "auedit-dataset/1"
MANIFEST_NAME = "manifest.jsonl"
SPLITS = ("train", "val", "test")


@dataclass
class PairRecord:
    pair_id: int
    split: str
    identity_path: str
    target_path: str
    identity_scene: SceneSpec
    target_scene: SceneSpec
    au_delta: AUDelta

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "split": self.split,
            "identity_path": self.identity_path,
            "target_path": self.target_path,
            "identity_scene": self.identity_scene.to_dict(),
            "target_scene": self.target_scene.to_dict(),
            "au_delta": self.au_delta.as_list(),
        }

    @staticmethod
    def from_dict(d: dict) -> "PairRecord":
        return PairRecord(
            pair_id=int(d["pair_id"]),
            split=d["split"],
            identity_path=d["identity_path"],
            target_path=d["target_path"],
            identity_scene=SceneSpec.from_dict(d["identity_scene"]),
            target_scene=SceneSpec.from_dict(d["target_scene"]),
            au_delta=AUDelta(d["au_delta"]),
        )


@dataclass
class DatasetManifest:
    schema: str
    seed: int
    n_identities: int
    records: list[PairRecord]
    root: Path

    def split_records(self, split: str) -> list[PairRecord]:
        return [r for r in self.records if r.split == split]

    def identity_ids(self, split: str | None = None) -> list[int]:
        recs = self.records if split is None else self.split_records(split)
        return sorted({r.identity_scene.identity.identity_id for r in recs})


def split_identities(n_identities: int, rng: np.random.Generator) -> dict[int, str]:
    """80/10/10 partition by identity_id; val and test are never empty."""
    ids = np.arange(n_identities)
    rng.shuffle(ids)
    n_test = max(1, round(0.1 * n_identities))
    n_val = max(1, round(0.1 * n_identities))
    assignment: dict[int, str] = {}
    for k, ident in enumerate(ids):
        if k < n_test:
            assignment[int(ident)] = "test"
        elif k < n_test + n_val:
            assignment[int(ident)] = "val"
        else:
            assignment[int(ident)] = "train"
    return assignment


def generate_dataset(n_pairs: int, n_identities: int, seed: int, out_path: str | Path) -> DatasetManifest:
    """Render n_pairs training pairs over n_identities and write them under out_path."""
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be >= 1, got {n_pairs}")
    if n_identities < 2:
        raise ValueError(f"n_identities must be >= 2, got {n_identities}")
    root = Path(out_path)
    images_dir = root / "images"
    images_dir.mkdir(parents=True, exist_ok=True)

    seq = np.random.SeedSequence(seed)
    id_rng = np.random.default_rng(seq.spawn(1)[0])
    identities = [sample_identity(id_rng, i) for i in range(n_identities)]
    assignment = split_identities(n_identities, id_rng)
    pair_seeds = np.random.default_rng(seq.spawn(1)[0]).integers(0, 2**62, size=n_pairs)
    which_identity = np.random.default_rng(seq.spawn(1)[0]).integers(0, n_identities, size=n_pairs)

    records: list[PairRecord] = []
    for pair_id in range(n_pairs):
        ident = identities[int(which_identity[pair_id])]
        rng = np.random.default_rng(int(pair_seeds[pair_id]))
        scene_a, scene_b = make_pair_specs(ident, rng)
        img_a = render_face(scene_a)
        img_b = render_face(scene_b)
        rel_a = f"images/{pair_id:06d}_id.png"
        rel_b = f"images/{pair_id:06d}_tg.png"
        save_scene_image(img_a, root / rel_a)
        save_scene_image(img_b, root / rel_b)
        records.append(
            PairRecord(
                pair_id=pair_id,
                split=assignment[ident.identity_id],
                identity_path=rel_a,
                target_path=rel_b,
                identity_scene=scene_a,
                target_scene=scene_b,
                au_delta=scene_b.aus - scene_a.aus,
            )
        )

    manifest_path = root / MANIFEST_NAME
    with manifest_path.open("w") as fh:
        header = {"schema": MANIFEST_SCHEMA, "seed": seed, "n_pairs": n_pairs, "n_identities": n_identities}
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for rec in records:
            fh.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")
    return DatasetManifest(
        schema=MANIFEST_SCHEMA, seed=seed, n_identities=n_identities, records=records, root=root
    )


def load_manifest(path: str | Path) -> DatasetManifest:
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    with path.open() as fh:
        header = json.loads(fh.readline())
        if header.get("schema") != MANIFEST_SCHEMA:
            raise ValueError(f"unsupported manifest schema {header.get('schema')!r}")
        records = [PairRecord.from_dict(json.loads(line)) for line in fh if line.strip()]
    return DatasetManifest(
        schema=header["schema"],
        seed=int(header["seed"]),
        n_identities=int(header["n_identities"]),
        records=records,
        root=path.parent,
    )
