"""Corpus materialization: apply every condition to every source image and
persist the result with a hash-verified manifest.

Output bytes are a pure function of (source bytes, grid config, master seed),
independent of worker count, so regeneration is byte-identical and tampering
is detectable by re-hashing.
"""

from __future__ import annotations

import hashlib
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from mcvbench.grid import Condition, Grid, GridConfig, enumerate_conditions
from mcvbench.perturb import Image, PerturbationKind, PerturbationSpec, apply_sequence
from mcvbench.rng import derive_stream

SCHEMA_VERSION = 1
MANIFEST_NAME = "manifest.json"


class CorpusInputError(ValueError):
    """Unusable source images or corrupt manifest input."""


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def encode_png(img: Image) -> bytes:
    buf = io.BytesIO()
    PILImage.fromarray(img.data, "RGB").save(buf, format="PNG", optimize=False)
    return buf.getvalue()


def decode_png(data: bytes) -> Image:
    with PILImage.open(io.BytesIO(data)) as pil:
        return Image(np.asarray(pil.convert("RGB"), dtype=np.uint8))


@dataclass(frozen=True)
class BenchmarkManifest:
    """Persisted description of a generated corpus.

    `source_files` maps source filename to its content hash; `layout` maps
    each condition's subdirectory (label#ordinal) to {filename: content hash}
    of the generated PNGs. `digest` is the hash of the canonical manifest
    payload itself, excluding the digest field.
    """

    schema_version: int
    master_seed: int
    grid_config: GridConfig
    conditions: tuple[Condition, ...]
    image_count: int
    image_width: int
    image_height: int
    source_files: dict[str, str]
    layout: dict[str, dict[str, str]]
    digest: str

    def payload(self) -> dict:
        """Canonical JSON payload, digest excluded."""
        return {
            "schema_version": self.schema_version,
            "master_seed": self.master_seed,
            "grid_config": {
                "sp_levels": list(self.grid_config.sp_levels),
                "ga_levels": list(self.grid_config.ga_levels),
                "ro_levels": list(self.grid_config.ro_levels),
            },
            "conditions": [
                {
                    "ordinal": c.ordinal,
                    "grid": c.grid.value,
                    "cell": list(c.cell) if c.cell is not None else None,
                    "label": c.label,
                    "specs": [{"kind": s.kind.value, "severity": s.severity} for s in c.specs],
                }
                for c in self.conditions
            ],
            "corpus": {
                "image_count": self.image_count,
                "width": self.image_width,
                "height": self.image_height,
                "source_files": dict(sorted(self.source_files.items())),
            },
            "layout": [
                {"directory": directory, "files": dict(sorted(files.items()))}
                for directory, files in self.layout.items()
            ],
        }

    def compute_digest(self) -> str:
        return _sha256(json.dumps(self.payload(), sort_keys=True, separators=(",", ":")).encode("utf-8"))

    def to_json(self) -> str:
        doc = self.payload()
        doc["digest"] = self.digest
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def conditions_by_ordinal(self) -> dict[int, str]:
        return {c.ordinal: c.label for c in self.conditions}


def _load_sources(source_dir: Path) -> tuple[list[str], list[Image], dict[str, str]]:
    if not source_dir.is_dir():
        raise CorpusInputError(f"source directory not found: {source_dir}")
    names = sorted(p.name for p in source_dir.iterdir() if p.is_file() and p.suffix.lower() == ".png")
    if not names:
        raise CorpusInputError(f"no PNG images in {source_dir}")
    images: list[Image] = []
    hashes: dict[str, str] = {}
    size: tuple[int, int] | None = None
    for name in names:
        path = source_dir / name
        raw = path.read_bytes()
        try:
            img = decode_png(raw)
        except (UnidentifiedImageError, OSError) as exc:
            raise CorpusInputError(f"unreadable image {path}: {exc}") from exc
        if size is None:
            size = (img.width, img.height)
        elif (img.width, img.height) != size:
            raise CorpusInputError(
                f"mixed image sizes: {path} is {img.width}x{img.height}, expected {size[0]}x{size[1]}"
            )
        images.append(img)
        hashes[name] = _sha256(raw)
    return names, images, hashes


def _render_one(
    condition: Condition, image: Image, master_seed: int, image_index: int
) -> tuple[bytes, str]:
    stream = derive_stream(master_seed, condition.ordinal, image_index)
    out = apply_sequence(image, condition.specs, stream)
    data = encode_png(out)
    return data, _sha256(data)


def generate_corpus(
    source_dir: Path | str,
    out_dir: Path | str,
    config: GridConfig | None = None,
    master_seed: int = 0,
    workers: int = 1,
) -> BenchmarkManifest:
    """Generate the perturbed corpus for every condition and write its manifest.

    Source images are indexed in filename-sorted order; image i of condition
    c is perturbed with the stream derived from (master_seed, c.ordinal, i).
    Safe to parallelize: tasks share nothing but read-only source bytes and
    the manifest is assembled in a fixed order.
    """
    source_dir, out_dir = Path(source_dir), Path(out_dir)
    config = config or GridConfig()
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    names, images, source_hashes = _load_sources(source_dir)
    conditions = enumerate_conditions(config)

    out_dir.mkdir(parents=True, exist_ok=True)
    for condition in conditions:
        (out_dir / condition.directory).mkdir(exist_ok=True)

    tasks = [(condition, index) for condition in conditions for index in range(len(names))]

    def run(task: tuple[Condition, int]) -> tuple[str, str, str]:
        condition, index = task
        data, digest = _render_one(condition, images[index], master_seed, index)
        (out_dir / condition.directory / names[index]).write_bytes(data)
        return condition.directory, names[index], digest

    layout: dict[str, dict[str, str]] = {condition.directory: {} for condition in conditions}
    if workers == 1:
        outcomes = [run(task) for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(run, tasks))
    for directory, name, digest in outcomes:
        layout[directory][name] = digest

    manifest = BenchmarkManifest(
        schema_version=SCHEMA_VERSION,
        master_seed=master_seed,
        grid_config=config,
        conditions=conditions,
        image_count=len(names),
        image_width=images[0].width,
        image_height=images[0].height,
        source_files=source_hashes,
        layout=layout,
        digest="",
    )
    manifest = replace(manifest, digest=manifest.compute_digest())
    (out_dir / MANIFEST_NAME).write_text(manifest.to_json(), encoding="utf-8")
    return manifest


def _condition_from_doc(doc: dict) -> Condition:
    specs = tuple(PerturbationSpec(PerturbationKind(s["kind"]), float(s["severity"])) for s in doc["specs"])
    cell = tuple(float(v) for v in doc["cell"]) if doc.get("cell") is not None else None
    return Condition(
        ordinal=int(doc["ordinal"]),
        grid=Grid(doc["grid"]),
        cell=cell,  # type: ignore[arg-type]
        specs=specs,
        label=str(doc["label"]),
    )


def load_manifest(path: Path | str) -> BenchmarkManifest:
    """Parse and schema-check a manifest file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusInputError(f"malformed manifest {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise CorpusInputError(
            f"unsupported manifest schema_version {doc.get('schema_version')!r} in {path} (expected {SCHEMA_VERSION})"
        )
    try:
        grid_config = GridConfig(
            sp_levels=tuple(doc["grid_config"]["sp_levels"]),
            ga_levels=tuple(doc["grid_config"]["ga_levels"]),
            ro_levels=tuple(doc["grid_config"]["ro_levels"]),
        )
        manifest = BenchmarkManifest(
            schema_version=int(doc["schema_version"]),
            master_seed=int(doc["master_seed"]),
            grid_config=grid_config,
            conditions=tuple(_condition_from_doc(c) for c in doc["conditions"]),
            image_count=int(doc["corpus"]["image_count"]),
            image_width=int(doc["corpus"]["width"]),
            image_height=int(doc["corpus"]["height"]),
            source_files=dict(doc["corpus"]["source_files"]),
            layout={entry["directory"]: dict(entry["files"]) for entry in doc["layout"]},
            digest=str(doc["digest"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusInputError(f"invalid manifest {path}: {exc}") from exc
    return manifest


def validate_manifest(manifest: BenchmarkManifest, root: Path | str) -> list[str]:
    """Re-hash every generated file and check the manifest's own integrity.

    Returns a list of violations (empty means valid): digest mismatch of the
    manifest payload, conditions that disagree with re-enumeration from the
    recorded grid config, and missing or corrupt files under `root`.
    """
    root = Path(root)
    violations: list[str] = []
    computed = manifest.compute_digest()
    if computed != manifest.digest:
        violations.append(f"manifest digest mismatch: recorded {manifest.digest}, computed {computed}")
    if manifest.conditions != enumerate_conditions(manifest.grid_config):
        violations.append("conditions do not match enumeration of the recorded grid config")
    for directory, files in manifest.layout.items():
        for name in sorted(files):
            path = root / directory / name
            if not path.is_file():
                violations.append(f"missing file: {directory}/{name}")
            elif _sha256(path.read_bytes()) != files[name]:
                violations.append(f"hash mismatch: {directory}/{name}")
    return violations


def find_source_overlap(first: BenchmarkManifest, second: BenchmarkManifest) -> list[tuple[str, str]]:
    """Source images shared by two corpora, matched by content hash.

    Disjoint training/testing corpora must return an empty list; names may
    differ, so pairs are (name in first, name in second).
    """
    by_hash: dict[str, list[str]] = {}
    for name, digest in first.source_files.items():
        by_hash.setdefault(digest, []).append(name)
    overlap: list[tuple[str, str]] = []
    for name, digest in sorted(second.source_files.items()):
        for other in sorted(by_hash.get(digest, ())):
            overlap.append((other, name))
    return sorted(overlap)
