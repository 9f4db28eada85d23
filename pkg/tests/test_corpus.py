from __future__ import annotations

import json

import numpy as np
import pytest

from support import SMALL_CONFIG, make_image, write_sources
from mcvbench.corpus import (
    CorpusInputError,
    decode_png,
    encode_png,
    find_source_overlap,
    generate_corpus,
    load_manifest,
    validate_manifest,
)
from mcvbench.grid import enumerate_conditions
from mcvbench.perturb import Image, PerturbationKind


class TestGenerate:
    def test_layout_and_counts(self, toy_corpus):
        src, out, manifest = toy_corpus
        assert len(manifest.conditions) == 17
        for condition in manifest.conditions:
            files = sorted((out / condition.directory).glob("*.png"))
            assert len(files) == 4
        assert manifest.image_count == 4
        assert (out / "manifest.json").is_file()

    def test_clean_directory_matches_reencoded_sources(self, toy_corpus):
        src, out, manifest = toy_corpus
        for name in manifest.source_files:
            source = decode_png((src / name).read_bytes())
            assert (out / "clean#1" / name).read_bytes() == encode_png(source)

    def test_same_seed_regenerates_identically(self, toy_corpus, tmp_path):
        src, out, manifest = toy_corpus
        again = generate_corpus(src, tmp_path / "again", SMALL_CONFIG, master_seed=7)
        assert again.digest == manifest.digest
        assert again.layout == manifest.layout

    def test_worker_count_does_not_change_bytes(self, toy_corpus, tmp_path):
        src, out, manifest = toy_corpus
        parallel = generate_corpus(src, tmp_path / "par", SMALL_CONFIG, master_seed=7, workers=8)
        assert parallel.digest == manifest.digest

    def test_seed_changes_noise_conditions(self, toy_corpus, tmp_path):
        src, out, manifest = toy_corpus
        other = generate_corpus(src, tmp_path / "other", SMALL_CONFIG, master_seed=8)
        assert other.digest != manifest.digest
        noise_kinds = {PerturbationKind.SALT_PEPPER, PerturbationKind.GAUSSIAN}
        for condition in manifest.conditions:
            same = manifest.layout[condition.directory] == other.layout[condition.directory]
            has_noise = any(s.kind in noise_kinds for s in condition.specs)
            assert same != has_noise

    def test_empty_source_dir_rejected(self, tmp_path):
        (tmp_path / "empty").mkdir()
        with pytest.raises(CorpusInputError):
            generate_corpus(tmp_path / "empty", tmp_path / "out", SMALL_CONFIG, 0)

    def test_mixed_sizes_rejected_naming_file(self, tmp_path):
        src = tmp_path / "src"
        write_sources(src, 2, size=16)
        (src / "img_big.png").write_bytes(encode_png(make_image(9, size=32)))
        with pytest.raises(CorpusInputError, match="img_big.png"):
            generate_corpus(src, tmp_path / "out", SMALL_CONFIG, 0)

    def test_undecodable_file_rejected_naming_file(self, tmp_path):
        src = tmp_path / "src"
        write_sources(src, 1)
        (src / "broken.png").write_bytes(b"not a png at all")
        with pytest.raises(CorpusInputError, match="broken.png"):
            generate_corpus(src, tmp_path / "out", SMALL_CONFIG, 0)

    def test_filename_order_defines_stream_index(self, toy_corpus, tmp_path):
        # renaming a source changes its sort position and therefore its noise
        src, out, manifest = toy_corpus
        renamed = tmp_path / "renamed"
        renamed.mkdir()
        names = sorted(manifest.source_files)
        (renamed / "zzz_last.png").write_bytes((src / names[0]).read_bytes())
        for name in names[1:]:
            (renamed / name).write_bytes((src / name).read_bytes())
        moved = generate_corpus(renamed, tmp_path / "moved", SMALL_CONFIG, master_seed=7)
        noisy = next(c for c in manifest.conditions if c.label == "SP0.1")
        old_hash = manifest.layout[noisy.directory][names[0]]
        new_hash = moved.layout[noisy.directory]["zzz_last.png"]
        assert old_hash != new_hash


class TestManifestRoundTrip:
    def test_load_equals_generated(self, toy_corpus):
        _, out, manifest = toy_corpus
        assert load_manifest(out / "manifest.json") == manifest

    def test_validate_fresh_corpus_is_clean(self, toy_corpus):
        _, out, manifest = toy_corpus
        assert validate_manifest(manifest, out) == []

    def test_deleted_file_is_single_violation(self, toy_corpus, tmp_path):
        src, _, _ = toy_corpus
        out = tmp_path / "trimmed"
        manifest = generate_corpus(src, out, SMALL_CONFIG, master_seed=7)
        victim = out / "SP0.1GA0.1#4" / "img_000.png"
        assert victim.is_file()
        victim.unlink()
        violations = validate_manifest(manifest, out)
        assert violations == ["missing file: SP0.1GA0.1#4/img_000.png"]

    def test_corrupt_file_reported(self, toy_corpus, tmp_path):
        src, _, _ = toy_corpus
        out = tmp_path / "tampered"
        manifest = generate_corpus(src, out, SMALL_CONFIG, master_seed=7)
        victim = out / "clean#1" / "img_001.png"
        victim.write_bytes(encode_png(make_image(555)))
        violations = validate_manifest(manifest, out)
        assert violations == ["hash mismatch: clean#1/img_001.png"]

    def test_edited_seed_breaks_manifest_digest(self, toy_corpus, tmp_path):
        src, _, _ = toy_corpus
        out = tmp_path / "edited"
        generate_corpus(src, out, SMALL_CONFIG, master_seed=7)
        path = out / "manifest.json"
        doc = json.loads(path.read_text())
        doc["master_seed"] = 12345
        path.write_text(json.dumps(doc, sort_keys=True, indent=2))
        violations = validate_manifest(load_manifest(path), out)
        assert any("digest mismatch" in v for v in violations)

    def test_malformed_json_rejected(self, tmp_path):
        bad = tmp_path / "manifest.json"
        bad.write_text("{ not json")
        with pytest.raises(CorpusInputError, match="malformed"):
            load_manifest(bad)

    def test_unsupported_schema_version_rejected(self, toy_corpus, tmp_path):
        _, out, _ = toy_corpus
        doc = json.loads((out / "manifest.json").read_text())
        doc["schema_version"] = 99
        bad = tmp_path / "manifest.json"
        bad.write_text(json.dumps(doc))
        with pytest.raises(CorpusInputError, match="schema_version"):
            load_manifest(bad)

    def test_conditions_match_enumeration(self, toy_corpus):
        _, _, manifest = toy_corpus
        assert manifest.conditions == enumerate_conditions(manifest.grid_config)


class TestSourceOverlap:
    def test_identical_sources_fully_overlap(self, toy_corpus, tmp_path):
        src, _, manifest = toy_corpus
        twin = generate_corpus(src, tmp_path / "twin", SMALL_CONFIG, master_seed=99)
        assert len(find_source_overlap(manifest, twin)) == 4

    def test_disjoint_sources_do_not_overlap(self, toy_corpus, tmp_path):
        _, _, manifest = toy_corpus
        other_src = tmp_path / "other_src"
        write_sources(other_src, 3, seed=500)
        other = generate_corpus(other_src, tmp_path / "other_out", SMALL_CONFIG, master_seed=7)
        assert find_source_overlap(manifest, other) == []

    def test_overlap_matches_by_content_not_name(self, toy_corpus, tmp_path):
        src, _, manifest = toy_corpus
        moved_src = tmp_path / "moved_src"
        moved_src.mkdir()
        (moved_src / "other_name.png").write_bytes((src / "img_000.png").read_bytes())
        moved = generate_corpus(moved_src, tmp_path / "moved_out", SMALL_CONFIG, master_seed=7)
        assert find_source_overlap(manifest, moved) == [("img_000.png", "other_name.png")]


class TestPngCodec:
    def test_round_trip_lossless(self):
        img = make_image(77, size=9)
        assert decode_png(encode_png(img)).same_bytes(img)

    def test_encode_deterministic(self):
        img = make_image(78)
        assert encode_png(img) == encode_png(img)

    def test_grayscale_input_converted_to_rgb(self, tmp_path):
        from PIL import Image as PILImage

        gray = PILImage.fromarray(np.arange(64, dtype=np.uint8).reshape(8, 8), "L")
        path = tmp_path / "gray.png"
        gray.save(path, format="PNG")
        img = decode_png(path.read_bytes())
        assert img.channels == 3
