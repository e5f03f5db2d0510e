"""Index construction, invariants, and binary persistence."""

import random

import pytest

from priorcase.index import (
    CorpusIndex,
    DuplicateDocIdError,
    IndexFormatError,
    IndexVersionError,
    build_index,
    load_index,
    persist_index,
    read_corpus_dir,
    read_queries_file,
)
from priorcase.textproc import PRESET_STANDARD, pipeline_fingerprint, tokenize_normalize

from conftest import make_random_corpus


@pytest.fixture
def two_doc_index() -> CorpusIndex:
    return build_index([("d1", ["a", "a", "b"]), ("d2", ["b", "c"])], "fp-test")


class TestBuild:
    def test_hand_counted_statistics(self, two_doc_index):
        idx = two_doc_index
        assert idx.n_docs == 2
        assert idx.df == {"a": 1, "b": 2, "c": 1}
        assert idx.postings["a"] == [("d1", 2)]
        assert idx.postings["b"] == [("d1", 1), ("d2", 1)]
        assert idx.doc_len == {"d1": 3, "d2": 2}
        assert idx.avg_len == 2.5

    def test_single_document(self):
        idx = build_index([("only", ["x"])], "fp")
        assert idx.n_docs == 1
        assert idx.avg_len == 1.0

    def test_duplicate_id_rejected(self):
        with pytest.raises(DuplicateDocIdError, match="d1"):
            build_index([("d1", ["a"]), ("d1", ["b"])], "fp")

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError, match="nothing to index"):
            build_index([], "fp")

    def test_all_empty_documents_rejected(self):
        with pytest.raises(ValueError, match="nothing to index"):
            build_index([("d1", []), ("d2", [])], "fp")

    def test_empty_document_contributes_zero_length(self):
        idx = build_index([("d1", []), ("d2", ["a", "b"])], "fp")
        assert idx.doc_len["d1"] == 0
        assert idx.avg_len == 1.0

    def test_whitespace_id_rejected(self):
        with pytest.raises(ValueError, match="invalid document id"):
            build_index([("d 1", ["a"])], "fp")

    def test_invariants_on_random_corpora(self):
        rng = random.Random(3)
        for _ in range(30):
            raw = make_random_corpus(rng)
            docs = {
                d: tokenize_normalize(t, PRESET_STANDARD) for d, t in raw.items()
            }
            if not any(docs.values()):
                continue
            idx = build_index(sorted(docs.items()), "fp")
            for term, plist in idx.postings.items():
                assert idx.df[term] == len({d for d, _tf in plist})
                assert 1 <= idx.df[term] <= idx.n_docs
                assert [d for d, _tf in plist] == sorted(d for d, _tf in plist)
            for doc_id, length in idx.doc_len.items():
                from_postings = sum(
                    tf for plist in idx.postings.values() for d, tf in plist if d == doc_id
                )
                assert from_postings == length
            assert idx.avg_len > 0
            total_tf = sum(tf for plist in idx.postings.values() for _d, tf in plist)
            assert total_tf == sum(idx.doc_len.values())


class TestPersistence:
    def test_round_trip(self, two_doc_index, tmp_path):
        path = tmp_path / "corpus.idx"
        persist_index(two_doc_index, path)
        assert load_index(path) == two_doc_index

    def test_rebuild_is_byte_identical(self, tmp_path):
        rng = random.Random(5)
        raw = make_random_corpus(rng)
        docs = sorted(
            (d, tokenize_normalize(t, PRESET_STANDARD)) for d, t in raw.items()
        )
        fp = pipeline_fingerprint(PRESET_STANDARD)
        a, b = tmp_path / "a.idx", tmp_path / "b.idx"
        persist_index(build_index(docs, fp), a)
        persist_index(build_index(docs, fp), b)
        assert a.read_bytes() == b.read_bytes()

    def test_truncated_file(self, two_doc_index, tmp_path):
        path = tmp_path / "corpus.idx"
        persist_index(two_doc_index, path)
        path.write_bytes(path.read_bytes()[:-7])
        with pytest.raises(IndexFormatError):
            load_index(path)

    def test_bit_flip_detected(self, two_doc_index, tmp_path):
        path = tmp_path / "corpus.idx"
        persist_index(two_doc_index, path)
        data = bytearray(path.read_bytes())
        data[len(data) // 2] ^= 0xFF
        path.write_bytes(bytes(data))
        with pytest.raises(IndexFormatError):
            load_index(path)

    def test_future_version_rejected(self, two_doc_index, tmp_path):
        import struct
        import zlib

        path = tmp_path / "corpus.idx"
        persist_index(two_doc_index, path)
        data = bytearray(path.read_bytes())[:-4]
        data[4:8] = struct.pack("<I", 99)
        data += struct.pack("<I", zlib.crc32(bytes(data)))
        path.write_bytes(bytes(data))
        with pytest.raises(IndexVersionError, match="99"):
            load_index(path)

    def test_not_an_index_file(self, tmp_path):
        path = tmp_path / "nope.idx"
        path.write_bytes(b"this is not an index at all")
        with pytest.raises(IndexFormatError, match="magic"):
            load_index(path)

    def test_fingerprint_survives_round_trip(self, tmp_path):
        idx = build_index([("d", ["x"])], "fingerprint-xyz")
        path = tmp_path / "i.idx"
        persist_index(idx, path)
        assert load_index(path).fingerprint == "fingerprint-xyz"

    def test_unicode_terms_and_ids_round_trip(self, tmp_path):
        idx = build_index(
            [("državni-akt", ["наказание", "статья", "статья"]), ("²doc", ["κανών"])],
            "fp",
        )
        path = tmp_path / "u.idx"
        persist_index(idx, path)
        restored = load_index(path)
        assert restored == idx
        assert restored.postings["статья"] == [("državni-akt", 2)]


class TestIngestion:
    def test_read_corpus_dir(self, synthetic_dir):
        docs = read_corpus_dir(synthetic_dir / "corpus")
        assert [d for d, _ in docs] == [f"case0{i}" for i in range(1, 7)]
        assert "defendant" in docs[0][1]

    def test_read_corpus_dir_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_corpus_dir(tmp_path / "absent")

    def test_read_queries_file(self, synthetic_dir):
        queries = read_queries_file(synthetic_dir / "queries.tsv")
        assert queries[0] == ("q1", "contract breach damages")
        assert len(queries) == 5

    def test_read_queries_rejects_missing_tab(self, tmp_path):
        path = tmp_path / "queries.tsv"
        path.write_text("q1 no tab here\n", encoding="utf-8")
        with pytest.raises(ValueError, match="TAB"):
            read_queries_file(path)
