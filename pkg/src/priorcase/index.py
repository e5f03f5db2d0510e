"""Inverted index over normalized token streams, with binary persistence.

The index is immutable once built.  It records everything the scoring
functions need: document count, per-term postings with term frequencies,
document frequencies, document lengths, the mean document length, and a
fingerprint of the normalization pipeline used at build time.

Persisted layout (little-endian, version 1):

    magic   4 bytes  b"PCIX"
    version u32
    fingerprint      u32 length + UTF-8 bytes
    n_docs  u32
    docs    n_docs * (u32 id length + UTF-8 id bytes + u32 doc length),
            sorted ascending by id
    n_terms u32
    terms   n_terms * (u32 term length + UTF-8 term bytes + u32 postings
            count + postings), terms sorted ascending; each posting is
            (u32 doc table position, u32 term frequency), ascending
    crc32   u32 over everything before it

Writing sorts both tables, so the same documents and pipeline always
produce byte-identical files.
"""

from __future__ import annotations

import io
import struct
import zlib
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable

MAGIC = b"PCIX"
FORMAT_VERSION = 1


class IndexFormatError(ValueError):
    """The file is not a readable index (wrong magic, truncated, corrupt)."""


class IndexVersionError(IndexFormatError):
    """The file uses an index format version this code does not support."""


class DuplicateDocIdError(ValueError):
    def __init__(self, doc_id: str):
        super().__init__(f"duplicate document id: {doc_id!r}")
        self.doc_id = doc_id


class PipelineMismatchError(ValueError):
    """Query-side pipeline fingerprint differs from the index's."""


@dataclass
class CorpusIndex:
    n_docs: int
    postings: dict[str, list[tuple[str, int]]]
    df: dict[str, int]
    doc_len: dict[str, int]
    avg_len: float
    fingerprint: str
    doc_ids: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.doc_ids:
            self.doc_ids = sorted(self.doc_len)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CorpusIndex):
            return NotImplemented
        return (
            self.n_docs == other.n_docs
            and self.postings == other.postings
            and self.df == other.df
            and self.doc_len == other.doc_len
            and self.avg_len == other.avg_len
            and self.fingerprint == other.fingerprint
        )


def build_index(
    docs: Iterable[tuple[str, list[str]]],
    fingerprint: str,
) -> CorpusIndex:
    """Build an index from (doc_id, normalized tokens) pairs.

    Rejects duplicate or malformed ids and corpora with no tokens at all
    (the mean document length would be undefined).
    """
    postings: dict[str, list[tuple[str, int]]] = {}
    doc_len: dict[str, int] = {}
    for doc_id, tokens in docs:
        if not doc_id or doc_id != doc_id.strip() or any(ch.isspace() for ch in doc_id):
            raise ValueError(f"invalid document id: {doc_id!r}")
        if doc_id in doc_len:
            raise DuplicateDocIdError(doc_id)
        doc_len[doc_id] = len(tokens)
        for term, tf in Counter(tokens).items():
            postings.setdefault(term, []).append((doc_id, tf))

    if not doc_len:
        raise ValueError("nothing to index: empty corpus")
    total = sum(doc_len.values())
    if total == 0:
        raise ValueError("nothing to index: every document is empty")

    for plist in postings.values():
        plist.sort(key=lambda entry: entry[0])
    df = {term: len(plist) for term, plist in postings.items()}
    return CorpusIndex(
        n_docs=len(doc_len),
        postings=postings,
        df=df,
        doc_len=doc_len,
        avg_len=total / len(doc_len),
        fingerprint=fingerprint,
    )


# ---------------------------------------------------------------------------
# persistence

def _write_u32(out: BinaryIO, value: int) -> None:
    out.write(struct.pack("<I", value))


def _write_bytes(out: BinaryIO, data: bytes) -> None:
    _write_u32(out, len(data))
    out.write(data)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise IndexFormatError("corrupt index file: truncated")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def string(self) -> str:
        raw = self.take(self.u32())
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IndexFormatError(f"corrupt index file: bad UTF-8 ({exc})") from None


def persist_index(index: CorpusIndex, path: str | Path) -> None:
    """Write the index to `path` in the versioned binary layout."""
    buf = io.BytesIO()
    buf.write(MAGIC)
    _write_u32(buf, FORMAT_VERSION)
    _write_bytes(buf, index.fingerprint.encode("utf-8"))

    doc_ids = sorted(index.doc_len)
    doc_pos = {doc_id: i for i, doc_id in enumerate(doc_ids)}
    _write_u32(buf, len(doc_ids))
    for doc_id in doc_ids:
        _write_bytes(buf, doc_id.encode("utf-8"))
        _write_u32(buf, index.doc_len[doc_id])

    terms = sorted(index.postings)
    _write_u32(buf, len(terms))
    for term in terms:
        _write_bytes(buf, term.encode("utf-8"))
        plist = index.postings[term]
        _write_u32(buf, len(plist))
        flat = []
        for doc_id, tf in plist:
            flat.append(doc_pos[doc_id])
            flat.append(tf)
        buf.write(struct.pack(f"<{len(flat)}I", *flat))

    payload = buf.getvalue()
    with open(path, "wb") as out:
        out.write(payload)
        out.write(struct.pack("<I", zlib.crc32(payload)))


def load_index(path: str | Path) -> CorpusIndex:
    """Read an index written by `persist_index`.

    Raises IndexFormatError for unreadable or corrupt files and
    IndexVersionError when the version tag is unsupported.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 4 or not data.startswith(MAGIC):
        raise IndexFormatError("not an index file: bad magic")
    if len(data) < 12:
        raise IndexFormatError("corrupt index file: truncated")
    payload, crc_bytes = data[:-4], data[-4:]
    if struct.unpack("<I", crc_bytes)[0] != zlib.crc32(payload):
        raise IndexFormatError("corrupt index file: checksum mismatch")

    reader = _Reader(payload)
    reader.take(4)  # magic
    version = reader.u32()
    if version != FORMAT_VERSION:
        raise IndexVersionError(
            f"unsupported index version {version} (this build reads version {FORMAT_VERSION})"
        )
    fingerprint = reader.string()

    n_docs = reader.u32()
    doc_len: dict[str, int] = {}
    for _ in range(n_docs):
        doc_id = reader.string()
        doc_len[doc_id] = reader.u32()
    if len(doc_len) != n_docs:
        raise IndexFormatError("corrupt index file: repeated document id")
    doc_ids = list(doc_len)

    n_terms = reader.u32()
    postings: dict[str, list[tuple[str, int]]] = {}
    for _ in range(n_terms):
        term = reader.string()
        count = reader.u32()
        flat = struct.unpack(f"<{2 * count}I", reader.take(8 * count))
        plist = []
        for i in range(count):
            pos = flat[2 * i]
            if pos >= n_docs:
                raise IndexFormatError("corrupt index file: posting points past document table")
            plist.append((doc_ids[pos], flat[2 * i + 1]))
        postings[term] = plist
    if reader.pos != len(payload):
        raise IndexFormatError("corrupt index file: trailing bytes")

    df = {term: len(plist) for term, plist in postings.items()}
    total = sum(doc_len.values())
    return CorpusIndex(
        n_docs=n_docs,
        postings=postings,
        df=df,
        doc_len=doc_len,
        avg_len=total / n_docs if n_docs else 0.0,
        fingerprint=fingerprint,
        doc_ids=doc_ids,
    )


# ---------------------------------------------------------------------------
# corpus and query ingestion

def read_corpus_dir(path: str | Path) -> list[tuple[str, str]]:
    """Read a directory of UTF-8 text files as (doc_id, raw text) pairs.

    The document id is the filename without its extension.  Hidden files
    are skipped.  Results are sorted by id.
    """
    root = Path(path)
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {root}")
    docs = []
    for entry in sorted(root.iterdir()):
        if not entry.is_file() or entry.name.startswith("."):
            continue
        docs.append((entry.stem, entry.read_text(encoding="utf-8")))
    if not docs:
        raise ValueError(f"corpus directory contains no documents: {root}")
    docs.sort(key=lambda pair: pair[0])
    return docs


def read_queries_file(path: str | Path) -> list[tuple[str, str]]:
    """Read a two-column `query_id<TAB>query_text` file."""
    queries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if "\t" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'query_id<TAB>query_text'")
            qid, text = line.split("\t", 1)
            if not qid or any(ch.isspace() for ch in qid):
                raise ValueError(f"{path}:{lineno}: invalid query id {qid!r}")
            queries.append((qid, text))
    if not queries:
        raise ValueError(f"no queries found in {path}")
    seen = set()
    for qid, _text in queries:
        if qid in seen:
            raise ValueError(f"{path}: duplicate query id {qid!r}")
        seen.add(qid)
    return queries
