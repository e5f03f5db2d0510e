"""The whole scorer family side by side
----------------------------------------

Ranks one query under every scorer, then demonstrates that product
fusion only reorders documents through the *combination* of signals:
scaling one factor never changes the fused order.
"""

from pathlib import Path

from priorcase import (
    PRESET_STANDARD,
    Searcher,
    build_index,
    fuse_product,
    load_embeddings,
    pipeline_fingerprint,
    rank_documents,
    read_corpus_dir,
    read_queries_file,
    tokenize_normalize,
)

DATA = Path(__file__).resolve().parent.parent / "data" / "synthetic"

raw_docs = dict(read_corpus_dir(DATA / "corpus"))
config = PRESET_STANDARD
index = build_index(
    sorted((d, tokenize_normalize(t, config)) for d, t in raw_docs.items()),
    pipeline_fingerprint(config),
)
searcher = Searcher(
    index,
    config=config,
    embeddings=load_embeddings(DATA / "embeddings.tsv"),
    corpus_texts=raw_docs,
)

qid, query_text = read_queries_file(DATA / "queries.tsv")[0]
tokens = tokenize_normalize(query_text, config)
print(f"query {qid}: {query_text!r}\n")
print(f"{'scorer':<18}" + "".join(f"{d:>10}" for d in sorted(raw_docs)))
for scorer in ("tfidf_cos", "bm25", "bm25_okapi", "bm25l", "bm25plus",
               "fused", "rake_tfidf", "commonwords_bm25", "embed"):
    scores = dict(searcher.score(scorer, tokens, query_id=qid, query_text=query_text))
    print(f"{scorer:<18}" + "".join(f"{scores[d]:>10.4f}" for d in sorted(raw_docs)))

# Fusion = bm25 * cosine per document.  Rescaling every bm25 score by a
# positive constant rescales the fused scores but cannot change the order.
bm25 = dict(searcher.score("bm25", tokens))
cos = dict(searcher.score("tfidf_cos", tokens))
docs = sorted(raw_docs)
fused = rank_documents({d: fuse_product(bm25[d], cos[d]) for d in docs}, docs)
scaled = rank_documents({d: fuse_product(1000.0 * bm25[d], cos[d]) for d in docs}, docs)
print("\nfused order          :", [d for d, _ in fused])
print("fused order, bm25x1000:", [d for d, _ in scaled])
