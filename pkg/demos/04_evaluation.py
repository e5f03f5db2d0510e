"""Evaluating a run against relevance judgments
------------------------------------------------

Produces a run with the BM25 scorer, evaluates it against the bundled
qrels, and points out the edge-case conventions: a query whose relevant
document is never retrieved scores zero everywhere, and a query with no
judged-relevant documents is excluded from the means.
"""

from pathlib import Path

from priorcase import (
    PRESET_STANDARD,
    Searcher,
    build_index,
    evaluate_run,
    load_qrels,
    pipeline_fingerprint,
    read_corpus_dir,
    read_queries_file,
    tokenize_normalize,
)
from priorcase.evaluation import format_report

DATA = Path(__file__).resolve().parent.parent / "data" / "synthetic"

raw_docs = read_corpus_dir(DATA / "corpus")
config = PRESET_STANDARD
index = build_index(
    [(d, tokenize_normalize(t, config)) for d, t in raw_docs],
    pipeline_fingerprint(config),
)
searcher = Searcher(index, config=config)

queries = read_queries_file(DATA / "queries.tsv")
run = searcher.search_all(queries, scorer="bm25", top_n=10)
qrels = load_qrels(DATA / "qrels.txt")

report = evaluate_run(run, qrels, ks=(1, 3, 5, 10))
print(format_report(report, per_query=True))

print()
print("q4 judged relevant:", sorted(qrels["q4"]), "(not in the corpus at all)")
print("q4 reciprocal rank:", report.queries["q4"].reciprocal_rank)
print("q5 relevant set is empty -> skipped:", report.skipped)

# Aggregate F1 comes in two flavours; the default averages per-query F1.
pooled = evaluate_run(run, qrels, ks=(10,), f1_mode="pooled")
print()
print(f"mean F1@10, per-query mode: {report.mean_f1[10]:.4f}")
print(f"mean F1@10, pooled mode   : {pooled.mean_f1[10]:.4f}")
