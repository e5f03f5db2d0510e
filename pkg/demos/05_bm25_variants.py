"""BM25 variants under the microscope
--------------------------------------

Plots (as a text table) how one term's contribution grows with its
frequency under each variant, and shows the Okapi epsilon floor kicking
in for terms that appear in more than half the collection.
"""

from priorcase import BM25Params, Variant, bm25_term_score

N, DOC_LEN, AVG_LEN = 1000, 120, 100.0
params = BM25Params()  # k1=1.5, b=0.75, epsilon=0.25

print(f"term frequency saturation (df=20 of N={N}):")
print(f"{'tf':>4}" + "".join(f"{v.value:>12}" for v in Variant))
avg_idf = 2.0  # corpus mean Okapi idf, needed only for the floor
for tf in (0, 1, 2, 3, 5, 8, 13, 21, 50):
    row = f"{tf:>4}"
    for variant in Variant:
        score = bm25_term_score(tf, 20, N, DOC_LEN, AVG_LEN, params, variant, avg_idf)
        row += f"{score:>12.4f}"
    print(row)

# ATIRE idf is ln(N/df): it reaches exactly zero at df = N and never goes
# negative.  Okapi idf goes negative once df > N/2; those values are
# replaced by epsilon * mean-idf so common words cannot flip rankings.
print("\nidf behaviour as a term gets more common (tf=1):")
print(f"{'df':>6}{'atire':>12}{'okapi':>12}")
for df in (10, 100, 400, 499, 500, 501, 700, 999):
    atire = bm25_term_score(1, df, N, DOC_LEN, AVG_LEN, params, Variant.ATIRE)
    okapi = bm25_term_score(1, df, N, DOC_LEN, AVG_LEN, params, Variant.OKAPI, avg_idf)
    floored = " <- floored" if df > N / 2 else ""
    print(f"{df:>6}{atire:>12.4f}{okapi:>12.4f}{floored}")

# Longer documents are damped by the length normalization; b controls
# how strongly.
print("\nlength normalization (tf=3, df=20):")
print(f"{'doc_len':>8}" + "".join(f"{f'b={b}':>12}" for b in (0.0, 0.5, 0.75, 1.0)))
for doc_len in (25, 50, 100, 200, 400):
    row = f"{doc_len:>8}"
    for b in (0.0, 0.5, 0.75, 1.0):
        score = bm25_term_score(3, 20, N, doc_len, AVG_LEN, BM25Params(b=b))
        row += f"{score:>12.4f}"
    print(row)
