"""Walk through the text pipeline: cleaning, vocabulary, TF-IDF weights.

Run: python demos/01_preprocessing_and_tfidf.py
"""

import io
import math

from vulnchar.textprep import build_vocabulary, dump_matrix, preprocess, tfidf_transform

# Free text as it appears in vulnerability reports: mixed case, URLs,
# punctuation. The pipeline lowercases, strips URLs, tokenizes on
# non-alphanumeric runs, drops stopwords, and stems what remains.
raw = (
    "A vulnerability in the web framework code of the product could allow a "
    "remote attacker to conduct a cross-site scripting (XSS) attack. "
    "See http://www.securityfocus.com/bid/99202 for details."
)
tokens = preprocess(raw)
print("raw text:")
print(" ", raw)
print("tokens after the full pipeline:")
print(" ", tokens)
print()

# A tiny two-document corpus makes the weighting arithmetic visible.
docs = [["apple", "apple", "banana"], ["banana"]]
vocab = build_vocabulary(docs)
print("document frequencies:", vocab.doc_frequency)

matrix = tfidf_transform(docs, vocab)
print("sparse rows (column -> ln(1+tf) * ln(N/df)):", matrix.rows)
print("hand check: ln(1+2) * ln(2/1) =", math.log(3) * math.log(2))
print("'banana' appears in every document (df == N), so its weight is 0 and")
print("it is omitted from the sparse rows entirely.")
print()

# The matrix dump format: a 'rows cols nnz' header then one triple per line.
out = io.StringIO()
dump_matrix(matrix, out)
print("matrix dump:")
print(out.getvalue())
