"""Fetch a CVE description (cached NVD lookup) and classify it.

Run: python demos/05_nvd_lookup_and_predict.py

Lookups go through a write-through cache (one JSON file per CVE id), so a
description is fetched at most once.  Without network access the demo
falls back to a canned record so the classification half still runs.
"""

import tempfile
from pathlib import Path

from vulnchar.classifiers import algorithm_spec
from vulnchar.corpus import CveRecord
from vulnchar.nvd import NvdClient, NvdError
from vulnchar.pipeline import train_text_model
from vulnchar.synthetic import load_bundled_corpus

cache_dir = Path(tempfile.gettempdir()) / "vulnchar-demo-cache"
client = NvdClient(cache_dir=cache_dir)

cve_id = "CVE-2017-6725"
try:
    record = client.fetch(cve_id)
    print(f"fetched {cve_id} (cache: {cache_dir})")
except NvdError as e:
    print(f"NVD unreachable ({e}); using a canned description instead")
    record = CveRecord(
        cve_id,
        "A vulnerability in the web framework code could allow a remote "
        "attacker to read confidential session data from network traffic.",
    )

print()
print(record.description)
print()

model = train_text_model(algorithm_spec("svm"), load_bundled_corpus())
prediction = model.predict_text(record.description)
print(f"predicted characterization: {prediction.label.name} ({prediction.label.category.value})")
print(f"pairwise votes: {prediction.scores}")
