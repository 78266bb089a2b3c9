# Stratified k-fold splitting and confusion-matrix metrics. A classifier
# is simulated here (90% correct, errors spread uniformly) so the demo
# runs without any training; a real trainer would emit the same
# PredictionRecord rows from its test-fold inference.

import random

from packetvision import (
    DatasetManifest,
    PredictionRecord,
    SampleRecord,
    aggregate_folds,
    confusion_from_predictions,
    metrics,
    stratified_kfold,
)

# A synthetic manifest: four classes with uneven counts.
counts = {"BitTorrent": 120, "DNS": 140, "VoIP": 130, "IoT": 180}
entries = []
for label, count in counts.items():
    for i in range(count):
        sid = f"{label}_{i:06d}"
        entries.append(SampleRecord(sid, label, "demo.pcap", i, f"{label}/{sid}.png", 4, 0, i))
manifest = DatasetManifest(entries=entries, classes=tuple(counts))

k = 5
assignment = stratified_kfold(manifest, k=k, seed=1)

# Per-class fold sizes differ by at most one: that is the stratification
# guarantee.
label_of = {e.sample_id: e.label for e in entries}
for label in counts:
    sizes = [0] * k
    for sid, fold in assignment.assignment.items():
        if label_of[sid] == label:
            sizes[fold] += 1
    print(f"{label:>10}: fold sizes {sizes}")

# Simulate a 90%-accurate classifier on each held-out fold.
rnd = random.Random(3)
classes = sorted(counts)
reports = []
for fold in range(k):
    records = []
    for sid, f in assignment.assignment.items():
        if f != fold:
            continue
        true = label_of[sid]
        predicted = true if rnd.random() < 0.9 else rnd.choice([c for c in classes if c != true])
        records.append(PredictionRecord(fold, sid, true, predicted))
    report = metrics(confusion_from_predictions(records, classes))
    reports.append(report)
    print(
        f"fold {fold}: accuracy={report.accuracy:.2f} precision={report.precision:.2f} "
        f"recall={report.recall:.2f} f1={report.f1:.2f}"
    )

overall = aggregate_folds(reports)
print(
    f"\n5-fold mean: accuracy={overall.accuracy:.2f} precision={overall.precision:.2f} "
    f"recall={overall.recall:.2f} f1={overall.f1:.2f}"
)
