import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from charmonoid.config import Settings, configure_logging
from charmonoid.pipeline import CORPUS, Workbench, corpus_row_ok


def verify_corpus(names=None):
    print("Classifying the reference corpus (monomial / NAM / WAM / BAM)...")
    settings = Settings()
    configure_logging(settings.log_level)
    bench = Workbench(settings)

    failures = 0
    for name in names or list(CORPUS):
        start = time.perf_counter()
        row = bench.corpus([name])[0]
        elapsed = time.perf_counter() - start
        if "skipped" in row:
            print(f"SKIP {name:<14} {row['skipped']}")
            continue
        ok = corpus_row_ok(row)
        failures += not ok
        flags = " ".join(f"{k}={int(v)}" for k, v in row["flags"].items())
        print(f"{'PASS' if ok else 'FAIL'} {name:<14} |G|={row['order']:<6} r={row['r']:<3} {flags}"
              f"  ({elapsed:.1f}s)")
        if row["mismatches"]:
            print(f"     expected {row['expected']}, differs on {', '.join(row['mismatches'])}")
        if not row["full_rank"]:
            print(f"     basis spans a lattice of rank {row['lattice_rank']}, expected {row['r']}")
        if not row["zero_one_consistent"]:
            print("     0/1 basis but WAM and NAM disagree")

    print(f"\nCorpus classification: {'PASS' if failures == 0 else f'FAIL ({failures})'}")
    return failures == 0


if __name__ == "__main__":
    sys.exit(0 if verify_corpus(sys.argv[1:]) else 1)
