import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from charmonoid.config import Settings, configure_logging
from charmonoid.errors import ResourceCapError
from charmonoid.pipeline import Workbench

# small non-monomial groups known to be BAM
FACTORS = ("SL(2,3)", "Alt(6)", "Direct(SL(2,3),Cyclic(2))")


def search_products(factors=FACTORS):
    """
    Classify G1 x G2 for pairs of BAM factors and report any product that is WAM but not BAM.
    Finding nothing says nothing about the general question.
    """
    print("Searching direct products for WAM groups that are not BAM...")
    settings = Settings()
    configure_logging(settings.log_level)
    bench = Workbench(settings)

    found = []
    for left, right in itertools.combinations_with_replacement(factors, 2):
        descriptor = f"Direct({left},{right})"
        try:
            analysis = bench.analyze(descriptor)
        except ResourceCapError as exc:
            print(f"SKIP {descriptor}: {exc}")
            continue
        report = analysis.report
        print(f"{descriptor}: |G|={analysis.group.order} r={analysis.table.r} "
              f"wam={int(report.wam)} bam={int(report.bam)}")
        if report.wam and not report.bam:
            found.append(descriptor)

    if found:
        print(f"\nWAM but not BAM: {', '.join(found)}")
    else:
        print("\nNo WAM group without BAM among the products searched.")
    return found


if __name__ == "__main__":
    search_products(tuple(sys.argv[1:]) or FACTORS)
