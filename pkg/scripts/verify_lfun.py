import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from charmonoid.classify import is_wam
from charmonoid.config import Settings, configure_logging
from charmonoid.lfun import sample_admissible, theorem3_check, theorem4_check
from charmonoid.models import Verdict
from charmonoid.pipeline import Workbench

GROUPS = ("SL(2,3)", "Alt(6)")


def verify_theorem3(descriptor, HB, settings):
    # half of the samples are forced to carry a pole
    half = settings.theorem3_samples // 2
    samples = sample_admissible(HB, half, settings.lfun_bound, settings.seed) if half else []
    samples += sample_admissible(HB, settings.theorem3_samples - half, settings.lfun_bound,
                                 settings.seed + 1, require_negative=True)
    wam = is_wam(HB)[0]
    verdicts = [theorem3_check(HB, d, wam=wam).verdict for d in samples]
    failed = verdicts.count(Verdict.FAIL)
    print(f"{descriptor}: theorem3 over {len(samples)} admissible d, {failed} failures")
    return failed == 0 and len(samples) > 0


def verify_theorem4(descriptor, HB, bound):
    wam = is_wam(HB)[0]
    ok = True
    for k in range(HB.r):
        result = theorem4_check(HB, k, bound, wam=wam)
        print(f"  k={k + 1}: {result.verdict.value} ({result.detail})")
        ok &= result.passed
    print(f"{descriptor}: theorem4 for every k with bound {bound}")
    return ok


def verify_lfun():
    print("Verifying the order calculus at s0 on WAM basis data...")
    settings = Settings()
    configure_logging(settings.log_level)
    bench = Workbench(settings)

    results = {}
    for descriptor in GROUPS:
        _, HB = bench.load_basis(descriptor)
        results[f"{descriptor} theorem3"] = verify_theorem3(descriptor, HB, settings)
        results[f"{descriptor} theorem4"] = verify_theorem4(descriptor, HB, settings.lfun_bound)

    print()
    for name, ok in results.items():
        print(f"{name}: {'PASS' if ok else 'FAIL'}")
    return all(results.values())


if __name__ == "__main__":
    sys.exit(0 if verify_lfun() else 1)
