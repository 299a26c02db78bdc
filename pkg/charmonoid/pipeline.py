import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .chartable import CharacterTable, character_table
from .classify import check_implications, classify
from .config import ENGINE_VERSION, Settings
from .datafile import (GroupCache, MonomialDataFile, SubgroupLattice, SubgroupRecord, TableRecord,
                       VectorsRecord, build_monomial_data, class_digest, export_monomial_data,
                       import_monomial_data)
from .errors import (DimensionMismatchError, InadmissibleOrderError, InputError, PreconditionError,
                     ResourceCapError)
from .groupspec import build, parse_group_spec
from .lfun import (hol_hilbert_basis, is_admissible, is_factorial, pole_indices, simple_zero_scenario,
                   theorem3_check, theorem4_check, violated_constraints)
from .models import ClassificationReport, HilbertBasis, MonomialVectorSet, OrderVector, SubgroupClass
from .monoid import hilbert_basis, lattice_rank, monomial_vectors
from .perm import PermGroup
from .subgroups import subgroup_conjugacy_classes

logger = logging.getLogger(__name__)

LFUN_COMMANDS = ("admissible", "hilbert", "factorial", "theorem3", "theorem4")

# groups from the source classification, with the flags it states for them
CORPUS: Dict[str, Dict[str, bool]] = {
    "SL(2,3)": {"monomial": False, "nam": True, "wam": True, "bam": True},
    "GL(2,3)": {"monomial": False, "nam": False, "wam": False, "bam": False},
    "Alt(5)": {"nam": True, "wam": True, "bam": True},
    "Alt(6)": {"monomial": False, "nam": False, "wam": True, "bam": True},
    "Mathieu(10)": {"nam": False, "wam": True},
    "SL(3,2)": {"wam": False},
    "SL(2,5)": {"wam": False},
    "SL(2,7)": {"wam": False},
    "SL(2,9)": {"wam": False},
    "Alt(7)": {"wam": False},
    "SL(2,11)": {"wam": False},
    "SL(2,13)": {"wam": False},
    "SL(2,17)": {"wam": False},
    "SL(2,19)": {"wam": False},
    "SL(3,3)": {"wam": False},
    "Mathieu(11)": {"wam": False},
    "SL(2,23)": {"wam": False},
    "SL(2,25)": {"wam": False},
}


@dataclass
class GroupAnalysis:
    descriptor: str
    group: PermGroup
    subgroups: List[SubgroupClass]
    table: CharacterTable
    vectors: MonomialVectorSet
    basis: HilbertBasis
    report: ClassificationReport
    data: MonomialDataFile

    def summary(self) -> dict:
        report = self.report
        cx = report.bam_counterexample
        return {
            "descriptor": self.descriptor,
            "order": self.group.order,
            "r": self.table.r,
            "degrees": list(self.table.degrees),
            "prime": self.table.prime,
            "subgroup_classes": len(self.subgroups),
            "monomial_vectors": len(self.vectors),
            "hilbert_basis": [list(v) for v in self.basis.basis],
            "lattice_rank": lattice_rank(self.basis),
            "flags": report.flags,
            "implications_hold": check_implications(report),
            "nam_witnesses": report.nam_witnesses,
            "wam_witnesses": report.wam_witnesses,
            "bam_counterexample": None if cx is None else {
                "k": cx.k, "psi": list(cx.psi.coefficients), "phi": list(cx.phi.coefficients)},
            "engine_version": ENGINE_VERSION,
            "seed": self.data.seed,
            "digest": self.data.digest,
        }


class Workbench:
    """
    Runs the classification pipeline: group, subgroup classes, character table,
    monomial vectors, Hilbert basis, flags. Expensive intermediates go through
    the on-disk cache.
    """
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()

    def build_group(self, text: str) -> Tuple[str, PermGroup]:
        spec = parse_group_spec(text)
        descriptor = spec.render()
        G = build(spec, self.settings.size_cap)
        G.check_cap(descriptor)
        logger.info("%s: order %d, degree %d", descriptor, G.order, G.degree)
        return descriptor, G

    def _cache(self, descriptor: str) -> GroupCache:
        return GroupCache(self.settings.cache_dir, descriptor, self.settings.use_cache)

    def subgroup_classes(self, G: PermGroup, cache: GroupCache) -> List[SubgroupClass]:
        digest = class_digest(G)
        cached = cache.load("subgroups", SubgroupLattice)
        if cached is not None and cached.class_digest == digest:
            return [record.to_class() for record in cached.classes]
        classes = subgroup_conjugacy_classes(G)
        cache.store("subgroups", SubgroupLattice(
            class_digest=digest, classes=[SubgroupRecord.from_class(s) for s in classes]))
        return classes

    def character_table(self, G: PermGroup, cache: GroupCache) -> CharacterTable:
        cached = cache.load("table", TableRecord)
        if cached is not None and cached.class_digest == class_digest(G) and cached.seed == self.settings.seed:
            return cached.to_table(G)
        T = character_table(G, self.settings.seed, self.settings.split_attempts)
        cache.store("table", TableRecord.from_table(G, T))
        return T

    def monomial_vectors(self, G: PermGroup, T: CharacterTable, subgroups: List[SubgroupClass],
                         cache: GroupCache) -> MonomialVectorSet:
        digest = class_digest(G)
        cached = cache.load("vectors", VectorsRecord)
        if cached is not None and cached.class_digest == digest and cached.r == T.r:
            return MonomialVectorSet(cached.r, tuple(tuple(v) for v in cached.vectors),
                                     tuple(tuple(w) for w in cached.witnesses))
        S = monomial_vectors(G, T, subgroups, self.settings.jobs)
        cache.store("vectors", VectorsRecord(class_digest=digest, r=S.r, vectors=[list(v) for v in S.vectors],
                                             witnesses=[list(w) for w in S.witnesses]))
        return S

    def analyze(self, text: str) -> GroupAnalysis:
        descriptor, G = self.build_group(text)
        cache = self._cache(descriptor)
        subgroups = self.subgroup_classes(G, cache)
        T = self.character_table(G, cache)
        S = self.monomial_vectors(G, T, subgroups, cache)
        HB = hilbert_basis(S)
        report = classify(HB, self.settings.jobs)
        data = build_monomial_data(descriptor, G, T, S, HB, report, self.settings.seed)
        return GroupAnalysis(descriptor, G, subgroups, T, S, HB, report, data)

    def run_classify(self, text: str, output: Optional[Path] = None) -> GroupAnalysis:
        """Classify and write the monomial data file, by default next to the cached intermediates."""
        analysis = self.analyze(text)
        if output is None and self.settings.use_cache:
            output = self.data_path(analysis.descriptor)
        if output is not None:
            export_monomial_data(analysis.data, output)
        return analysis

    def data_path(self, descriptor: str) -> Path:
        return self._cache(descriptor).directory / "monomial.json"

    def export(self, text: str, output: Path) -> MonomialDataFile:
        return self.run_classify(text, output).data

    def load_basis(self, source: str) -> Tuple[str, HilbertBasis]:
        """A Hilbert basis from an exported data file, or computed from a group descriptor."""
        if Path(source).is_file():
            data = import_monomial_data(source)
            return data.descriptor, data.to_basis()
        analysis = self.analyze(source)
        return analysis.descriptor, analysis.basis

    def run_lfun(self, command: str, d: Optional[Sequence[int]] = None, source: Optional[str] = None,
                 k: Optional[int] = None, bound: Optional[int] = None) -> dict:
        if command not in LFUN_COMMANDS:
            raise InputError(f"unknown lfun command {command!r}; expected one of {', '.join(LFUN_COMMANDS)}")
        bound = bound if bound is not None else self.settings.lfun_bound
        result: dict = {"command": command}
        order = OrderVector(tuple(int(x) for x in d)) if d is not None else None
        if order is not None:
            result["d"] = list(order.d)

        if command in ("hilbert", "factorial"):
            if order is None:
                raise PreconditionError(f"{command} needs an order vector d")
            hol = hol_hilbert_basis(order)
            result["hol_basis"] = [list(v) for v in hol.basis]
            if command == "factorial":
                result["factorial"] = is_factorial(hol)
            return result

        if source is None:
            raise PreconditionError(f"{command} needs a group descriptor or a monomial data file")
        descriptor, HB = self.load_basis(source)
        result["descriptor"] = descriptor
        if order is not None and order.r != HB.r:
            raise DimensionMismatchError(HB.r, order.r, "order vector")

        if command == "admissible":
            if order is None:
                raise PreconditionError("admissible needs an order vector d")
            result["admissible"] = is_admissible(order, HB)
            result["violated"] = violated_constraints(order, HB)
            result["poles"] = pole_indices(order)
            result["simple_zero"] = [j for j in range(HB.r) if simple_zero_scenario(order, j)]
            return result

        if command == "theorem3":
            if order is None:
                raise PreconditionError("theorem3 needs an order vector d")
            if not is_admissible(order, HB):
                violated = violated_constraints(order, HB)
                raise InadmissibleOrderError(f"d is not admissible for {descriptor}", violated)
            checks = [theorem3_check(HB, order)]
        else:
            ks = range(HB.r) if k is None else [k]
            if k is not None and not 0 <= k < HB.r:
                raise DimensionMismatchError(HB.r, k + 1, "character index")
            checks = [theorem4_check(HB, j, bound) for j in ks]
            result["bound"] = bound
        result["checks"] = [{"check": c.check, "verdict": c.verdict.value, "detail": c.detail,
                             "evidence": c.evidence} for c in checks]
        result["passed"] = all(c.passed for c in checks)
        return result

    def corpus(self, names: Optional[Sequence[str]] = None) -> List[dict]:
        """
        Classify corpus groups within the size cap against the flags recorded for them,
        and check that each basis spans the character lattice.
        """
        rows = []
        for name in names or list(CORPUS):
            expected = CORPUS.get(name, {})
            try:
                analysis = self.analyze(name)
            except ResourceCapError as exc:
                rows.append({"descriptor": name, "skipped": str(exc)})
                continue
            flags = analysis.report.flags
            mismatches = sorted(key for key, value in expected.items() if flags[key] != value)
            rank = lattice_rank(analysis.basis)
            zero_one = all(x in (0, 1) for v in analysis.basis.basis for x in v)
            rows.append({
                "descriptor": analysis.descriptor, "order": analysis.group.order, "r": analysis.table.r,
                "flags": flags, "expected": expected, "mismatches": mismatches,
                "implications_hold": check_implications(analysis.report),
                "lattice_rank": rank, "full_rank": rank == analysis.table.r,
                "zero_one_basis": zero_one,
                # on a 0/1 basis the weak and the strong separation coincide
                "zero_one_consistent": not zero_one or flags["wam"] == flags["nam"],
            })
        return rows


def corpus_row_ok(row: dict) -> bool:
    return (not row["mismatches"] and row["implications_hold"] and row["full_rank"]
            and row["zero_one_consistent"])


def run_classify(text: str, settings: Optional[Settings] = None, output: Optional[Path] = None) -> GroupAnalysis:
    return Workbench(settings).run_classify(text, output)


def run_lfun(command: str, d: Optional[Sequence[int]] = None, source: Optional[str] = None,
             k: Optional[int] = None, bound: Optional[int] = None, settings: Optional[Settings] = None) -> dict:
    return Workbench(settings).run_lfun(command, d, source, k, bound)
