import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Type, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from .chartable import CharacterTable
from .config import ENGINE_VERSION, SCHEMA_VERSION
from .errors import DataFileError, DigestMismatchError, SchemaVersionError
from .models import ClassificationReport, HilbertBasis, MonomialVectorSet, SubgroupClass
from .perm import PermGroup

logger = logging.getLogger(__name__)

Record = TypeVar("Record", bound=BaseModel)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def stable_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def class_digest(G: PermGroup) -> str:
    return stable_hash([[c.size, c.element_order, list(c.representative)] for c in G.classes])


def atomic_write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = None
    try:
        with tempfile.NamedTemporaryFile("w", dir=path.parent, delete=False, encoding="utf-8",
                                         prefix=path.name, suffix=".tmp") as handle:
            tmp = handle.name
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if tmp is not None and os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- monomial data file ------------------------------------------------------

class MonomialDataFile(BaseModel):
    schema_version: int
    descriptor: str
    order: int
    r: int
    degrees: List[int]
    class_digest: str
    prime: int
    vectors: List[List[int]]
    witnesses: List[List[int]]
    hilbert_basis: List[List[int]]
    flags: Dict[str, bool]
    engine_version: str
    seed: int
    digest: str = ""

    def content_digest(self) -> str:
        return stable_hash(self.model_dump(exclude={"digest"}))

    def to_vector_set(self) -> MonomialVectorSet:
        return MonomialVectorSet(self.r, tuple(tuple(v) for v in self.vectors),
                                 tuple(tuple(w) for w in self.witnesses))

    def to_basis(self) -> HilbertBasis:
        return HilbertBasis(self.r, tuple(tuple(v) for v in self.hilbert_basis))


def build_monomial_data(descriptor: str, G: PermGroup, T: CharacterTable, S: MonomialVectorSet,
                        HB: HilbertBasis, report: ClassificationReport, seed: int) -> MonomialDataFile:
    data = MonomialDataFile(
        schema_version=SCHEMA_VERSION, descriptor=descriptor, order=G.order, r=T.r,
        degrees=list(T.degrees), class_digest=class_digest(G), prime=T.prime,
        vectors=[list(v) for v in S.vectors], witnesses=[list(w) for w in S.witnesses],
        hilbert_basis=[list(v) for v in HB.basis], flags=report.flags,
        engine_version=ENGINE_VERSION, seed=seed,
    )
    data.digest = data.content_digest()
    return data


def export_monomial_data(data: MonomialDataFile, path) -> Path:
    path = Path(path)
    atomic_write_text(path, canonical_json(data.model_dump()) + "\n")
    logger.info("wrote monomial data for %s to %s", data.descriptor, path)
    return path


def validate_monomial_data(data: MonomialDataFile) -> MonomialDataFile:
    if data.schema_version != SCHEMA_VERSION:
        raise SchemaVersionError(f"schema version {data.schema_version}, expected {SCHEMA_VERSION}")
    if data.digest != data.content_digest():
        raise DigestMismatchError(f"digest of {data.descriptor} does not match its content")
    if len(data.degrees) != data.r or any(len(v) != data.r for v in data.vectors + data.hilbert_basis):
        raise DataFileError(f"vectors of {data.descriptor} do not all have dimension {data.r}")
    if not {tuple(v) for v in data.hilbert_basis} <= {tuple(v) for v in data.vectors}:
        raise DataFileError(f"Hilbert basis of {data.descriptor} is not contained in its vector set")
    return data


def import_monomial_data(path) -> MonomialDataFile:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        data = MonomialDataFile.model_validate(raw)
    except (OSError, ValueError, ValidationError) as exc:
        raise DataFileError(f"cannot read monomial data from {path}: {exc}") from exc
    return validate_monomial_data(data)


# -- cache -------------------------------------------------------------------

class SubgroupRecord(BaseModel):
    index: int
    order: int
    class_length: int
    normalizer_order: int
    key: str  # hex bitset
    elements: List[int]
    generators: List[int]
    h_class_of: List[int]
    h_class_sizes: List[int]
    h_class_reps: List[int]

    @classmethod
    def from_class(cls, sub: SubgroupClass) -> "SubgroupRecord":
        return cls(index=sub.index, order=sub.order, class_length=sub.class_length,
                   normalizer_order=sub.normalizer_order, key=format(sub.key, "x"),
                   elements=list(sub.elements), generators=list(sub.generators),
                   h_class_of=list(sub.h_class_of), h_class_sizes=list(sub.h_class_sizes),
                   h_class_reps=list(sub.h_class_reps))

    def to_class(self) -> SubgroupClass:
        return SubgroupClass(self.index, self.order, self.class_length, self.normalizer_order,
                             int(self.key, 16), tuple(self.elements), tuple(self.generators),
                             tuple(self.h_class_of), tuple(self.h_class_sizes), tuple(self.h_class_reps))


class SubgroupLattice(BaseModel):
    class_digest: str
    classes: List[SubgroupRecord]


class TableRecord(BaseModel):
    class_digest: str
    degrees: List[int]
    values: List[List[int]]
    prime: int
    omega: int
    exponent: int
    seed: int

    @classmethod
    def from_table(cls, G: PermGroup, T: CharacterTable) -> "TableRecord":
        return cls(class_digest=class_digest(G), degrees=list(T.degrees), values=T.values.tolist(),
                   prime=T.prime, omega=T.omega, exponent=T.exponent, seed=T.seed)

    def to_table(self, G: PermGroup) -> CharacterTable:
        return CharacterTable(G.order, tuple(self.degrees), np.array(self.values, dtype=np.int64),
                              tuple(G.classes), tuple(int(c) for c in G.inverse_class),
                              self.prime, self.omega, self.exponent, self.seed)


class VectorsRecord(BaseModel):
    class_digest: str
    r: int
    vectors: List[List[int]]
    witnesses: List[List[int]]


class CacheEnvelope(BaseModel):
    schema_version: int
    engine_version: str
    descriptor: str
    kind: str
    digest: str
    payload: dict


class GroupCache:
    """
    One directory per (descriptor, engine version). Unreadable, stale or
    tampered entries count as misses and are recomputed by the caller.
    """
    def __init__(self, cache_dir, descriptor: str, enabled: bool = True):
        self.descriptor = descriptor
        self.enabled = enabled
        key = hashlib.sha256(f"{descriptor}|{ENGINE_VERSION}".encode("utf-8")).hexdigest()[:32]
        self.directory = Path(cache_dir) / key

    def _path(self, kind: str) -> Path:
        return self.directory / f"{kind}.json"

    def load(self, kind: str, model: Type[Record]) -> Optional[Record]:
        if not self.enabled:
            return None
        path = self._path(kind)
        if not path.exists():
            logger.info("cache miss: %s for %s", kind, self.descriptor)
            return None
        try:
            envelope = CacheEnvelope.model_validate(json.loads(path.read_text(encoding="utf-8")))
            if (envelope.schema_version != SCHEMA_VERSION or envelope.engine_version != ENGINE_VERSION
                    or envelope.descriptor != self.descriptor or envelope.kind != kind):
                raise DataFileError("stale cache entry")
            if stable_hash(envelope.payload) != envelope.digest:
                raise DigestMismatchError("cache payload digest mismatch")
            record = model.model_validate(envelope.payload)
        except (OSError, ValueError, ValidationError, DataFileError) as exc:
            logger.warning("discarding cache entry %s: %s", path, exc)
            return None
        logger.info("cache hit: %s for %s", kind, self.descriptor)
        return record

    def store(self, kind: str, record: BaseModel):
        if not self.enabled:
            return
        payload = record.model_dump()
        envelope = CacheEnvelope(schema_version=SCHEMA_VERSION, engine_version=ENGINE_VERSION,
                                 descriptor=self.descriptor, kind=kind, digest=stable_hash(payload),
                                 payload=payload)
        atomic_write_text(self._path(kind), canonical_json(envelope.model_dump()))

