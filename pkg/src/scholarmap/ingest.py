"""Load researcher datasets from CSV into typed records.

The dataset is a single UTF-8 CSV with one row per researcher. Publication
lists are JSON arrays embedded in their cells; keywords are a
semicolon-separated cell.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import DuplicateIdError, RowError, SchemaError

REQUIRED_COLUMNS = [
    "name",
    "scholar_url",
    "most_cited_publications",
    "most_recent_publications",
    "keywords",
    "citation_count",
    "affiliation",
    "photo_url",
]

MAX_PUBLICATIONS_PER_SET = 50

_SLUG_RE = re.compile(r"[^a-z0-9]+")


class PublicationSet(str, Enum):
    MOST_CITED = "cited"
    MOST_RECENT = "recent"


@dataclass(frozen=True)
class Publication:
    title: str
    abstract: str = ""
    year: int | None = None


@dataclass(frozen=True)
class Researcher:
    id: str
    name: str
    scholar_url: str
    most_cited: tuple[Publication, ...]
    most_recent: tuple[Publication, ...]
    keywords: tuple[str, ...]
    citation_count: int
    affiliation: str
    photo_url: str = ""


@dataclass(frozen=True)
class Dataset:
    researchers: tuple[Researcher, ...]
    source_digest: str
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def by_id(self, researcher_id: str) -> Researcher | None:
        for r in self.researchers:
            if r.id == researcher_id:
                return r
        return None


def slugify(name: str) -> str:
    slug = _SLUG_RE.sub("-", name.lower()).strip("-")
    return slug


def _parse_publications(cell: str, row: int, fieldname: str, warnings: list[str]) -> tuple[Publication, ...]:
    cell = cell.strip()
    if not cell:
        return ()
    try:
        raw = json.loads(cell)
    except json.JSONDecodeError as exc:
        raise RowError(row, fieldname, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(raw, list):
        raise RowError(row, fieldname, "expected a JSON array")
    pubs = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise RowError(row, fieldname, f"entry {i} is not an object")
        title = str(entry.get("title", "") or "").strip()
        if not title:
            raise RowError(row, fieldname, f"entry {i} has an empty title")
        abstract = str(entry.get("abstract", "") or "")
        year = entry.get("year")
        if year is not None:
            try:
                year = int(year)
            except (TypeError, ValueError):
                raise RowError(row, fieldname, f"entry {i} has a non-integer year") from None
            if not 1800 <= year <= 2200:
                raise RowError(row, fieldname, f"entry {i} year {year} outside [1800, 2200]")
        pubs.append(Publication(title=title, abstract=abstract, year=year))
    if len(pubs) > MAX_PUBLICATIONS_PER_SET:
        warnings.append(f"row {row}: {fieldname} has {len(pubs)} entries, truncated to {MAX_PUBLICATIONS_PER_SET}")
        pubs = pubs[:MAX_PUBLICATIONS_PER_SET]
    return tuple(pubs)


def parse_dataset(csv_bytes: bytes) -> Dataset:
    """Parse a researcher CSV. Row indices in errors are 1-based data rows."""
    digest = hashlib.sha256(csv_bytes).hexdigest()
    text = csv_bytes.decode("utf-8")
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise SchemaError(missing)

    warnings: list[str] = []
    researchers: list[Researcher] = []
    seen_slugs: dict[str, int] = {}
    ids: set[str] = set()
    for row_idx, row in enumerate(reader, start=1):
        name = (row.get("name") or "").strip()
        if not name:
            raise RowError(row_idx, "name", "empty name")

        count_cell = (row.get("citation_count") or "").strip()
        try:
            citation_count = int(count_cell)
        except ValueError:
            raise RowError(row_idx, "citation_count", f"not an integer: {count_cell!r}") from None
        if citation_count < 0:
            raise RowError(row_idx, "citation_count", f"negative: {citation_count}")

        most_cited = _parse_publications(row.get("most_cited_publications") or "", row_idx, "most_cited_publications", warnings)
        most_recent = _parse_publications(row.get("most_recent_publications") or "", row_idx, "most_recent_publications", warnings)

        keywords = tuple(k.strip() for k in (row.get("keywords") or "").split(";") if k.strip())

        slug = slugify(name)
        if not slug:
            raise RowError(row_idx, "name", f"name {name!r} produces an empty id slug")
        n_seen = seen_slugs.get(slug, 0)
        seen_slugs[slug] = n_seen + 1
        rid = slug if n_seen == 0 else f"{slug}-{n_seen + 1}"
        if rid in ids:
            raise DuplicateIdError(rid)
        ids.add(rid)

        researchers.append(
            Researcher(
                id=rid,
                name=name,
                scholar_url=(row.get("scholar_url") or "").strip(),
                most_cited=most_cited,
                most_recent=most_recent,
                keywords=keywords,
                citation_count=citation_count,
                affiliation=(row.get("affiliation") or "").strip(),
                photo_url=(row.get("photo_url") or "").strip(),
            )
        )

    return Dataset(researchers=tuple(researchers), source_digest=digest, warnings=tuple(warnings))


def serialize_dataset(dataset: Dataset) -> bytes:
    """Write a Dataset back to the CSV schema (canonical form)."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REQUIRED_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in dataset.researchers:
        writer.writerow(
            {
                "name": r.name,
                "scholar_url": r.scholar_url,
                "most_cited_publications": _publications_json(r.most_cited),
                "most_recent_publications": _publications_json(r.most_recent),
                "keywords": ";".join(r.keywords),
                "citation_count": str(r.citation_count),
                "affiliation": r.affiliation,
                "photo_url": r.photo_url,
            }
        )
    return buf.getvalue().encode("utf-8")


def _publications_json(pubs: tuple[Publication, ...]) -> str:
    return json.dumps(
        [{"title": p.title, "abstract": p.abstract, "year": p.year} for p in pubs],
        ensure_ascii=False,
    )


def select_publication_set(r: Researcher, pub_set: PublicationSet) -> tuple[Publication, ...]:
    if pub_set == PublicationSet.MOST_CITED:
        return r.most_cited
    return r.most_recent
