"""File-backed catalog of explicit stabilizer codes, plus the hashing-vs-breeding report.

Catalog format (line oriented, UTF-8, '#' comments, blank-line separated):

    code <name> p=<p> n=<n> k=<k> d=<d> pure=<0|1>
    <a-digits>|<b-digits>          (n - k generator lines)

Claimed parameters are recomputed at load; any mismatch is a hard error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import symplectic as sp
from .breeding import BreedingProtocolSpec, convert_pure
from .codes import CodeConstructionError, StabilizerCode


class CatalogError(ValueError):
    pass


_HEADER = re.compile(
    r"^code\s+(?P<name>\S+)\s+p=(?P<p>\d+)\s+n=(?P<n>\d+)\s+k=(?P<k>\d+)"
    r"\s+d=(?P<d>\d+)\s+pure=(?P<pure>[01])$"
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: StabilizerCode
    d: int
    pure: bool
    provenance: str = ""

    @property
    def generator_strings(self) -> List[str]:
        return [sp.to_string(row) for row in self.code.stab.basis]


def load_catalog(text: str, source: str = "<catalog>") -> List[CatalogEntry]:
    entries: List[CatalogEntry] = []
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i].split("#", 1)[0].rstrip()
        if not raw.strip():
            i += 1
            continue
        m = _HEADER.match(raw.strip())
        if not m:
            raise CatalogError(f"{source}:{i + 1}: expected a 'code' header, got {raw!r}")
        name = m["name"]
        p, n, k, d = (int(m[g]) for g in ("p", "n", "k", "d"))
        pure = m["pure"] == "1"
        i += 1
        rows = []
        while i < len(lines):
            gen_raw = lines[i].split("#", 1)[0].strip()
            if not gen_raw or gen_raw.startswith("code "):
                break
            i += 1
            try:
                rows.append(sp.from_string(gen_raw, p))
            except ValueError as exc:
                raise CatalogError(f"{source}:{i}: entry {name!r}: {exc}") from exc
            if len(rows[-1]) != 2 * n:
                raise CatalogError(
                    f"{source}:{i}: entry {name!r}: generator has {len(rows[-1]) // 2} "
                    f"positions, expected {n}"
                )
        if len(rows) != n - k:
            raise CatalogError(
                f"{source}: entry {name!r} claims k={k} but ships {len(rows)} generator "
                f"lines (expected {n - k})"
            )
        try:
            code = StabilizerCode(p, n, rows)
        except CodeConstructionError as exc:
            raise CatalogError(f"{source}: entry {name!r}: {exc}") from exc
        if code.k != k:
            raise CatalogError(
                f"{source}: entry {name!r} claims k={k} but recomputed k={code.k}"
            )
        if code.distance != d:
            raise CatalogError(
                f"{source}: entry {name!r} claims d={d} but recomputed d={code.distance}"
            )
        if bool(code.is_pure) != pure:
            raise CatalogError(
                f"{source}: entry {name!r} claims pure={int(pure)} but recomputed "
                f"pure={int(bool(code.is_pure))}"
            )
        entries.append(CatalogEntry(name, code, d, pure, provenance=source))
    return entries


def load_catalog_file(path: str) -> List[CatalogEntry]:
    with open(path, encoding="utf-8") as fh:
        return load_catalog(fh.read(), source=path)


def builtin_catalog() -> List[CatalogEntry]:
    text = resources.files("breedsim").joinpath("data/codes.txt").read_text("utf-8")
    return load_catalog(text, source="builtin")


def find_entry(entries: Sequence[CatalogEntry], name: str) -> CatalogEntry:
    for entry in entries:
        if entry.name == name:
            return entry
    known = ", ".join(e.name for e in entries)
    raise CatalogError(f"no catalog entry named {name!r} (known: {known})")


@dataclass(frozen=True)
class ReportRow:
    kind: str  # "hashing" | "breeding"
    name: str
    noisy_pairs: int
    preshared: int
    gross: int
    net: int
    d: int
    dominant: bool = False


def _guarantee_pairs(d: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(
        (t, e) for e in range(d) for t in range((d - e - 1) // 2 + 1) if 2 * t + e < d
    )


def compare_report(
    entries: Sequence[CatalogEntry],
    noisy_pairs: Optional[int] = None,
    correction: Optional[Tuple[int, int]] = None,
) -> List[ReportRow]:
    """Hashing and breeding rows for every catalog code and admissible puncturing.

    Breeding rows puncture the last c positions for c = 1 .. d-1. A breeding
    row is flagged dominant when no hashing row with the same noisy-pair count
    and at-least-as-strong guarantee achieves at least its net yield.
    """
    rows: List[ReportRow] = []
    for entry in entries:
        code = entry.code
        rows.append(
            ReportRow("hashing", entry.name, code.n, 0, code.k, code.k, entry.d)
        )
        for c in range(1, entry.d):
            spec = convert_pure(code, range(code.n - c, code.n))
            rows.append(
                ReportRow(
                    "breeding",
                    entry.name,
                    spec.params.n,
                    c,
                    spec.params.gross_k,
                    spec.params.net_yield,
                    entry.d,
                )
            )
    if noisy_pairs is not None:
        rows = [r for r in rows if r.noisy_pairs == noisy_pairs]
    if correction is not None:
        t, e = correction
        rows = [r for r in rows if 2 * t + e < r.d]
    hashing = [r for r in rows if r.kind == "hashing"]
    out: List[ReportRow] = []
    for r in rows:
        if r.kind != "breeding":
            out.append(r)
            continue
        dominated = any(
            h.noisy_pairs == r.noisy_pairs and h.d >= r.d and h.net >= r.net
            for h in hashing
        )
        out.append(ReportRow(r.kind, r.name, r.noisy_pairs, r.preshared, r.gross, r.net, r.d, not dominated))
    return out
