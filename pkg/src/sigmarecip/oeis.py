"""OEIS b-file cache, parser and sequence comparison.

b-files live in a cache directory as ``bNNNNNN.txt``, stored byte for byte as
served by oeis.org.  Network access only happens when explicitly allowed.
Which generator corresponds to which A-number is kept as data in
``data/oeis_mapping.json``; entries without a confirmed generator list the
candidates to diff against once the b-file is available.
"""

from __future__ import annotations

import json
import re
import threading
import urllib.error
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from . import beatty, f2ps, seqgen
from .analysis import SeriesBook

A_NUMBER = re.compile(r"^A(\d{6})$")
BFILE_URL = "https://oeis.org/{a}/b{digits}.txt"
DEFAULT_CACHE = Path(__file__).with_name("data") / "bfiles"

#: Upper limit on the series precision used to regenerate set-valued sequences.
MAX_GENERATED_PRECISION = 1 << 24

_fetch_lock = threading.Lock()


class OEISError(Exception):
    pass


class NetworkUnavailable(OEISError):
    pass


class ParseError(OEISError):
    def __init__(self, message, lineno=None):
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)
        self.lineno = lineno


class EmptyOverlap(OEISError):
    pass


@dataclass(frozen=True)
class BFile:
    a_number: str
    entries: tuple[tuple[int, int], ...]
    source: str = "cache"

    @property
    def first_index(self) -> int:
        return self.entries[0][0]

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]


@dataclass(frozen=True)
class ComparisonResult:
    a_number: str
    matched_count: int
    first_mismatch: tuple[int, int, int] | None  # (index, expected, actual)
    offset_used: int

    @property
    def matched(self) -> bool:
        return self.first_mismatch is None

    def to_csv_row(self) -> str:
        idx = "" if self.first_mismatch is None else str(self.first_mismatch[0])
        return f"{self.a_number},{self.matched_count},{idx}"


def _digits(a_number: str) -> str:
    m = A_NUMBER.match(a_number)
    if not m:
        raise ValueError(f"malformed A-number {a_number!r}")
    return m.group(1)


def parse_bfile(text: str, a_number: str, source: str = "cache") -> BFile:
    entries: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'index value', got {raw!r}", lineno)
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer field in {raw!r}", lineno) from None
        if entries and index <= entries[-1][0]:
            raise ParseError(f"index {index} is not increasing", lineno)
        entries.append((index, value))
    if not entries:
        raise ParseError("b-file has no entries")
    return BFile(a_number, tuple(entries), source)


def cache_path(a_number: str, cache_dir: str | Path = DEFAULT_CACHE) -> Path:
    return Path(cache_dir) / f"b{_digits(a_number)}.txt"


def fetch_bfile(a_number: str, cache_dir: str | Path = DEFAULT_CACHE, allow_network: bool = False,
                timeout: float = 30.0) -> BFile:
    """Load a b-file from the cache, downloading it first if allowed."""
    path = cache_path(a_number, cache_dir)
    if path.exists():
        return parse_bfile(path.read_text(encoding="utf-8"), a_number, "cache")
    if not allow_network:
        raise NetworkUnavailable(f"{path} not cached and network fetch not enabled")
    url = BFILE_URL.format(a=a_number, digits=_digits(a_number))
    with _fetch_lock:
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp:
                raw = resp.read()
        except (urllib.error.URLError, OSError) as exc:
            raise NetworkUnavailable(f"could not fetch {url}: {exc}") from exc
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(raw)
    return parse_bfile(raw.decode("utf-8"), a_number, "network")


def compare_sequence(generated: Sequence[int], reference: BFile, offset: int | None = None) -> ComparisonResult:
    """Compare ``generated[0], generated[1], ...`` with reference indices ``offset, offset+1, ...``.

    ``offset`` defaults to the first index of the b-file.
    """
    if offset is None:
        offset = reference.first_index
    matched = 0
    overlap = 0
    for index, value in reference.entries:
        pos = index - offset
        if pos < 0 or pos >= len(generated):
            continue
        overlap += 1
        if generated[pos] != value:
            return ComparisonResult(reference.a_number, matched, (index, value, generated[pos]), offset)
        matched += 1
    if overlap == 0:
        raise EmptyOverlap(f"no overlap between generated terms and {reference.a_number}")
    return ComparisonResult(reference.a_number, matched, None, offset)


# -- generators addressable from the mapping table --------------------------------


def _set_elements(series_fn: Callable[[SeriesBook], f2ps.BitSeries], drop_zero: bool):
    def gen(count: int, max_value: int) -> list[int]:
        precision = min(max(max_value + 1, 16), MAX_GENERATED_PRECISION)
        idx = f2ps.to_indices(series_fn(SeriesBook(precision)))
        if drop_zero and idx and idx[0] == 0:
            idx = idx[1:]
        return idx[:count]
    return gen


def _beatty(kind: beatty.BeattyKind):
    return lambda count, max_value: beatty.beatty_sequence(kind, count)


GENERATORS: dict[str, Callable[[int, int], list[int]]] = {
    "sigma-values": lambda count, max_value: seqgen.sigma_values(count + 1)[1:],
    "sigma-positive": lambda count, max_value: beatty.enumerate_sigma(count),
    "sigma-bar": _set_elements(lambda b: b.sigma_bar, drop_zero=False),
    "sigma-bar-positive": _set_elements(lambda b: b.sigma_bar, drop_zero=True),
    "sigma-bar-class3": _set_elements(lambda b: f2ps.residue_extract(b.sigma_bar, 8, 3), False),
    "sigma-bar-class7": _set_elements(lambda b: f2ps.residue_extract(b.sigma_bar, 8, 7), False),
    "sigma-bar-v": _set_elements(lambda b: b.V, drop_zero=False),
    "sigma-bar-t": _set_elements(lambda b: b.T, drop_zero=False),
}
for _kind in beatty.BeattyKind:
    GENERATORS[f"beatty-{_kind.value}"] = _beatty(_kind)
del _kind


def load_mapping() -> dict[str, dict]:
    text = resources.files("sigmarecip").joinpath("data/oeis_mapping.json").read_text(encoding="utf-8")
    return json.loads(text)["sequences"]


def generate_for(name: str, reference: BFile) -> list[int]:
    return GENERATORS[name](len(reference.entries), max(abs(v) for v in reference.values))


def check(a_number: str, cache_dir: str | Path = DEFAULT_CACHE, allow_network: bool = False) -> ComparisonResult:
    """Compare the mapped generator for ``a_number`` against its b-file."""
    entry = load_mapping()[a_number]
    if not entry.get("generator"):
        raise KeyError(f"{a_number} has no confirmed generator; use discover()")
    ref = fetch_bfile(a_number, cache_dir, allow_network)
    return compare_sequence(generate_for(entry["generator"], ref), ref, entry.get("offset"))


def discover(a_number: str, cache_dir: str | Path = DEFAULT_CACHE, allow_network: bool = False) -> dict[str, ComparisonResult]:
    """Diff every candidate generator listed for ``a_number`` against its b-file."""
    entry = load_mapping()[a_number]
    names = entry.get("candidates") or ([entry["generator"]] if entry.get("generator") else [])
    ref = fetch_bfile(a_number, cache_dir, allow_network)
    return {name: compare_sequence(generate_for(name, ref), ref, entry.get("offset")) for name in names}
