"""Bundled machine corpus: discovery, name resolution, and closed-form relations."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from pathlib import Path

import yaml

import xduce.config as _cfg
from xduce.harness.oracle import Domain
from xduce.machines.model import Machine
from xduce.machines.textfmt import read_machine
from xduce.words import Word, enumerate_words

log = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
MANIFEST = "corpus.yaml"


@dataclass
class CorpusEntry:
    name: str
    path: Path
    summary: str
    relation: str | None = None
    domain: Domain | None = None
    trailing_bound: int | None = None

    @property
    def kind(self) -> str:
        return self.path.suffix.lstrip(".")

    def load(self) -> Machine:
        return read_machine(self.path)


class Corpus:
    def __init__(self, root: Path = CORPUS_DIR, extra_dirs: Iterable[str | Path] | None = None) -> None:
        self.root = root
        self.extra_dirs = [Path(d) for d in (extra_dirs if extra_dirs is not None else _cfg.get().corpus_dirs)]
        self._entries: dict[str, CorpusEntry] = {}

    def load(self) -> Corpus:
        """Read the manifest. Entries that fail to load are skipped with a warning."""
        self._entries.clear()
        manifest = self.root / MANIFEST
        try:
            data = yaml.safe_load(manifest.read_text(encoding="utf-8")) or {}
        except Exception as e:
            log.warning(f"Failed to read corpus manifest {manifest}: {e}")
            return self
        for raw in data.get("machines", []):
            try:
                entry = _parse_entry(self.root, raw)
            except Exception as e:
                log.warning(f"Skipping corpus entry {raw!r}: {e}")
                continue
            self._entries[entry.name] = entry
        log.info(f"Loaded {len(self._entries)} corpus machines from {self.root}")
        return self

    def get(self, name: str) -> CorpusEntry | None:
        return self._entries.get(name)

    def list_all(self) -> list[CorpusEntry]:
        return list(self._entries.values())

    def machine(self, name: str) -> Machine:
        entry = self.get(name)
        if entry is None:
            raise KeyError(f"no corpus machine named '{name}'")
        return entry.load()

    def resolve(self, path_or_name: str | Path) -> Path:
        """An existing path as given, else a file of that name in the extra dirs or the corpus."""
        path = Path(path_or_name)
        if path.exists():
            return path
        for d in self.extra_dirs:
            if (d / path.name).exists():
                return d / path.name
        entry = self.get(path.name)
        if entry is not None:
            return entry.path
        raise FileNotFoundError(f"no machine file '{path_or_name}' (not a path, not in the corpus)")


def _parse_entry(root: Path, raw: dict) -> CorpusEntry:
    name = str(raw["file"])
    path = root / name
    if not path.exists():
        raise FileNotFoundError(path)
    domain = raw.get("domain")
    return CorpusEntry(
        name=name,
        path=path,
        summary=str(raw.get("summary", "")).strip(),
        relation=raw.get("relation"),
        domain=Domain(int(domain[0]), int(domain[1])) if domain else None,
        trailing_bound=raw.get("trailing_bound"),
    )


_default: Corpus | None = None


def default_corpus() -> Corpus:
    global _default
    if _default is None:
        _default = Corpus().load()
    return _default


# ── Closed forms ──────────────────────────────────────────────────────────────
# Each relation is computed straight from its formula, never through a machine.

Pairs = set[tuple[Word, Word]]


def _l0_star(d: Domain) -> Pairs:
    blocks = [(("a", "a"), tuple("ababa")), (("a", "a"), tuple("ababab")), (("a", "b"), tuple("ababaa"))]
    found: Pairs = {((), ())}
    frontier = list(found)
    while frontier:
        nxt = []
        for a, u in frontier:
            for x, y in blocks:
                pair = (a + x, u + y)
                if len(pair[0]) <= d.max_input_len and len(pair[1]) <= d.max_output_len and pair not in found:
                    found.add(pair)
                    nxt.append(pair)
        frontier = nxt
    return found


def _marked_block(d: Domain) -> Pairs:
    found: Pairs = set()
    for i in range(d.max_input_len):
        for j in range(d.max_input_len - i - 2):
            head = ("0",) * i + ("1",) + ("0",) * j + ("1",)
            if i <= d.max_output_len:
                found.add((head + ("0",), ("0",) * i))
            if j <= d.max_output_len:
                found.add((head + ("1",), ("0",) * j))
    return found


def _at_most_double(d: Domain) -> Pairs:
    return {
        (("0",) * n, ("0",) * m)
        for n in range(d.max_input_len + 1)
        for m in range(min(2 * n, d.max_output_len) + 1)
    }


def _last_symbol(d: Domain) -> Pairs:
    found: Pairs = set()
    for w in enumerate_words(("0", "1"), d.max_input_len):
        if len(w) <= d.max_output_len:
            c = w[-1] if w and w[-1] == "0" else "1"
            found.add((w, (c,) * len(w)))
    return found


CLOSED_FORMS: dict[str, Callable[[Domain], Pairs]] = {
    "l0-star": _l0_star,
    "marked-block": _marked_block,
    "at-most-double": _at_most_double,
    "last-symbol": _last_symbol,
}


def closed_form(relation: str, d: Domain) -> Pairs:
    try:
        return CLOSED_FORMS[relation](d)
    except KeyError:
        raise KeyError(f"unknown relation '{relation}'") from None
