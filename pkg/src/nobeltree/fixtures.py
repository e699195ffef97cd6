"""Synthetic datasets shipped with the package.

``mini_nobel``
    12 scholars, 10 laureates in all four fields (one dual-field winner),
    two family trees. Every tie class occurs.
``ped_b``
    A strict two-advisor pedigree with full siblings (``c1``/``c1s``),
    half siblings (``c1``/``c1h``), first cousins (``c1``/``c2``) and
    second cousins (``d1``/``d2``).
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .graph import GenealogyGraph
from .ingest import DatasetManifest, load_dataset

NAMES = ("mini_nobel", "ped_b")


def manifest_path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {NAMES}")
    return Path(str(resources.files("nobeltree") / "data" / f"{name}.json"))


def manifest(name: str) -> DatasetManifest:
    return DatasetManifest.from_json(manifest_path(name))


def load(name: str) -> GenealogyGraph:
    return load_dataset(manifest(name))
