"""Shared fixture loading for the test suite."""

from __future__ import annotations

import pathlib

from eltas.el import KnowledgeBase
from eltas.encoder import RepairPolicy, TranslatedTheory, encode_all
from eltas.normalizer import normalize_kb
from eltas.parser import parse_adl, parse_kb

DATA = pathlib.Path(__file__).parent / "data"


def read(name: str) -> str:
    return (DATA / name).read_text()


def load_kb(name: str) -> KnowledgeBase:
    kb, _ = normalize_kb(parse_kb(read(name)))
    return kb


def load_domain(adl: str, kb: str | None = None):
    base = load_kb(kb) if kb else KnowledgeBase()
    return parse_adl(read(adl), base)


def load_theory(
    adl: str,
    kb: str | None = None,
    mode: str = "strict",
    policy: RepairPolicy | None = None,
    full_exists: bool = False,
) -> TranslatedTheory:
    dd = load_domain(adl, kb)
    return encode_all(dd, mode=mode, policy=policy, full_exists=full_exists)
