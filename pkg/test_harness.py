"""Tests for relation enumeration, bounded equivalence, random machines and the corpus."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xduce.errors import MachineValidationError
from xduce.harness import (
    Corpus,
    Domain,
    check_equivalence,
    closed_form,
    default_corpus,
    enumerate_relation,
    random_nft,
)
from xduce.machines import Nft


def corpus(name: str):
    return default_corpus().machine(name)


def w(text: str) -> tuple:
    return tuple(text)


# ── Enumeration ───────────────────────────────────────────────────────────────

def test_constr_small_domain():
    got = enumerate_relation(corpus("constr.nft"), Domain(2, 6))
    assert got == [((), ()), (w("aa"), w("ababa")), (w("aa"), w("ababab")), (w("ab"), w("ababaa"))], f"got {got}"


def test_le2n_tdfa_small_domain():
    got = enumerate_relation(corpus("le2n.tdfa"), Domain(1, 2))
    assert got == [((), ()), (w("0"), ()), (w("0"), w("0")), (w("0"), w("00"))]


def test_zero_domain():
    assert enumerate_relation(corpus("constr.nft"), Domain(0, 0)) == [((), ())]
    T = Nft(["q0", "q1"], ["a"], ["a"], "q0", {"q1"}, {("q0", "a"): {("q1", ())}})
    assert enumerate_relation(T, Domain(0, 0)) == []


def test_negative_domain_rejected():
    with pytest.raises(ValueError):
        Domain(-1, 2)


def test_parallel_enumeration_matches_serial():
    T = corpus("le2n.nft")
    d = Domain(4, 8)
    assert enumerate_relation(T, d, jobs=2) == enumerate_relation(T, d)


@pytest.mark.parametrize("entry", [e for e in default_corpus().list_all() if e.relation], ids=lambda e: e.name)
def test_corpus_machines_match_closed_forms(entry):
    got = set(enumerate_relation(entry.load(), entry.domain))
    want = closed_form(entry.relation, entry.domain)
    assert got == want, f"{entry.name}: extra {sorted(got - want)[:3]}, missing {sorted(want - got)[:3]}"


def test_unknown_closed_form():
    with pytest.raises(KeyError):
        closed_form("nope", Domain(1, 1))


# ── Equivalence ───────────────────────────────────────────────────────────────

def test_le2n_machines_agree():
    assert check_equivalence(corpus("le2n.nft"), corpus("le2n.tdfa"), Domain(6, 12)) is None


def test_counterexample_is_least_pair():
    T = corpus("le2n.nft")
    doubled = Nft(["q0"], ["0"], ["0"], "q0", {"q0"}, {("q0", "0"): {("q0", ()), ("q0", ("0",))}})
    found = check_equivalence(T, doubled, Domain(3, 6))
    assert (found.a, found.u, found.first, found.second) == (w("0"), w("00"), True, False), f"got {found}"


def test_alphabet_mismatch_rejected():
    with pytest.raises(MachineValidationError):
        check_equivalence(corpus("constr.nft"), corpus("le2n.nft"), Domain(1, 1))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_equivalence_is_symmetric(seed1, seed2):
    m1 = random_nft(seed1, 2, 2, 1, 0.5)
    m2 = random_nft(seed2, 2, 2, 1, 0.5)
    d = Domain(3, 3)
    found = check_equivalence(m1, m2, d)
    back = check_equivalence(m2, m1, d)
    assert (found is None) == (enumerate_relation(m1, d) == enumerate_relation(m2, d))
    assert (found is None) == (back is None)
    if found is not None:
        assert (back.a, back.u, back.first, back.second) == (found.a, found.u, found.second, found.first)
    assert check_equivalence(m1, m1, d) is None


# ── Random machines ───────────────────────────────────────────────────────────

def test_random_nft_is_deterministic_in_seed():
    assert random_nft(42, 5, 3, 2, 0.4) == random_nft(42, 5, 3, 2, 0.4)
    assert random_nft(42, 5, 3, 2, 0.4) != random_nft(43, 5, 3, 2, 0.4)


def test_random_nft_respects_parameters():
    T = random_nft(3, 6, 4, 2, 0.5)
    assert len(T.states) == 6
    assert T.input_alphabet == ("a", "b", "c", "d")
    assert all(len(out) <= 2 for opts in T.transitions.values() for _, out in opts)
    assert random_nft(3, 6, 4, 2, 0.0).transitions == {}


@pytest.mark.parametrize("density", [-0.1, 1.5])
def test_random_nft_rejects_bad_density(density):
    with pytest.raises(ValueError):
        random_nft(1, 2, 2, 1, density)


# ── Corpus registry ───────────────────────────────────────────────────────────

def test_corpus_lookup():
    c = default_corpus()
    entry = c.get("constr.nft")
    assert entry.trailing_bound == 1
    assert entry.domain == Domain(6, 24)
    assert c.get("missing.nft") is None
    with pytest.raises(KeyError):
        c.machine("missing.nft")


def test_resolve_prefers_existing_paths(tmp_path):
    f = tmp_path / "mine.nft"
    f.write_text("machine nft\nstates q\ninput a\noutput a\ninitial q\naccept q\n")
    c = Corpus(extra_dirs=[tmp_path]).load()
    assert c.resolve(str(f)) == f
    assert c.resolve("mine.nft") == f
    assert c.resolve("constr.nft").name == "constr.nft"
    with pytest.raises(FileNotFoundError):
        c.resolve("nowhere.nft")


def test_bad_manifest_entries_are_skipped(tmp_path):
    (tmp_path / "corpus.yaml").write_text("machines:\n  - file: gone.nft\n  - summary: no file\n")
    assert Corpus(tmp_path, extra_dirs=[]).load().list_all() == []
