from xduce.harness.corpus import Corpus, CorpusEntry, closed_form, default_corpus
from xduce.harness.oracle import Counterexample, Domain, check_equivalence, enumerate_relation
from xduce.harness.randgen import random_nft

__all__ = [
    "Corpus",
    "CorpusEntry",
    "Counterexample",
    "Domain",
    "check_equivalence",
    "closed_form",
    "default_corpus",
    "enumerate_relation",
    "random_nft",
]
