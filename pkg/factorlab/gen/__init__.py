from .corpus import (CorpusSpec, count, dump, enumerate_terms, load, redex_coverage, substitution_pool,
                     substitution_triples)
