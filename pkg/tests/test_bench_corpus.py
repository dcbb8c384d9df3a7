"""Tests for clsmooth.bench.corpus: the test-function corpus."""

from __future__ import annotations

import pytest

from clsmooth.bench.corpus import CORPUS, corpus_entries, get_entry, provider_for
from clsmooth.exceptions import PreconditionError
from clsmooth.smoothing.provider import provider_value


class TestCorpus:
    def test_names_unique(self):
        names = [e.name for e in CORPUS]
        assert len(names) == len(set(names)) == 10

    def test_filter_by_dimension(self):
        names = [e.name for e in corpus_entries(2)]
        assert names == ["quadratic-2d", "cosine-2d", "gaussian-2d", "full-rank-2d"]

    def test_exclude_exact_polynomials(self):
        names = {e.name for e in corpus_entries(exclude_exact=1)}
        assert "constant" not in names
        assert "affine" not in names
        assert "quadratic-2d" in names

    def test_every_entry_parses_to_its_shape(self):
        for entry in CORPUS:
            provider = provider_for(entry)
            assert provider.dimension == entry.dimension
            assert provider.target_dim == entry.target_dim

    def test_rank_one_components_are_proportional(self):
        value = provider_value(provider_for(get_entry("rank-one")), (0.7,))
        assert value[1] == pytest.approx(2.0 * value[0])
        assert value[2] == pytest.approx(-value[0])

    def test_unknown_entry(self):
        with pytest.raises(PreconditionError, match="unknown corpus function"):
            get_entry("tangent")
