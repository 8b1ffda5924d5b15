"""Randomized invariants of neighbor search and both resamplers."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from app.adasyn import adasyn, adasyn_plan
from app.dataset import round_half_up
from app.models import SmoteConfig
from app.neighbors import knn
from app.smote import balance_count, smote, with_synthetic
from tests.helpers import make_dataset, random_instance

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=8)


@st.composite
def imbalanced(draw):
    m = draw(st.integers(min_value=2, max_value=25))
    n = draw(st.integers(min_value=m + 1, max_value=100))
    return random_instance(draw(seeds), m, n, draw(dims))


def _on_segment(ds, sample) -> bool:
    base, neighbor = ds.features[sample.base_index], ds.features[sample.neighbor_index]
    expected = base + sample.delta * (neighbor - base)
    return 0.0 <= sample.delta <= 1.0 and np.allclose(sample.features, expected, atol=1e-12)


@settings(max_examples=1000, deadline=None)
@given(seed=seeds, size=st.integers(min_value=1, max_value=200), dims=dims, k=st.integers(min_value=1, max_value=20))
def test_knn_matches_sorted_distances(seed, size, dims, k):
    rng = np.random.default_rng(seed)
    points = rng.normal(size=(size, dims))
    query = rng.normal(size=dims)
    k = min(k, size)
    found = knn(points, query, k)
    oracle = np.sort(np.linalg.norm(points - query, axis=1))[:k]
    assert np.allclose(found.distances, oracle, atol=1e-12)
    assert len(set(found.indices)) == k


@settings(max_examples=1000, deadline=None)
@given(ds=imbalanced(), n_synthetic=st.integers(min_value=0, max_value=50),
       k=st.integers(min_value=1, max_value=10), seed=seeds)
def test_smote_samples_are_convex_combinations(ds, n_synthetic, k, seed):
    samples = smote(ds, SmoteConfig(n_synthetic=n_synthetic, k=k, seed=seed))
    assert len(samples) == n_synthetic
    for sample in samples:
        assert ds.labels[sample.base_index] == ds.labels[sample.neighbor_index] == ds.positive_label
        assert sample.base_index != sample.neighbor_index
        assert _on_segment(ds, sample)


@settings(max_examples=1000, deadline=None)
@given(ds=imbalanced(), k=st.integers(min_value=1, max_value=10), seed=seeds)
def test_smote_balance_count_equalizes_classes(ds, k, seed):
    resampled = with_synthetic(ds, smote(ds, SmoteConfig(n_synthetic=balance_count(ds), k=k, seed=seed)))
    assert resampled.minority_count == resampled.majority_count


@settings(max_examples=1000, deadline=None)
@given(ds=imbalanced(), n_synthetic=st.integers(min_value=0, max_value=30),
       k=st.integers(min_value=1, max_value=10), seed=seeds)
def test_smote_ignores_majority_row_order(ds, n_synthetic, k, seed):
    m = ds.minority_count
    order = list(range(m)) + [m + int(i) for i in np.random.default_rng(seed).permutation(ds.majority_count)]
    cfg = SmoteConfig(n_synthetic=n_synthetic, k=k, seed=seed)
    original = [s.features.tolist() for s in smote(ds, cfg)]
    shuffled = [s.features.tolist() for s in smote(ds.take(order), cfg)]
    assert original == shuffled


@settings(max_examples=1000, deadline=None)
@given(ds=imbalanced(), beta=st.floats(min_value=0.01, max_value=1.0),
       k=st.integers(min_value=1, max_value=10), seed=seeds)
def test_adasyn_counts_sum_to_total(ds, beta, k, seed):
    plan = adasyn_plan(ds, beta, k)
    assert plan.total == round_half_up(beta * (ds.majority_count - ds.minority_count))
    assert sum(plan.counts) == plan.total
    assert all(count >= 0 for count in plan.counts)
    assert abs(sum(plan.weights) - 1.0) <= 1e-9
    samples = adasyn(ds, beta, k, seed)
    assert len(samples) == plan.total
    assert all(_on_segment(ds, sample) for sample in samples)


@settings(max_examples=1000, deadline=None)
@given(ds=imbalanced(), k=st.integers(min_value=1, max_value=10), seed=seeds)
def test_adasyn_full_beta_balances(ds, k, seed):
    resampled = with_synthetic(ds, adasyn(ds, 1.0, k, seed))
    assert resampled.minority_count == resampled.majority_count


@settings(max_examples=1000, deadline=None)
@given(ds=imbalanced(), beta=st.floats(min_value=0.01, max_value=1.0), k=st.integers(min_value=1, max_value=10))
def test_adasyn_harder_points_never_get_fewer_samples(ds, beta, k):
    entries = adasyn_plan(ds, beta, k).entries
    for a in entries:
        for b in entries:
            if a.majority_neighbors > b.majority_neighbors:
                assert a.count >= b.count


@settings(max_examples=1000, deadline=None)
@given(ds=imbalanced(), beta=st.floats(min_value=0.01, max_value=1.0),
       k=st.integers(min_value=1, max_value=10), seed=seeds)
def test_resamplers_are_deterministic_under_seed(ds, beta, k, seed):
    cfg = SmoteConfig(n_synthetic=balance_count(ds), k=k, seed=seed)
    assert [s.features.tolist() for s in smote(ds, cfg)] == [s.features.tolist() for s in smote(ds, cfg)]
    first = [s.features.tolist() for s in adasyn(ds, beta, k, seed)]
    assert first == [s.features.tolist() for s in adasyn(ds, beta, k, seed)]


@settings(max_examples=1000, deadline=None)
@given(m=st.integers(min_value=2, max_value=20), seed=seeds, dims=dims)
def test_smote_on_balanced_data_with_zero_count_adds_nothing(m, seed, dims):
    rng = np.random.default_rng(seed)
    ds = make_dataset(rng.normal(size=(m, dims)), rng.normal(size=(m, dims)))
    assert balance_count(ds) == 0
    assert smote(ds, SmoteConfig(n_synthetic=0, k=3, seed=seed)) == []
