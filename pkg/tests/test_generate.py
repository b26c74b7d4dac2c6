import importlib

import numpy as np
import pytest

import oracles
from tubalpf.cone import ConeClass, classify_tubes
from tubalpf.errors import GenerationError
from tubalpf.generate import InstanceSpec, generate
from tubalpf.irreducibility import is_irreducible_power, is_reducible_scc, is_reducible_subset
from tubalpf.pfverify import Status, check_enhanced_pf

gen = importlib.import_module("tubalpf.generate")


def test_same_seed_same_tensor():
    spec = InstanceSpec(4, 3, 0.5, (0, 2), seed=42)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(InstanceSpec(4, 3, 0.5, (0, 2), seed=43))


def test_seed_matches_pcg64_stream():
    spec = InstanceSpec(2, 2, 1.0, (0, 1), seed=7)
    rng = np.random.Generator(np.random.PCG64(7))
    rng.random((2, 2, 2))
    assert np.array_equal(generate(spec).data, rng.uniform(0, 1, (2, 2, 2)))


def test_sparse_irreducible_passes_all_tests():
    for seed in range(30):
        A = generate(InstanceSpec(4, 3, 0.2, (0, 1), seed, "irreducible"))
        assert oracles.reach_all(A.data)
        assert is_reducible_subset(A).irreducible
        assert is_reducible_scc(A).irreducible
        assert is_irreducible_power(A).irreducible


def test_strong_tube_makes_enhanced_checks_apply():
    for seed in range(20):
        A = generate(InstanceSpec(3, 2, 0.3, (0, 1), seed, "irreducible_with_strong_tube"))
        assert (classify_tubes(A) == ConeClass.STRONGLY_POSITIVE).any()
        assert all(it.status is Status.PASS for it in check_enhanced_pf(A))


def test_integer_mode_and_range():
    A = generate(InstanceSpec(3, 4, 0.7, (2, 5), seed=1, integer=True))
    assert A.data.dtype.kind == "i"
    nz = A.data[A.data != 0]
    assert nz.min() >= 2 and nz.max() <= 5


def test_density_extremes():
    assert not generate(InstanceSpec(3, 2, 0.0)).data.any()
    assert (generate(InstanceSpec(3, 2, 1.0, (1, 2))).data > 0).all()


def test_cycle_fallback(monkeypatch):
    monkeypatch.setattr(gen, "MAX_REJECTIONS", 1)
    A = generate(InstanceSpec(6, 2, 0.01, (0, 1), seed=3, ensure="irreducible"))
    assert is_reducible_scc(A).irreducible


@pytest.mark.parametrize("spec", [
    InstanceSpec(0, 2),
    InstanceSpec(2, 2, density=1.5),
    InstanceSpec(2, 2, value_range=(2, 1)),
    InstanceSpec(2, 2, ensure="magic"),
    InstanceSpec(2, 2, density=0.0, ensure="irreducible"),
    InstanceSpec(2, 2, value_range=(-1, 0), ensure="irreducible"),
    InstanceSpec(2, 2, seed=-1),
])
def test_bad_specs(spec):
    with pytest.raises(GenerationError):
        generate(spec)
