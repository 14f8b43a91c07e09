import json

import numpy as np
import pytest

from dualhs.charsuite import (
    GENERATOR_KINDS,
    Analysis,
    GeneratorConfig,
    PropertyId,
    TheoremId,
    Verdict,
    definitional_residual,
    definitional_test,
    equivalence_suite,
    random_dual_matrix,
    run_trials,
    structural_test,
    sufficiency_test,
)
from dualhs.charsuite import ConditionResult, EquivalenceReport, _judge_equivalent, _judge_implication
from dualhs.errors import NotSquare
from dualhs.hs import hs_decompose
from dualhs.matrix import DualMatrix, ToleranceConfig, class_residual, dm_identity

NIL = DualMatrix([[0, 1], [0, 0]])
DIAG = DualMatrix(np.diag([1.0, 0]), np.diag([0.0, 1]))
STRICT = ToleranceConfig(eq_abs_tol=1e-10, eq_rel_tol=1e-10)


@pytest.mark.parametrize("p", list(PropertyId))
def test_identity_has_every_property(p):
    assert definitional_test(dm_identity(3), p)
    assert structural_test(hs_decompose(dm_identity(3)), p)


def test_definitional_examples():
    assert not definitional_test(NIL, "new_dual_ep")
    assert definitional_test(DualMatrix(np.diag([1.0, 2]), np.diag([1.0, 0])), "hermitian")
    with pytest.raises(NotSquare):
        definitional_test(DualMatrix(np.ones((2, 3))), "normal")


def test_structural_examples():
    assert not structural_test(hs_decompose(NIL), "new_dual_ep")
    assert structural_test(hs_decompose(DIAG), "new_dual_ep")


def test_sufficiency_examples():
    for cond in ("AAA^N=A*", "AA*A^N=A", "AA*A^N=A*", "A^NA*A=A*", "AeA*Ae#=A*Ae#Ae"):
        assert sufficiency_test(dm_identity(2), cond) == (True, True)
    pre, _ = sufficiency_test(NIL, "AeA*Ae#=Ae#AeA*")
    assert pre is None
    with pytest.raises(KeyError):
        sufficiency_test(NIL, "nonsense")


def test_nilpotent_ndep_suite():
    rep = equivalence_suite(NIL, "ndep-equiv")
    c = rep.conditions
    assert not c["(i) new dual EP"].holds
    assert not c["(ii) AA^NA*=A*AA^N"].holds and not c["(iii) A*A^NA=A^NAA*"].holds
    assert all(not v.applicable for k, v in c.items() if "Ae#" in k)
    assert rep.verdict is Verdict.CONSISTENT


@pytest.mark.parametrize("seed", range(5))
def test_normal_generated_satisfies_all_seven(seed):
    a = random_dual_matrix(GeneratorConfig("normal", 5, seed))
    rep = equivalence_suite(a, "normal-equiv")
    assert all(c.holds for c in rep.conditions.values() if c.applicable)
    assert rep.verdict is Verdict.CONSISTENT


@pytest.mark.parametrize("seed", range(5))
def test_new_dual_ep_generated_satisfies_suite(seed):
    a = random_dual_matrix(GeneratorConfig("new_dual_ep", 5, seed))
    rep = equivalence_suite(a, "ndep-equiv")
    assert all(c.holds for c in rep.conditions.values() if c.applicable)


GENERATOR_IDENTITY = {
    "hermitian": lambda a: class_residual(a, "hermitian", STRICT),
    "normal": lambda a: class_residual(a, "normal", STRICT),
    "dual_unitary": lambda a: class_residual(a, "dual_unitary", STRICT),
    "projector": lambda a: max(class_residual(a, "hermitian", STRICT), class_residual(a, "idempotent", STRICT)),
    "new_dual_ep": lambda a: definitional_residual(a, "new_dual_ep", STRICT),
    "pure_infinitesimal": lambda a: float(np.abs(a.std).max()) / 1e-10,
    "invertible_std": lambda a: 1e-10 / np.linalg.svd(a.std, compute_uv=False)[-1],
}


@pytest.mark.parametrize("kind", sorted(GENERATOR_IDENTITY))
def test_generators_satisfy_their_identity(kind):
    for seed in range(20):
        for n in (1, 3, 6):
            a = random_dual_matrix(GeneratorConfig(kind, n, seed))
            assert GENERATOR_IDENTITY[kind](a) <= 1, (kind, seed, n)


def test_generator_examples():
    assert class_residual(random_dual_matrix(GeneratorConfig("hermitian", 4, 7)), "hermitian") <= 1
    assert class_residual(random_dual_matrix(GeneratorConfig("dual_unitary", 3, 1)), "dual_unitary") <= 1


@pytest.mark.parametrize("kind", GENERATOR_KINDS)
def test_generators_are_deterministic(kind):
    a = random_dual_matrix(GeneratorConfig(kind, 4, 99))
    b = random_dual_matrix(GeneratorConfig(kind, 4, 99))
    assert np.array_equal(a.std, b.std) and np.array_equal(a.dual, b.dual)


def test_generator_rejects_bad_input():
    with pytest.raises(ValueError):
        random_dual_matrix(GeneratorConfig("general", 0, 1))
    with pytest.raises(ValueError):
        random_dual_matrix(GeneratorConfig("banana", 2, 1))


def _verdict(judge, residuals):
    rep = EquivalenceReport(TheoremId.CHARACTERIZATION)
    for name, r in residuals.items():
        rep.conditions[name] = ConditionResult(r)
    judge(rep, *(["x", "y"] if judge is _judge_implication else [["x", "y"]]))
    return rep.verdict


@pytest.mark.parametrize("judge", ["equivalence", "implication"])
def test_verdict_rules(judge):
    fn = _judge_equivalent if judge == "equivalence" else _judge_implication
    assert _verdict(fn, {"x": 1e-3, "y": 1e3}) is Verdict.VIOLATION
    assert _verdict(fn, {"x": 0.5, "y": 2.0}) is Verdict.INDETERMINATE  # inside the 10x band
    assert _verdict(fn, {"x": 1e-3, "y": 5.0}) is Verdict.INDETERMINATE
    assert _verdict(fn, {"x": 1e-3, "y": 1e-5}) is Verdict.CONSISTENT
    assert _verdict(fn, {"x": 1e-3, "y": None}) is Verdict.CONSISTENT  # inapplicable


def test_trials_are_reproducible_and_serialisable():
    a = run_trials("ep-normal", 20, [2, 3], seed=4)
    b = run_trials("ep-normal", 20, [2, 3], seed=4)
    assert a.to_dict() == b.to_dict()
    json.dumps(a.to_dict())
    assert a.violations == 0


def test_report_json():
    rep = equivalence_suite(NIL, "normal-equiv", seed=[1, 2])
    doc = json.loads(rep.to_json())
    assert doc["theorem"] == "normal-equiv" and doc["seed"] == [1, 2]
    assert doc["conditions"]["(ii) A*Ae#=Ae#A*"]["applicable"] is False
