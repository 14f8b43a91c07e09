"""Executable checks of the HS-based characterization theorems.

Every condition is evaluated as a normalised residual (deviation over allowed
deviation, see :meth:`ToleranceConfig.residual`); a condition holds when its
residual is at most 1. Comparisons between conditions use a hysteresis band:
a disagreement is a *violation* only if every residual involved lies outside
``[1/HYSTERESIS, HYSTERESIS]``; otherwise it is *indeterminate*.

Conditions that involve the group inverse of the essential part are
*inapplicable* when that inverse does not exist.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np

from .errors import NotSquare
from .geninverse import group_inverse_essential, ndmpi_hs
from .hs import HsDecomposition, hs_essential, hs_from_svd
from .matrix import DualMatrix, Magnitude, ToleranceConfig, dm_diag, dm_identity, dm_zero
from .scalar import DualReal
from .svd import dual_svd, random_unitary

__all__ = [
    "PropertyId",
    "TheoremId",
    "Verdict",
    "Analysis",
    "ConditionResult",
    "EquivalenceReport",
    "GeneratorConfig",
    "TrialSummary",
    "definitional_test",
    "definitional_residual",
    "structural_test",
    "structural_residual",
    "sufficiency_test",
    "equivalence_suite",
    "random_dual_matrix",
    "run_trials",
    "GENERATOR_KINDS",
]

HYSTERESIS = 10.0


class PropertyId(str, Enum):
    HERMITIAN = "hermitian"
    NORMAL = "normal"
    NEW_DUAL_EP = "new_dual_ep"
    ADJOINT_EQ_NDMPI = "adjoint_eq_ndmpi"
    NDMPI_IDEMPOTENT = "ndmpi_idempotent"
    NDMPI_ADJOINT_COMMUTE = "ndmpi_adjoint_commute"


class TheoremId(str, Enum):
    CHARACTERIZATION = "char"
    HERMITIAN_SUFFICIENT = "herm-suff"
    NORMAL_SUFFICIENT = "normal-suff"
    NORMAL_EQUIVALENCE = "normal-equiv"
    NEW_DUAL_EP_EQUIVALENCE = "ndep-equiv"
    EP_NORMALITY = "ep-normal"


class Verdict(str, Enum):
    CONSISTENT = "consistent"
    INDETERMINATE = "indeterminate"
    VIOLATION = "violation"


class Analysis:
    """Lazily computed derived objects of one square matrix, shared by all checks."""

    def __init__(self, a: DualMatrix, tol: ToleranceConfig | None = None, hs: HsDecomposition | None = None):
        if not a.is_square():
            raise NotSquare(f"characterizations need a square matrix, got {a.shape}")
        self.a = a
        self.tol = tol or ToleranceConfig()
        if hs is not None:
            self.__dict__["hs"] = hs

    @cached_property
    def hs(self) -> HsDecomposition:
        return hs_from_svd(dual_svd(self.a, self.tol))

    @cached_property
    def ah(self) -> DualMatrix:
        return self.a.H

    @cached_property
    def an(self) -> DualMatrix:
        return ndmpi_hs(self.hs)

    @cached_property
    def ae(self) -> DualMatrix:
        return hs_essential(self.hs)

    @cached_property
    def group_report(self):
        return group_inverse_essential(self.hs, self.tol)

    @property
    def ae_sharp(self) -> DualMatrix | None:
        rep = self.group_report
        return rep.value if rep.exists else None

    def eq(self, lhs_factors, rhs_factors) -> float:
        """Residual of ``prod(lhs) = prod(rhs)``, scaled by the magnitudes of both products."""
        return self.tol.residual(_prod(lhs_factors), _prod(rhs_factors),
                                 Magnitude.of(*lhs_factors) + Magnitude.of(*rhs_factors))


def _prod(factors) -> DualMatrix:
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return out


# ---------------------------------------------------------------- definitions

def definitional_residual(a, p, tol: ToleranceConfig | None = None) -> float:
    """Residual of the defining identity of ``p`` evaluated on the matrix itself."""
    ctx = a if isinstance(a, Analysis) else Analysis(a, tol)
    p = PropertyId(p)
    A, Ah, An = ctx.a, ctx.ah, ctx.an
    if p is PropertyId.HERMITIAN:
        return ctx.eq([Ah], [A])
    if p is PropertyId.NORMAL:
        return ctx.eq([A, Ah], [Ah, A])
    if p is PropertyId.NEW_DUAL_EP:
        return ctx.eq([A, An], [An, A])
    if p is PropertyId.ADJOINT_EQ_NDMPI:
        return ctx.eq([Ah], [An])
    if p is PropertyId.NDMPI_IDEMPOTENT:
        return ctx.eq([An, An], [An])
    return ctx.eq([An, Ah], [Ah, An])


def definitional_test(a, p, tol: ToleranceConfig | None = None) -> bool:
    return definitional_residual(a, p, tol) <= 1.0


def _block_eq(tol, lhs_factors, rhs_factors) -> float:
    lhs, rhs = _prod(lhs_factors), _prod(rhs_factors)
    if lhs.std.size == 0:
        return 0.0
    return tol.residual(lhs, rhs, Magnitude.of(*lhs_factors) + Magnitude.of(*rhs_factors))


def _block_zero(tol, factors, unit: Magnitude) -> float:
    x = _prod(factors)
    if x.std.size == 0:
        return 0.0
    return tol.residual(x, dm_zero(*x.shape), Magnitude.of(*factors) * unit)


def structural_residual(h: HsDecomposition, p, tol: ToleranceConfig | None = None) -> float:
    """Residual of the block conditions that characterise ``p`` in HS form."""
    tol = tol or ToleranceConfig()
    p = PropertyId(p)
    s1, s2 = h.s1, h.s2
    k, l, m, nb = h.k, h.l, h.m, h.nblk
    # blocks of a unitary matrix: their natural unit is the unitary itself
    unit = Magnitude(1.0, float(np.linalg.norm(h.w.dual)))
    if p is PropertyId.HERMITIAN:
        s1_inv = dm_diag([DualReal(1.0) / x for x in h.sigma1])
        return max(
            _block_eq(tol, [k.H, s1], [s1, k]),
            _block_eq(tol, [nb.H, s2], [s2, nb]),
            _block_eq(tol, [l], [s1_inv, m.H, s2]),
        )
    if p is PropertyId.NEW_DUAL_EP:
        return _block_zero(tol, [l], unit)
    if p is PropertyId.NORMAL:
        return max(_block_zero(tol, [l], unit), _block_eq(tol, [s1, k], [k, s1]))
    if p is PropertyId.ADJOINT_EQ_NDMPI:
        return max(
            _block_zero(tol, [s2, m], unit),
            _block_zero(tol, [s2, nb], unit),
            _block_eq(tol, [s1], [dm_identity(h.r)]),
        )
    if p is PropertyId.NDMPI_IDEMPOTENT:
        return _block_eq(tol, [s1], [k])
    return max(
        _block_zero(tol, [s2, m], unit),
        _block_zero(tol, [l, s2, nb], unit),
        _block_eq(tol, [s1, s1, k], [k, s1, s1]),
    )


def structural_test(h: HsDecomposition, p, tol: ToleranceConfig | None = None) -> bool:
    return structural_residual(h, p, tol) <= 1.0


# ---------------------------------------------------------------- reports

@dataclass
class ConditionResult:
    residual: float | None  # None when inapplicable
    label: str = ""

    @property
    def applicable(self) -> bool:
        return self.residual is not None

    @property
    def holds(self) -> bool | None:
        return None if self.residual is None else self.residual <= 1.0

    @property
    def clear(self) -> bool:
        """Outside the hysteresis band, so its truth value is trusted."""
        return self.residual is not None and not (1.0 / HYSTERESIS <= self.residual <= HYSTERESIS)

    def to_dict(self):
        return {
            "label": self.label,
            "applicable": self.applicable,
            "holds": self.holds,
            "residual": None if self.residual is None else _finite(self.residual),
        }


def _finite(x: float):
    return float(x) if np.isfinite(x) else "inf"


@dataclass
class EquivalenceReport:
    theorem: TheoremId
    conditions: dict = field(default_factory=dict)
    verdict: Verdict = Verdict.CONSISTENT
    details: list = field(default_factory=list)
    seed: object = None

    def to_dict(self):
        return {
            "theorem": self.theorem.value,
            "verdict": self.verdict.value,
            "details": list(self.details),
            "seed": self.seed,
            "conditions": {name: c.to_dict() for name, c in self.conditions.items()},
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _worse(a: Verdict, b: Verdict) -> Verdict:
    order = [Verdict.CONSISTENT, Verdict.INDETERMINATE, Verdict.VIOLATION]
    return max(a, b, key=order.index)


def _judge_equivalent(report: EquivalenceReport, names) -> None:
    applicable = [n for n in names if report.conditions[n].applicable]
    truths = {report.conditions[n].holds for n in applicable}
    if len(truths) <= 1:
        return
    clear_true = [n for n in applicable if report.conditions[n].clear and report.conditions[n].holds]
    clear_false = [n for n in applicable if report.conditions[n].clear and not report.conditions[n].holds]
    if clear_true and clear_false:
        report.verdict = _worse(report.verdict, Verdict.VIOLATION)
        report.details.append(f"{', '.join(clear_true)} hold but {', '.join(clear_false)} fail")
    else:
        report.verdict = _worse(report.verdict, Verdict.INDETERMINATE)
        report.details.append(f"{', '.join(applicable)} disagree inside the hysteresis band")


def _judge_implication(report: EquivalenceReport, premise: str, conclusion: str) -> None:
    pre, con = report.conditions[premise], report.conditions[conclusion]
    if not pre.applicable or not con.applicable or not pre.holds or con.holds:
        return
    if pre.clear and con.clear:
        report.verdict = _worse(report.verdict, Verdict.VIOLATION)
        report.details.append(f"{premise} holds but {conclusion} fails")
    else:
        report.verdict = _worse(report.verdict, Verdict.INDETERMINATE)
        report.details.append(f"{premise} => {conclusion} undecided inside the hysteresis band")


# condition tables: name -> (label, builder(ctx) -> residual or None)

def _sharp(fn):
    def wrapped(ctx):
        return None if ctx.ae_sharp is None else fn(ctx, ctx.ae_sharp)
    return wrapped


_HERM_SUFF = {
    "AAA^N=A*": lambda c: c.eq([c.a, c.a, c.an], [c.ah]),
    "AA*A^N=A": lambda c: c.eq([c.a, c.ah, c.an], [c.a]),
}

_NORMAL_SUFF = {
    "AA*A^N=A*": lambda c: c.eq([c.a, c.ah, c.an], [c.ah]),
    "A^NA*A=A*": lambda c: c.eq([c.an, c.ah, c.a], [c.ah]),
    "AeA*Ae#=A*Ae#Ae": _sharp(lambda c, g: c.eq([c.ae, c.ah, g], [c.ah, g, c.ae])),
    "AeA*Ae#=Ae#AeA*": _sharp(lambda c, g: c.eq([c.ae, c.ah, g], [g, c.ae, c.ah])),
}

_NORMAL_EQUIV = {
    "(i) normal": lambda c: definitional_residual(c, PropertyId.NORMAL),
    "(ii) A*Ae#=Ae#A*": _sharp(lambda c, g: c.eq([c.ah, g], [g, c.ah])),
    "(iii) AeA*A^N=A^NAeA*": lambda c: c.eq([c.ae, c.ah, c.an], [c.an, c.ae, c.ah]),
    "(iv) AeAe#A*=Ae#A*Ae": _sharp(lambda c, g: c.eq([c.ae, g, c.ah], [g, c.ah, c.ae])),
    "(v) A*AAe#=Ae#A*A": _sharp(lambda c, g: c.eq([c.ah, c.a, g], [g, c.ah, c.a])),
    "(vi) A*A^NAe#=Ae#A*A^N": _sharp(lambda c, g: c.eq([c.ah, c.an, g], [g, c.ah, c.an])),
    "(vii) A*Ae#A^N=A^NA*Ae#": _sharp(lambda c, g: c.eq([c.ah, g, c.an], [c.an, c.ah, g])),
}

_NDEP_EQUIV = {
    "(i) new dual EP": lambda c: definitional_residual(c, PropertyId.NEW_DUAL_EP),
    "(ii) AA^NA*=A*AA^N": lambda c: c.eq([c.a, c.an, c.ah], [c.ah, c.a, c.an]),
    "(iii) A*A^NA=A^NAA*": lambda c: c.eq([c.ah, c.an, c.a], [c.an, c.a, c.ah]),
    "(iv) A^NA^N=A^NAe#": _sharp(lambda c, g: c.eq([c.an, c.an], [c.an, g])),
    "(v) A^NA^N=Ae#A^N": _sharp(lambda c, g: c.eq([c.an, c.an], [g, c.an])),
    "(vi) A^NA^N=Ae#Ae#": _sharp(lambda c, g: c.eq([c.an, c.an], [g, g])),
    "(vii) Ae#A^N=Ae#Ae#": _sharp(lambda c, g: c.eq([g, c.an], [g, g])),
    "(viii) A^NAe#=Ae#Ae#": _sharp(lambda c, g: c.eq([c.an, g], [g, g])),
    "(ix) A^NAe#=Ae#A^N": _sharp(lambda c, g: c.eq([c.an, g], [g, c.an])),
    "(x) A^NA^NAe#=A^NAe#A^N": _sharp(lambda c, g: c.eq([c.an, c.an, g], [c.an, g, c.an])),
    "(xi) A^NA^NAe#=Ae#A^NA^N": _sharp(lambda c, g: c.eq([c.an, c.an, g], [g, c.an, c.an])),
    "(xii) A^NAe#A^N=Ae#A^NA^N": _sharp(lambda c, g: c.eq([c.an, g, c.an], [g, c.an, c.an])),
    "(xiii) A^NAe#Ae#=Ae#A^NAe#": _sharp(lambda c, g: c.eq([c.an, g, g], [g, c.an, g])),
    "(xiv) A^NAe#Ae#=Ae#Ae#A^N": _sharp(lambda c, g: c.eq([c.an, g, g], [g, g, c.an])),
    "(xv) Ae#Ae#A^N=Ae#A^NAe#": _sharp(lambda c, g: c.eq([g, g, c.an], [g, c.an, g])),
}

SUFFICIENT_CONDITIONS = {
    TheoremId.HERMITIAN_SUFFICIENT: (_HERM_SUFF, PropertyId.HERMITIAN),
    TheoremId.NORMAL_SUFFICIENT: (_NORMAL_SUFF, PropertyId.NORMAL),
}

EQUIVALENCE_CONDITIONS = {
    TheoremId.NORMAL_EQUIVALENCE: _NORMAL_EQUIV,
    TheoremId.NEW_DUAL_EP_EQUIVALENCE: _NDEP_EQUIV,
}


def sufficiency_test(a, condition: str, tol: ToleranceConfig | None = None):
    """``(premise, conclusion)`` for one named sufficient condition.

    ``premise`` is ``None`` when the condition involves a group inverse that
    does not exist.
    """
    ctx = a if isinstance(a, Analysis) else Analysis(a, tol)
    for table, prop in SUFFICIENT_CONDITIONS.values():
        if condition in table:
            pre = table[condition](ctx)
            return (None if pre is None else pre <= 1.0), definitional_test(ctx, prop)
    raise KeyError(f"unknown sufficient condition {condition!r}")


def equivalence_suite(a, theorem, tol: ToleranceConfig | None = None, seed=None) -> EquivalenceReport:
    """Evaluate every condition of ``theorem`` on ``a`` and judge their consistency."""
    ctx = a if isinstance(a, Analysis) else Analysis(a, tol)
    theorem = TheoremId(theorem)
    report = EquivalenceReport(theorem, seed=seed)
    cond = report.conditions

    if theorem is TheoremId.CHARACTERIZATION:
        for p in PropertyId:
            cond[f"{p.value}:definition"] = ConditionResult(definitional_residual(ctx, p), p.value)
            cond[f"{p.value}:hs-blocks"] = ConditionResult(structural_residual(ctx.hs, p, ctx.tol), p.value)
            _judge_equivalent(report, [f"{p.value}:definition", f"{p.value}:hs-blocks"])
    elif theorem in SUFFICIENT_CONDITIONS:
        table, prop = SUFFICIENT_CONDITIONS[theorem]
        cond[prop.value] = ConditionResult(definitional_residual(ctx, prop), "conclusion")
        for name, fn in table.items():
            cond[name] = ConditionResult(fn(ctx), "premise")
            _judge_implication(report, name, prop.value)
    elif theorem in EQUIVALENCE_CONDITIONS:
        table = EQUIVALENCE_CONDITIONS[theorem]
        for name, fn in table.items():
            cond[name] = ConditionResult(fn(ctx))
        _judge_equivalent(report, list(table))
    else:  # EP_NORMALITY: only stated for new dual EP matrices
        h = ctx.hs
        ep = ConditionResult(definitional_residual(ctx, PropertyId.NEW_DUAL_EP), "hypothesis")
        cond["new dual EP"] = ep
        applicable = ep.holds and ep.clear
        cond["normal"] = ConditionResult(
            definitional_residual(ctx, PropertyId.NORMAL) if applicable else None)
        cond["S1K=KS1"] = ConditionResult(
            _block_eq(ctx.tol, [h.s1, h.k], [h.k, h.s1]) if applicable else None)
        _judge_equivalent(report, ["normal", "S1K=KS1"])
    return report


# ---------------------------------------------------------------- generators

GENERATOR_KINDS = (
    "general",
    "hermitian",
    "normal",
    "new_dual_ep",
    "dual_unitary",
    "invertible_std",
    "pure_infinitesimal",
    "projector",
    "hs_form",
)


@dataclass(frozen=True)
class GeneratorConfig:
    kind: str
    n: int
    seed: object = 0


def _gauss(rng, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _hermitian(rng, n) -> np.ndarray:
    g = _gauss(rng, n, n)
    return (g + g.conj().T) / 2


def _dual_unitary(rng, n) -> DualMatrix:
    us = random_unitary(n, rng) if n else np.zeros((0, 0), dtype=np.complex128)
    g = _gauss(rng, n, n)
    return DualMatrix(us, us @ ((g - g.conj().T) / 2))


def _spectrum(rng, k) -> np.ndarray:
    return np.sort(rng.uniform(0.5, 3.0, k))[::-1]


def random_dual_matrix(cfg: GeneratorConfig) -> DualMatrix:
    """Seeded random matrix of the requested structural kind (deterministic per config)."""
    n = int(cfg.n)
    if n < 1:
        raise ValueError("matrix order must be at least 1")
    rng = cfg.seed if isinstance(cfg.seed, np.random.Generator) else np.random.default_rng(cfg.seed)
    kind = cfg.kind
    if kind == "general":
        variant = rng.integers(3)
        if variant == 0:
            std = _gauss(rng, n, n)
        elif variant == 1:
            k = int(rng.integers(0, n))
            std = _gauss(rng, n, k) @ _gauss(rng, k, n)
        else:
            vals = np.repeat(_spectrum(rng, (n + 1) // 2), 2)[:n]
            std = random_unitary(n, rng) @ np.diag(vals) @ random_unitary(n, rng).conj().T
        return DualMatrix(std, _gauss(rng, n, n))
    if kind == "hermitian":
        if rng.integers(2) == 0:
            return DualMatrix(_hermitian(rng, n), _hermitian(rng, n))
        k = int(rng.integers(0, n))
        lam = np.zeros(n)
        lam[:k] = _spectrum(rng, k) * rng.choice([-1.0, 1.0], k)
        q = random_unitary(n, rng)
        return DualMatrix(q @ np.diag(lam) @ q.conj().T, _hermitian(rng, n))
    if kind == "normal":
        u = _dual_unitary(rng, n)
        mods = _spectrum(rng, n)
        ds = mods * np.exp(2j * np.pi * rng.uniform(size=n))
        dd = _gauss(rng, n)
        tail = int(rng.integers(0, n)) if rng.integers(2) else 0
        if tail:
            ds[n - tail:] = 0.0
            dd[n - tail + int(rng.integers(0, tail + 1)):] = 0.0
        return u @ DualMatrix(np.diag(ds), np.diag(dd)) @ u.H
    if kind == "new_dual_ep":
        r = int(rng.integers(1, n + 1)) if n > 1 else 1
        if rng.integers(4) == 0:
            r = int(rng.integers(0, n + 1))
        u = _dual_unitary(rng, n)
        s1 = DualMatrix(np.diag(_spectrum(rng, r)), np.diag(rng.standard_normal(r)))
        delta = np.sort(np.abs(rng.standard_normal(n - r)))[::-1]
        if n - r:
            delta[int(rng.integers(0, n - r + 1)):] = 0.0
        s2 = DualMatrix(np.zeros((n - r, n - r)), np.diag(delta))
        k, nb = _dual_unitary(rng, r), _dual_unitary(rng, n - r)
        core = DualMatrix(
            np.block([[(s1 @ k).std, np.zeros((r, n - r))], [np.zeros((n - r, r)), (s2 @ nb).std]]),
            np.block([[(s1 @ k).dual, np.zeros((r, n - r))], [np.zeros((n - r, r)), (s2 @ nb).dual]]),
        )
        return u @ core @ u.H
    if kind == "dual_unitary":
        return _dual_unitary(rng, n)
    if kind == "invertible_std":
        std = random_unitary(n, rng) @ np.diag(_spectrum(rng, n)) @ random_unitary(n, rng).conj().T
        return DualMatrix(std, _gauss(rng, n, n))
    if kind == "pure_infinitesimal":
        return DualMatrix(np.zeros((n, n)), _gauss(rng, n, n))
    if kind == "projector":
        r = int(rng.integers(0, n + 1))
        u = _dual_unitary(rng, n)
        return u @ DualMatrix(np.diag([1.0] * r + [0.0] * (n - r))) @ u.H
    if kind == "hs_form":
        # U [S1 K, S1 L; S2 M, S2 N] U* from a random dual unitary W = [K L; M N]
        r = int(rng.integers(0, n + 1))
        u, w = _dual_unitary(rng, n), _dual_unitary(rng, n)
        if rng.integers(2):
            s1 = DualMatrix(np.diag(_spectrum(rng, r)), np.diag(rng.standard_normal(r)))
        else:
            s1 = dm_identity(r)
        delta = np.abs(rng.standard_normal(n - r)) if rng.integers(2) else np.zeros(n - r)
        s = DualMatrix(np.diag(np.r_[np.diag(s1.std), np.zeros(n - r)]).astype(complex),
                       np.diag(np.r_[np.diag(s1.dual), delta]).astype(complex))
        return u @ s @ w @ u.H
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")


# ---------------------------------------------------------------- trial runner

@dataclass
class TrialSummary:
    theorem: TheoremId
    trials: int
    counts: dict
    condition_counts: dict
    flagged: list  # reports whose verdict is not consistent

    @property
    def violations(self) -> int:
        return self.counts.get(Verdict.VIOLATION.value, 0)

    @property
    def indeterminate(self) -> int:
        return self.counts.get(Verdict.INDETERMINATE.value, 0)

    def to_dict(self):
        return {
            "theorem": self.theorem.value,
            "trials": self.trials,
            "verdicts": dict(self.counts),
            "conditions": self.condition_counts,
            "flagged": [r.to_dict() for r in self.flagged],
        }


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent stream for one trial, derived from ``(master_seed, index)`` only."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(index)]))


def run_trials(theorem, trials: int, sizes, seed: int = 0, kinds=GENERATOR_KINDS,
               tol: ToleranceConfig | None = None) -> TrialSummary:
    """Run ``trials`` seeded random matrices through ``theorem``.

    Trial ``i`` draws its kind, size and entries from ``trial_rng(seed, i)``,
    so each trial is reproducible on its own.
    """
    theorem = TheoremId(theorem)
    sizes = [sizes] if isinstance(sizes, int) else list(sizes)
    counts = {v.value: 0 for v in Verdict}
    cond_counts: dict = {}
    flagged = []
    for i in range(trials):
        rng = trial_rng(seed, i)
        kind = kinds[int(rng.integers(len(kinds)))]
        n = sizes[int(rng.integers(len(sizes)))]
        a = random_dual_matrix(GeneratorConfig(kind, n, rng))
        report = equivalence_suite(a, theorem, tol, seed=[int(seed), i])
        report.details.insert(0, f"kind={kind} n={n}")
        counts[report.verdict.value] += 1
        for name, c in report.conditions.items():
            slot = cond_counts.setdefault(name, {"true": 0, "false": 0, "inapplicable": 0})
            slot["inapplicable" if c.holds is None else ("true" if c.holds else "false")] += 1
        if report.verdict is not Verdict.CONSISTENT:
            flagged.append(report)
    return TrialSummary(theorem, trials, counts, cond_counts, flagged)
