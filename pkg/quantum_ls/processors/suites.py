#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
验证套件
每个套件对应一条 (或一组) 不等式, 在随机实例上逐个检查并返回 CheckResult 列表。
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from quantum_ls.channels.builders import (
    depolarizing_liouvillian,
    random_doubly_stochastic_channel,
    random_liouvillian,
    random_pauli_channel,
    random_pauli_distribution,
    tensor_power_generator,
)
from quantum_ls.channels.models import Liouvillian
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.checks import CheckResult
from quantum_ls.core.linalg import random_density, random_hermitian
from quantum_ls.discrete.discrete_ls import (
    alpha_d,
    discrete_bounds,
    discrete_entropy_production,
    discrete_prefactor,
    improved_data_processing_check,
    pauli_alpha_d,
    power_monotonicity_check,
    power_monotonicity_violation,
)
from quantum_ls.estimators.certificates import (
    comparison_check,
    decay_certificate,
    depolarizing_tensor_bound,
    entropy_production_curve,
    legacy_tensor_bound,
    snapshot_bound,
    tensor_lower_bound,
)
from quantum_ls.estimators.estimate import LsEstimate
from quantum_ls.estimators.ls_constants import (
    alpha1_qubit,
    alpha1_variational,
    alpha2_qubit,
    alpha2_variational,
    depolarizing_alpha2,
    depolarizing_prefactor,
    estimate_constant,
    qubit_kernel_scan,
    sandwich_bounds,
    spectral_gap,
    variational_pair,
)
from quantum_ls.exceptions import DomainError, NotPrimitive
from quantum_ls.functionals.entropy import dirichlet_form_2, pinsker_gap
from quantum_ls.group.almost_commuting import weyl_basis
from quantum_ls.group.semigroups import depolarizing_2to4_check, quantum_2to4_bound, t0_depolarizing

_VERIFY = get_config("verify")
_OPTIMIZER = get_config("optimizer")


@dataclass(frozen=True)
class InstanceContext:
    """单个实例的参数; 随机数生成器由 (seed, dim, index) 唯一确定"""

    suite: str
    index: int
    dim: int
    seed: int
    restarts: int
    samples: int

    @property
    def instance_seed(self) -> List[int]:
        return [self.seed, self.dim, self.index]

    def rng(self, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.instance_seed + [stream])


SuiteRunner = Callable[[InstanceContext], List[CheckResult]]


@dataclass(frozen=True)
class Suite:
    """
    验证套件描述

    fixed_tasks 非空时忽略命令行的 dims/instances, 直接使用给定的 (dim, index) 列表。
    """

    name: str
    anchor: str
    runner: SuiteRunner
    dims: Optional[Tuple[int, ...]] = None
    fixed_tasks: Optional[Tuple[Tuple[int, int], ...]] = None

    def tasks(self, dims: Sequence[int], instances: int) -> List[Tuple[int, int]]:
        if self.fixed_tasks is not None:
            return list(self.fixed_tasks)
        allowed = [d for d in dims if self.dims is None or d in self.dims]
        return [(d, idx) for d in allowed for idx in range(instances)]


def _slack(claim_id: str, anchor: str, tol: Optional[float] = None) -> CheckResult:
    return CheckResult(claim_id, anchor, tolerance=_VERIFY["inequality_slack"] if tol is None else tol)


def _certified(L: Liouvillian, kind: str) -> LsEstimate:
    """闭式结果可用时取精确值, 否则取夹逼下界"""
    try:
        return estimate_constant(L, kind, method="closed-form")
    except DomainError:
        bounds = sandwich_bounds(L)
        return bounds.alpha1_lower if kind == "alpha1" else bounds.alpha2_lower


def _primitive_qubit_channel(ctx: InstanceContext):
    T = random_doubly_stochastic_channel(2, _VERIFY["kraus_terms"], ctx.instance_seed)
    if not T.generator().is_primitive():
        raise NotPrimitive("随机量子比特信道不是本原的")
    return T


# --- 连续时间 LS 常数 ----------------------------------------------------------

def qubit_closed_form_suite(ctx: InstanceContext) -> List[CheckResult]:
    T = _primitive_qubit_channel(ctx)
    L = T.generator()
    tol = _VERIFY["qubit_match_tol"]
    alpha2 = _slack("qubit.alpha2", "qubit LS-2 Bloch formula", tol)
    alpha1 = _slack("qubit.alpha1", "qubit LS-1 Bloch formula", tol)
    kernel = _slack("qubit.kernel_scan", "qubit Markov-kernel reduction", 1e-2)

    exact2 = alpha2_qubit(T).value
    exact1 = alpha1_qubit(T).value
    alpha2.record(abs(alpha2_variational(L, restarts=ctx.restarts, seed=ctx.index).value - exact2), index=ctx.index)
    alpha1.record(abs(alpha1_variational(L, restarts=ctx.restarts, seed=ctx.index).value - exact1), index=ctx.index)
    kernel.record(abs(qubit_kernel_scan(T, samples=2000, seed=ctx.index).value - exact2), index=ctx.index)
    return [alpha2, alpha1, kernel]


def depolarizing_suite(ctx: InstanceContext) -> List[CheckResult]:
    check = _slack("depolarizing.alpha2", "depolarizing LS-2 closed form", _VERIFY["qubit_match_tol"])
    estimate = alpha2_variational(depolarizing_liouvillian(ctx.dim), restarts=ctx.restarts, seed=ctx.seed)
    check.record(abs(estimate.value - depolarizing_alpha2(ctx.dim).value), dim=ctx.dim, estimate=estimate.value)
    return [check]


def sandwich_suite(ctx: InstanceContext) -> List[CheckResult]:
    L = random_liouvillian(ctx.dim, _VERIFY["kraus_terms"], ctx.instance_seed, reversible=True)
    if not L.is_primitive():
        raise NotPrimitive("随机生成元不是本原的")
    lam = spectral_gap(L).value
    lower = lam * depolarizing_prefactor(ctx.dim)
    alpha1, alpha2 = variational_pair(L, restarts=ctx.restarts, seed=ctx.index)

    below = _slack("sandwich.lower", "gap times depolarizing prefactor below LS constants")
    above = _slack("sandwich.upper", "LS constants below the spectral gap")
    for estimate in (alpha1, alpha2):
        below.record(lower - estimate.value, kind=estimate.kind, index=ctx.index)
        above.record(estimate.value - lam, kind=estimate.kind, index=ctx.index)
    return [below, above]


def comparison_suite(ctx: InstanceContext) -> List[CheckResult]:
    L = random_liouvillian(ctx.dim, _VERIFY["kraus_terms"], ctx.instance_seed, reversible=ctx.index % 2 == 0)
    if not L.is_primitive():
        raise NotPrimitive("随机生成元不是本原的")
    checks = []
    for n in (1, 2):
        checks.extend(comparison_check(L, n, samples=ctx.samples, seed=ctx.index))
    return checks


def tensor_bound_suite(ctx: InstanceContext) -> List[CheckResult]:
    d = ctx.dim
    identity = _slack("tensor.snapshot_identity", "snapshot bound at t0 equals tensor formula", 1e-12)
    legacy = _slack("tensor.legacy_dominated", "tensor formula dominates the earlier bound")
    formula = depolarizing_tensor_bound(d).value
    identity.record(abs(snapshot_bound(1.0, t0_depolarizing(d)).value - formula), dim=d)
    legacy.record(legacy_tensor_bound(depolarizing_liouvillian(d)).value - formula, dim=d)
    checks = [identity, legacy]
    if d == 2:
        anchor = _slack("tensor.value_qubit", "tensor formula value for qubits", 1e-4)
        anchor.record(abs(formula - 0.22656), value=formula)
        checks.append(anchor)
    return checks


def _hyper_cells() -> Tuple[Tuple[int, int], ...]:
    # index 0, 1: t₀ 处 n = 1, 2; 其余为 (t, n) 网格
    return tuple((2, idx) for idx in range(2 + 10))


_HYPER_TIMES = (0.0, 0.25, 0.5, None, 1.0)


def hypercontractivity_suite(ctx: InstanceContext) -> List[CheckResult]:
    if ctx.index < 2:
        return [depolarizing_2to4_check(2, ctx.index + 1, restarts=ctx.restarts, seed=ctx.seed)]
    cell = ctx.index - 2
    t = _HYPER_TIMES[cell // 2]
    t = t0_depolarizing(2) if t is None else t
    n = cell % 2 + 1
    return quantum_2to4_bound(depolarizing_liouvillian(2), weyl_basis(2), t, n, restarts=ctx.restarts, seed=ctx.seed)


# --- 离散时间 -----------------------------------------------------------------

def data_processing_suite(ctx: InstanceContext) -> List[CheckResult]:
    T = random_doubly_stochastic_channel(ctx.dim, _VERIFY["kraus_terms"], ctx.instance_seed)
    rho = random_density(ctx.dim, ctx.rng(1))
    checks = improved_data_processing_check(T, rho)
    checks.append(discrete_entropy_production(T, rho))
    return checks


def pauli_suite(ctx: InstanceContext) -> List[CheckResult]:
    p = random_pauli_distribution(ctx.instance_seed)
    T = random_pauli_channel(p)
    closed = _slack("pauli.alpha2", "random Pauli LS-2 closed form", _VERIFY["qubit_match_tol"])
    discrete = _slack("pauli.alpha_d", "random Pauli discrete constant via composition", _VERIFY["pauli_exact_tol"])
    printed = _slack("pauli.printed_formula", "printed Pauli discrete formula (reported only)", float("inf"))

    formula = 2 * min(p.p1 + p.p2, p.p2 + p.p3, p.p3 + p.p1)
    variational = alpha2_variational(T.generator(), restarts=ctx.restarts, seed=ctx.index).value
    closed.record(abs(variational - formula), distribution=p.to_dict())

    exact = pauli_alpha_d(p)
    printed.record(exact.meta["printed_formula_discrepancy"], distribution=p.to_dict())
    if exact.meta["primitive"]:
        discrete.record(abs(alpha_d(T, method="closed-form").alpha_d.value - exact.value), distribution=p.to_dict())
    return [closed, discrete, printed]


def discrete_monotonicity_suite(ctx: InstanceContext) -> List[CheckResult]:
    T = random_doubly_stochastic_channel(ctx.dim, _VERIFY["kraus_terms"], ctx.instance_seed)
    trace = power_monotonicity_check(T, _OPTIMIZER["max_power"], restarts=ctx.restarts, seed=ctx.index, strict=False)
    monotone = _slack("discrete.power_monotonicity", "LS-2 of powers is non-decreasing", _OPTIMIZER["monotonicity_tol"])
    limit = _slack("discrete.power_limit", "discrete constant below the dimension prefactor", _OPTIMIZER["monotonicity_tol"])
    monotone.record(power_monotonicity_violation(trace), index=ctx.index)
    limit.record(trace[-1].value / 2 - discrete_prefactor(ctx.dim), index=ctx.index)

    bracket = _slack("discrete.bounds", "discrete constant inside the gap bracket")
    lower, upper = discrete_bounds(T)
    estimate = alpha_d(T, restarts=ctx.restarts, seed=ctx.index).alpha_d
    bracket.record(lower.value - estimate.value, side="lower", index=ctx.index)
    bracket.record(estimate.value - lower.meta["gap"] / 2, side="gap", index=ctx.index)
    if estimate.direction == "exact":
        bracket.record(estimate.value - upper.value, side="upper", index=ctx.index)
    return [monotone, limit, bracket]


# --- 熵 -----------------------------------------------------------------------

def entropy_curve_suite(ctx: InstanceContext) -> List[CheckResult]:
    reversible = ctx.index % 2 == 0
    L = random_liouvillian(ctx.dim, _VERIFY["kraus_terms"], ctx.instance_seed, reversible=reversible, hamiltonian=not reversible)
    if not L.is_primitive():
        raise NotPrimitive("随机生成元不是本原的")
    rng = ctx.rng(1)
    rho = random_density(ctx.dim, rng)
    t_grid = _VERIFY["t_grid"]
    slack = _VERIFY["curve_slack"]

    curve = _slack("entropy.curve", "entropy production curve", slack)
    for kind in ("alpha1", "alpha2"):
        result = entropy_production_curve(L, rho, t_grid, _certified(L, kind), slack=np.inf)
        curve.record(-result.min_slack, kind=kind, index=ctx.index)

    decay = decay_certificate(L, rho, t_grid[-1], _certified(L, "alpha1"))
    decay.claim_id = "entropy.decay"

    pinsker = _slack("entropy.pinsker", "Pinsker inequality", 1e-10)
    dirichlet = _slack("entropy.dirichlet_positive", "Dirichlet form is nonnegative", 1e-10)
    for _ in range(ctx.samples // 10 or 1):
        sigma = random_density(ctx.dim, rng)
        pinsker.record(-pinsker_gap(rho, sigma), index=ctx.index)
        X = random_hermitian(ctx.dim, rng)
        dirichlet.record(-dirichlet_form_2(L, X), index=ctx.index)
    checks = [curve, decay, pinsker, dirichlet]

    if ctx.dim == 2:
        tensor = _slack("entropy.tensor_curve", "entropy production curve for two-fold tensor powers", slack)
        L2 = tensor_power_generator(L, 2)
        rho2 = random_density(4, rng)
        result = entropy_production_curve(L2, rho2, t_grid, tensor_lower_bound(L), slack=np.inf)
        tensor.record(-result.min_slack, index=ctx.index)
        checks.append(tensor)
    return checks


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("qubit", "qubit LS-2 / LS-1 Bloch closed forms", qubit_closed_form_suite, dims=(2,)),
        Suite(
            "depolarizing",
            "depolarizing LS-2 closed form",
            depolarizing_suite,
            fixed_tasks=tuple((d, 0) for d in (2, 3, 4, 5)),
        ),
        Suite("sandwich", "spectral gap sandwich of LS constants", sandwich_suite),
        Suite("comparison", "comparison with the depolarizing generator on tensor powers", comparison_suite, dims=(2, 3)),
        Suite(
            "tensor",
            "tensor-stable lower bound and snapshot hypercontractivity",
            tensor_bound_suite,
            fixed_tasks=tuple((d, 0) for d in range(2, 9)),
        ),
        Suite(
            "hyper",
            "2-to-4 hypercontractivity via almost commuting unitary bases",
            hypercontractivity_suite,
            fixed_tasks=_hyper_cells(),
        ),
        Suite("data-processing", "improved data processing and discrete entropy production", data_processing_suite),
        Suite("pauli", "random Pauli closed forms", pauli_suite, dims=(2,)),
        Suite("discrete-powers", "monotonicity in channel powers and discrete bounds", discrete_monotonicity_suite),
        Suite("entropy", "entropy production curves, decay and Pinsker", entropy_curve_suite),
    )
}


def get_suite(name: str) -> Suite:
    if name not in SUITES:
        raise DomainError(f"未知的验证套件: {name}, 可选 {', '.join(SUITES)}")
    return SUITES[name]
