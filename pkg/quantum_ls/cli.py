#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
qls 命令行入口

子命令: channel validate|make, ls, discrete, curve, capacity, hyper, verify
退出码: 0 成功, 1 验证未通过, 2 输入错误
"""

import argparse
import sys
from typing import Any, List, Optional, Sequence

import numpy as np
from loguru import logger

from quantum_ls.channels.bloch import is_primitive
from quantum_ls.channels.builders import (
    completely_depolarizing_channel,
    depolarizing_liouvillian,
    identity_channel,
    random_doubly_stochastic_channel,
    random_liouvillian,
    random_pauli_channel,
)
from quantum_ls.channels.channel_io import (
    channel_to_dict,
    liouvillian_to_dict,
    load_channel,
    load_liouvillian,
    save_channel,
)
from quantum_ls.channels.models import Liouvillian, PauliDistribution, QuantumChannel
from quantum_ls.configs.system_config import get_config
from quantum_ls.core.linalg import random_density
from quantum_ls.discrete.discrete_ls import (
    alpha_d,
    discrete_bounds,
    discrete_hypercontractivity_check,
    pauli_alpha_d,
    power_monotonicity_check,
)
from quantum_ls.estimators.certificates import entropy_production_curve, legacy_tensor_bound, tensor_lower_bound
from quantum_ls.estimators.ls_constants import estimate_constant, sandwich_bounds
from quantum_ls.exceptions import BoundViolation, DomainError, QuantumLSError
from quantum_ls.group.almost_commuting import weyl_basis
from quantum_ls.group.semigroups import depolarizing_2to4_check, quantum_2to4_bound, t0_depolarizing
from quantum_ls.processors.capacity import capacity_bound
from quantum_ls.processors.verification_runner import VerificationRunner, list_suites
from quantum_ls.utils.file_utils import dumps_json, format_csv, save_csv, save_json, to_jsonable
from quantum_ls.utils.log_utils import setup_logging

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _emit(data: Any, out: Optional[str] = None) -> None:
    if out:
        save_json(to_jsonable(data), out)
    else:
        sys.stdout.write(dumps_json(to_jsonable(data)))


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数: {text}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的实数: {text}")


def _pauli(args: argparse.Namespace) -> PauliDistribution:
    if len(args.pauli) != 3:
        raise DomainError(f"--pauli 需要三个概率 p1,p2,p3, 实际为 {len(args.pauli)} 个")
    return PauliDistribution(*args.pauli)


def _load_source(args: argparse.Namespace):
    """--channel FILE, --liouvillian dep|FILE 或 --pauli p1,p2,p3"""
    if getattr(args, "pauli", None):
        return random_pauli_channel(_pauli(args))
    if getattr(args, "channel", None):
        return load_channel(args.channel)
    if getattr(args, "liouvillian", None):
        if args.liouvillian == "dep":
            return depolarizing_liouvillian(args.d)
        return load_liouvillian(args.liouvillian)
    raise DomainError("需要 --channel、--liouvillian 或 --pauli 之一")


def _load_generator(args: argparse.Namespace) -> Liouvillian:
    source = _load_source(args)
    return source.generator() if isinstance(source, QuantumChannel) else source


def _load_channel(args: argparse.Namespace) -> QuantumChannel:
    source = _load_source(args)
    if not isinstance(source, QuantumChannel):
        raise DomainError("该子命令需要信道 (--channel 或 --pauli), 而不是生成元")
    return source


def _initial_state(name: str, d: int, seed: int) -> np.ndarray:
    if name == "pure":
        rho = np.zeros((d, d), dtype=complex)
        rho[0, 0] = 1.0
        return rho
    if name == "mixed":
        return np.eye(d, dtype=complex) / d
    if name == "random":
        return random_density(d, np.random.default_rng(seed))
    raise DomainError(f"未知的初始态: {name} (pure | mixed | random)")


def _time_grid(tmax: float, steps: int) -> List[float]:
    if tmax < 0 or steps < 1:
        raise DomainError(f"需要 tmax ≥ 0 且 steps ≥ 1, 实际为 {tmax}, {steps}")
    return [float(t) for t in np.linspace(0.0, tmax, steps + 1)]


# --- 子命令 -------------------------------------------------------------------

def cmd_channel(args: argparse.Namespace) -> int:
    if args.action == "validate":
        source = _load_source(args)
        if isinstance(source, QuantumChannel):
            summary = {
                "type": "channel",
                "dim": source.dim,
                "kraus": len(source.kraus),
                "doubly_stochastic": source.is_doubly_stochastic(),
                "unital_error": source.unital_error(),
            }
            if summary["doubly_stochastic"]:
                summary["primitivity"] = is_primitive(source).to_dict()
                summary["generator_primitive"] = source.generator().is_primitive()
        else:
            summary = {
                "type": "liouvillian",
                "dim": source.dim,
                "doubly_stochastic": source.is_doubly_stochastic(),
                "reversible": source.is_reversible(),
                "primitive": source.is_primitive(),
            }
        _emit(summary)
        return EXIT_OK

    kind = args.type
    if kind == "identity":
        obj = identity_channel(args.d)
    elif kind == "depolarizing":
        obj = completely_depolarizing_channel(args.d)
    elif kind == "pauli":
        if not args.pauli:
            raise DomainError("--type pauli 需要 --pauli p1,p2,p3")
        obj = random_pauli_channel(_pauli(args))
    elif kind == "random":
        obj = random_doubly_stochastic_channel(args.d, args.k, args.seed)
    elif kind == "random-liouvillian":
        obj = random_liouvillian(args.d, args.k, args.seed, reversible=args.reversible, hamiltonian=args.hamiltonian)
    else:
        raise DomainError(f"未知的信道类型: {kind}")
    if args.out:
        save_channel(obj, args.out)
    else:
        _emit(channel_to_dict(obj) if isinstance(obj, QuantumChannel) else liouvillian_to_dict(obj))
    return EXIT_OK


def cmd_ls(args: argparse.Namespace) -> int:
    source = _load_source(args)
    estimate = estimate_constant(source, kind=args.kind, method=args.method, restarts=args.restarts, seed=args.seed)
    if not args.bounds:
        _emit(estimate.to_dict(), args.out)
        return EXIT_OK
    L = source.generator() if isinstance(source, QuantumChannel) else source
    data = {
        "estimate": estimate.to_dict(),
        "sandwich": sandwich_bounds(L).to_dict(),
        "tensor": tensor_lower_bound(L).to_dict(),
        "tensor_legacy": legacy_tensor_bound(L).to_dict(),
    }
    _emit(data, args.out)
    return EXIT_OK


def cmd_discrete(args: argparse.Namespace) -> int:
    T = _load_channel(args)
    result = alpha_d(T, method=args.method, restarts=args.restarts, seed=args.seed)
    if args.powers:
        result.power_trace = power_monotonicity_check(T, args.powers, restarts=args.restarts, seed=args.seed, strict=False)
    lower, upper = discrete_bounds(T)
    data = {**result.to_dict(), "bounds": [lower.to_dict(), upper.to_dict()]}
    if args.pauli:
        data["pauli"] = pauli_alpha_d(_pauli(args)).to_dict()

    code = EXIT_OK
    if args.q is not None:
        checks = discrete_hypercontractivity_check(T, args.q, restarts=args.restarts, seed=args.seed)
        data["hypercontractivity"] = [check.to_dict() for check in checks]
        if not all(check.passed for check in checks):
            code = EXIT_FAILED
    _emit(data, args.out)
    return code


def cmd_curve(args: argparse.Namespace) -> int:
    L = _load_generator(args)
    rho = _initial_state(args.rho, L.dim, args.seed)
    try:
        alpha = estimate_constant(L, args.kind, method="closed-form")
    except DomainError:
        bounds = sandwich_bounds(L)
        alpha = bounds.alpha1_lower if args.kind == "alpha1" else bounds.alpha2_lower
        logger.info(f"{args.kind} 无闭式结果, 使用夹逼下界 {alpha.value:.8f}")

    columns = get_config("report")["csv_columns"]
    try:
        curve = entropy_production_curve(L, rho, _time_grid(args.tmax, args.steps), alpha)
    except BoundViolation as e:
        logger.error(str(e))
        return EXIT_FAILED
    if args.out:
        save_csv(curve.rows, columns, args.out)
    else:
        sys.stdout.write(format_csv(curve.rows, columns))
    return EXIT_OK


def cmd_capacity(args: argparse.Namespace) -> int:
    L = _load_generator(args)
    bound = capacity_bound(L, _time_grid(args.tmax, args.steps), qubit_override=args.qubit_override)
    if args.csv:
        text = format_csv(bound.rows(), ["t", "bound"])
        if args.out:
            save_csv(bound.rows(), ["t", "bound"], args.out)
        else:
            sys.stdout.write(text)
    else:
        _emit(bound.to_dict(), args.out)
    return EXIT_OK


def cmd_hyper(args: argparse.Namespace) -> int:
    t = t0_depolarizing(args.d) if args.t is None else args.t
    L = depolarizing_liouvillian(args.d)
    checks = quantum_2to4_bound(L, weyl_basis(args.d), t, args.n, restarts=args.restarts, seed=args.seed)
    if args.t is None:
        checks.append(depolarizing_2to4_check(args.d, args.n, restarts=args.restarts, seed=args.seed))
    _emit({"t": t, "n": args.n, "checks": [check.to_dict() for check in checks]}, args.out)
    return EXIT_OK if all(check.passed for check in checks) else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        _emit(list_suites())
        return EXIT_OK
    verify = get_config("verify")
    runtime = get_config("runtime")
    runner = VerificationRunner(
        {
            "threads": args.threads or runtime["threads"],
            "restarts": args.restarts,
            "samples": args.samples or verify["samples_per_instance"],
            "show_progress": not args.no_progress,
        }
    )
    dims = args.dims or verify["dims"]
    instances = verify["instances"] if args.instances is None else args.instances
    report = runner.run(args.suite.split(","), dims, instances, args.seed)
    include_timing = not args.no_timing
    if args.out:
        report.save(args.out, include_timing)
    else:
        sys.stdout.write(report.to_json(include_timing))
    return EXIT_OK if report.passed else EXIT_FAILED


# --- 参数解析 -----------------------------------------------------------------

def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--channel", type=str, help="信道 JSON 文件")
    parser.add_argument("--liouvillian", type=str, help="生成元 JSON 文件, 或 dep 表示去极化生成元")
    parser.add_argument("--pauli", type=_float_list, help="随机 Pauli 信道的 p1,p2,p3")
    parser.add_argument("--d", type=int, default=2, help="维数 (用于 --liouvillian dep)")


def build_parser() -> argparse.ArgumentParser:
    verify = get_config("verify")
    runtime = get_config("runtime")
    parser = argparse.ArgumentParser(prog="qls", description="量子信道的对数 Sobolev 常数、熵产生与超压缩性")
    parser.add_argument("--log-level", type=str, default=runtime["log_level"], help="日志级别")
    parser.add_argument("--log-file", type=str, default=None, help="日志文件")
    sub = parser.add_subparsers(dest="command", required=True)

    channel = sub.add_parser("channel", help="信道文件的校验与生成")
    channel.add_argument("action", choices=["validate", "make"])
    _add_source_arguments(channel)
    channel.add_argument(
        "--type",
        choices=["identity", "depolarizing", "pauli", "random", "random-liouvillian"],
        default="random",
        help="make 生成的类型",
    )
    channel.add_argument("--k", type=int, default=verify["kraus_terms"], help="随机混合酉信道的项数")
    channel.add_argument("--seed", type=int, default=verify["seed"])
    channel.add_argument("--reversible", action="store_true", help="随机生成元取对称化")
    channel.add_argument("--hamiltonian", action="store_true", help="随机生成元加入哈密顿部分")
    channel.add_argument("--out", type=str, help="输出文件")
    channel.set_defaults(func=cmd_channel)

    ls = sub.add_parser("ls", help="计算 LS 常数或谱隙")
    _add_source_arguments(ls)
    ls.add_argument("--kind", choices=["alpha1", "alpha2", "gap"], default="alpha2")
    ls.add_argument("--method", choices=["auto", "closed-form", "variational", "bound"], default="auto")
    ls.add_argument("--restarts", type=int, default=None)
    ls.add_argument("--seed", type=int, default=0)
    ls.add_argument("--bounds", action="store_true", help="同时输出夹逼界与张量稳定界")
    ls.add_argument("--out", type=str)
    ls.set_defaults(func=cmd_ls)

    discrete = sub.add_parser("discrete", help="离散 LS 常数 α_D")
    _add_source_arguments(discrete)
    discrete.add_argument("--method", choices=["auto", "closed-form", "variational"], default="auto")
    discrete.add_argument("--powers", type=int, default=0, help="计算 k = 1..K 的幂次序列")
    discrete.add_argument("--q", type=float, default=None, help="检查 2→q 超压缩性")
    discrete.add_argument("--restarts", type=int, default=None)
    discrete.add_argument("--seed", type=int, default=0)
    discrete.add_argument("--out", type=str)
    discrete.set_defaults(func=cmd_discrete)

    curve = sub.add_parser("curve", help="熵产生曲线 (CSV)")
    _add_source_arguments(curve)
    curve.add_argument("--rho", type=str, default="pure", help="初始态: pure | mixed | random")
    curve.add_argument("--kind", choices=["alpha1", "alpha2"], default="alpha1")
    curve.add_argument("--tmax", type=float, default=3.0)
    curve.add_argument("--steps", type=int, default=60)
    curve.add_argument("--seed", type=int, default=0)
    curve.add_argument("--out", type=str)
    curve.set_defaults(func=cmd_curve)

    capacity = sub.add_parser("capacity", help="细分容量上界")
    _add_source_arguments(capacity)
    capacity.add_argument("--tmax", type=float, default=3.0)
    capacity.add_argument("--steps", type=int, default=30)
    capacity.add_argument("--qubit-override", action="store_true", help="d = 2 时使用精确 α₂ = λ")
    capacity.add_argument("--csv", action="store_true", help="以 CSV 输出")
    capacity.add_argument("--out", type=str)
    capacity.set_defaults(func=cmd_capacity)

    hyper = sub.add_parser("hyper", help="去极化半群的 2→4 超压缩性")
    hyper.add_argument("--d", type=int, default=2)
    hyper.add_argument("--n", type=int, default=1, help="张量幂次")
    hyper.add_argument("--t", type=float, default=None, help="时间, 缺省为 t₀(d)")
    hyper.add_argument("--restarts", type=int, default=None)
    hyper.add_argument("--seed", type=int, default=0)
    hyper.add_argument("--out", type=str)
    hyper.set_defaults(func=cmd_hyper)

    verify_parser = sub.add_parser("verify", help="运行验证套件")
    verify_parser.add_argument("--suite", type=str, default="all", help="套件名, 逗号分隔, 或 all")
    verify_parser.add_argument("--dims", type=_int_list, default=None, help="维数列表, 如 2,3,4")
    verify_parser.add_argument("--instances", type=int, default=None, help="每个维数的实例数")
    verify_parser.add_argument("--seed", type=int, default=verify["seed"])
    verify_parser.add_argument("--restarts", type=int, default=8, help="每次变分搜索的随机起点数")
    verify_parser.add_argument("--samples", type=int, default=None, help="每个实例的抽样数")
    verify_parser.add_argument("--threads", type=int, default=None, help="线程数, 缺省取 QLS_THREADS")
    verify_parser.add_argument("--list", action="store_true", help="列出所有套件")
    verify_parser.add_argument("--no-timing", action="store_true", help="报告中不写入 wall_time")
    verify_parser.add_argument("--no-progress", action="store_true", help="不显示进度条")
    verify_parser.add_argument("--out", type=str)
    verify_parser.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, args.log_file)
    try:
        return args.func(args)
    except QuantumLSError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
