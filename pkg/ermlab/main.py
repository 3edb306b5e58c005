"""
erm-spectra 命令行入口

使用方法：
    python ermlab/main.py <command> --config <config_path> [--seed N] [--out DIR] [--threads N] [--strict]
        [--save-points] [--load-points POINTS_CSV]

示例：
    python ermlab/main.py spectrum --config config/experiments/spectrum.yaml
    python ermlab/main.py measure-compare --config config/experiments/measure_compare.yaml --threads 4
    python ermlab/main.py poisson-bound --config config/experiments/poisson_bound.yaml --strict --log-level DEBUG

退出码：
    0 全部完成（记录是否通过见 results.csv）
    1 配置错误
    2 存在求解失败的实现
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

# 添加项目根目录到路径
project_root = Path(__file__).resolve().parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from ermlab.app.config import find_project_root, settings  # noqa: E402
from ermlab.domain.exceptions import ConfigValidationError, ErmLabError  # noqa: E402
from ermlab.domain.experiments.config import COMMANDS, ExperimentConfigLoader  # noqa: E402
from ermlab.domain.experiments.runner import run  # noqa: E402

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_SOLVER_FAILURE = 2


def setup_logging(log_level: str = "INFO"):
    """
    配置日志

    Args:
        log_level: 日志级别（DEBUG, INFO, WARNING, ERROR）
    """
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    date_format = "%Y-%m-%d %H:%M:%S"
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=numeric_level,
        format=log_format,
        datefmt=date_format,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    解析命令行参数

    Returns:
        argparse.Namespace: 解析后的参数
    """
    parser = argparse.ArgumentParser(
        prog="erm-spectra",
        description="欧氏随机矩阵谱实验",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例：
  # 按配置文件运行
  erm-spectra spectrum --config config/experiments/spectrum.yaml

  # 覆盖种子与输出目录
  erm-spectra moment-convergence --config config/experiments/moment_convergence.yaml --seed 7 --out /tmp/erm
        """,
    )
    parser.add_argument("command", choices=COMMANDS, help="实验命令")
    parser.add_argument("--config", type=str, required=True, help="实验配置文件（YAML 或 JSON）")
    parser.add_argument("--seed", type=int, default=None, help="覆盖配置中的 master_seed")
    parser.add_argument("--out", type=str, default=None, help="覆盖配置中的输出目录")
    parser.add_argument("--threads", type=int, default=None, help="覆盖并发实现数")
    parser.add_argument("--strict", action="store_true", help="严格模式：逐样本校验恒等式")
    parser.add_argument("--save-points", action="store_true", help="写出每个 n 首个实现的点集 CSV")
    parser.add_argument("--load-points", type=str, default=None, help="从点集 CSV 读入点，代替采样")
    parser.add_argument(
        "--log-level",
        type=str,
        default=settings.LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help=f"日志级别（默认：{settings.LOG_LEVEL}）",
    )
    return parser.parse_args(argv)


def resolve_config_path(raw: str) -> Path:
    """相对路径优先相对当前目录，其次相对项目根目录"""
    path = Path(raw)
    if path.is_absolute() or path.exists():
        return path
    return (find_project_root() / path).resolve()


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码"""
    args = parse_arguments(argv)
    setup_logging(args.log_level)
    logger = logging.getLogger(__name__)

    try:
        data = ExperimentConfigLoader.load(resolve_config_path(args.config))
    except (FileNotFoundError, ValueError) as e:
        logger.error("✗ 读取配置失败: %s", e)
        return EXIT_CONFIG_ERROR

    data = ExperimentConfigLoader.apply_overrides(
        data,
        command=args.command,
        master_seed=args.seed,
        output_dir=args.out,
        threads=args.threads,
        strict=True if args.strict else None,
        write_points=True if args.save_points else None,
        load_points=args.load_points,
    )

    try:
        manifest = run(data)
    except ConfigValidationError as e:
        for diagnostic in e.diagnostics:
            logger.error("✗ 配置错误 %s", diagnostic)
        return EXIT_CONFIG_ERROR
    except ErmLabError as e:
        logger.error("✗ 实验失败: %s", e.message)
        return EXIT_CONFIG_ERROR

    passed = sum(record.passed for record in manifest.records)
    logger.info("=" * 60)
    logger.info("%s: %s/%s 条记录通过", manifest.command, passed, len(manifest.records))
    for record in manifest.records:
        if not record.passed:
            logger.warning(
                "✗ %s (m=%s, n=%s, gamma=%s): theory=%.6g, empirical=%.6g, tolerance=%.3g",
                record.quantity,
                record.m,
                record.n,
                record.gamma,
                record.theory,
                record.empirical_mean,
                record.tolerance,
            )
    logger.info("=" * 60)
    if manifest.solver_failures:
        logger.error("✗ %s 次实现求解失败", manifest.solver_failures)
        return EXIT_SOLVER_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
