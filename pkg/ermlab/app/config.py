"""
应用配置管理
使用 Pydantic Settings 管理数值实验的全局参数（求积分辨率、上限、容差等）
"""
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def find_project_root() -> Path:
    """
    查找项目根目录（包含 .env 文件的目录）

    Returns:
        Path: 项目根目录路径
    """
    current = Path(__file__).resolve()
    # 当前文件位于 ermlab/app/config.py，项目根目录应该是 current.parent.parent.parent
    project_root = current.parent.parent.parent

    env_file = project_root / ".env"
    if env_file.exists():
        return project_root

    # 如果项目根目录没有 .env，向上查找
    for parent in current.parents:
        env_file = parent / ".env"
        if env_file.exists():
            return parent

    return project_root


class Settings(BaseSettings):
    """应用配置"""

    model_config = SettingsConfigDict(
        env_file=find_project_root() / ".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # 输出与日志
    ERM_OUTPUT_ROOT: str = Field(default="output", description="实验产物输出根目录")
    LOG_LEVEL: str = Field(default="INFO", description="日志级别")

    # 求积配置（中点张量网格）
    QUADRATURE_NODES_1D: int = Field(default=4096, description="d=1 时每个坐标轴的求积节点数")
    QUADRATURE_NODES_2D: int = Field(default=512, description="d=2 时每个坐标轴的求积节点数")
    QUADRATURE_NODES_ND: int = Field(default=64, description="d>=3 时每个坐标轴的求积节点数")
    CONVOLUTION_STEPS_PER_RADIUS: int = Field(
        default=400, description="直接卷积路线：每个支撑半径内的网格步数"
    )
    SURJECTION_STEPS_PER_RADIUS: int = Field(
        default=100, description="满射积分（d=1 张量网格）：每个支撑半径内的网格步数"
    )

    # 组合与矩上限
    MAX_SURJECTION_ORDER: int = Field(
        default=12, description="满射类枚举的 m 上限；S(12,p) 合计约 420 万类，再大内存不可控"
    )
    MAX_MOMENT_ORDER: int = Field(default=8, description="SurjectionQuadrature 路线的 m 上限")

    # 准蒙特卡洛（d>=2）
    QMC_SAMPLES_LOG2: int = Field(default=14, description="每次随机化的 Sobol 点数（log2）")
    QMC_RANDOMIZATIONS: int = Field(default=8, description="独立扰乱次数，用于误差估计")

    # 水平集密度 ψ
    LEVEL_SET_EPS0: float = Field(default=1e-3, description="ψ 截断：丢弃 |f̂| < eps0 的取值")
    LEVEL_SET_GRID_STEP_1D: float = Field(default=0.005, description="d=1 的 ξ 网格步长")
    LEVEL_SET_GRID_STEP_2D: float = Field(default=0.05, description="d=2 的 ξ 网格步长")
    XI_CUTOFF_MAX_1D: float = Field(default=1024.0, description="d=1 的 ξ 截断上限")
    XI_CUTOFF_MAX_2D: float = Field(default=48.0, description="d>=2 的 ξ 截断上限")

    # 矩阵与特征值
    MATRIX_BLOCK_SIZE: int = Field(default=512, description="矩阵按行分块构造的块大小")
    EIGEN_RESIDUAL_TOL: float = Field(default=1e-8, description="特征对残差相对容差")
    STRICT_CHECKS: bool = Field(
        default=False, description="严格模式：每个样本校验迹恒等式、Poisson 夹逼不等式"
    )

    # 比较容差
    MC_TOLERANCE_SE: float = Field(default=3.0, description="蒙特卡洛比较的标准误倍数")
    QUADRATURE_TOLERANCE_REL: float = Field(default=0.02, description="求积-求积比较的相对容差")
    REDUCTION_TOLERANCE_REL: float = Field(default=1e-12, description="并行/串行归约一致性容差")


# 创建全局配置实例
settings = Settings()
