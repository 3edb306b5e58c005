"""
实验配置定义与校验

实验文档为 YAML 或 JSON（JSON 是 YAML 子集，统一用 yaml.safe_load 解析）；
validate() 把 pydantic 校验错误与语义检查统一转换为 (字段, 约束) 诊断列表。
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union, get_args

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ermlab.app.config import settings
from ermlab.domain.exceptions import ErmLabError
from ermlab.infrastructure.io.points_csv import PointSetCsv

logger = logging.getLogger(__name__)

Command = Literal[
    "spectrum",
    "measure-compare",
    "moment-convergence",
    "density-sweep",
    "poisson-bound",
    "eigenvector-residual",
    "correlations",
    "level-set",
]

COMMANDS: List[str] = list(get_args(Command))


class KernelSpec(BaseModel):
    """核描述：名称 + 参数（如 {"r": 0.25, "d": 1}）"""

    name: str = Field(description="核名称，见 kernel_factory 注册表")
    params: Dict[str, Any] = Field(default_factory=dict, description="核参数")

    @property
    def d(self) -> int:
        if "d" in self.params:
            return int(self.params["d"])
        if "k" in self.params:
            k = self.params["k"]
            return len(k) if isinstance(k, (list, tuple)) else 1
        return 1


class ModelSpec(BaseModel):
    """矩阵模型：环面（A）或缩放立方体（B_n，需 gamma）"""

    kind: Literal["torus", "scaled"] = Field(default="torus", description="模型类型")
    gamma: Optional[float] = Field(default=None, description="缩放模型的密度 γ")
    periodic_extension: bool = Field(default=False, description="缩放模型是否使用周期延拓 B̃_n")

    @model_validator(mode="after")
    def validate_gamma(self):
        """缩放模型必须给出正的 gamma"""
        if self.kind == "scaled" and (self.gamma is None or self.gamma <= 0):
            raise ValueError(f"scaled 模型要求 gamma > 0，当前值: {self.gamma}")
        return self


class QuadratureSpec(BaseModel):
    """各类数值积分的分辨率；None 取全局默认"""

    cutoff: int = Field(default=16, ge=0, description="傅里叶格点截断 K")
    nodes_per_axis: Optional[int] = Field(default=None, ge=8, description="中点网格每轴节点数")
    steps_per_radius: Optional[int] = Field(default=None, ge=4, description="满射积分每半径步数")
    convolution_steps: Optional[int] = Field(default=None, ge=4, description="直接卷积每半径步数")
    xi_cutoff: Optional[float] = Field(default=None, gt=0, description="ξ 截断")
    xi_step: Optional[float] = Field(default=None, gt=0, description="ξ 网格步长")
    eps0: Optional[float] = Field(default=None, gt=0, description="水平集截断阈值")
    bins_per_side: int = Field(default=2000, ge=1, description="水平集每侧箱数")
    mc_samples: int = Field(default=1_000_000, ge=2, description="相关量蒙特卡洛样本数")


class ToleranceSpec(BaseModel):
    """比较容差"""

    mc_se: float = Field(default_factory=lambda: settings.MC_TOLERANCE_SE, gt=0, description="蒙特卡洛标准误倍数")
    quadrature_rel: float = Field(
        default_factory=lambda: settings.QUADRATURE_TOLERANCE_REL, gt=0, description="求积相对容差"
    )
    reduction_rel: float = Field(
        default_factory=lambda: settings.REDUCTION_TOLERANCE_REL, gt=0, description="归约一致性相对容差"
    )
    rate: float = Field(default=0.05, ge=0, le=1, description="命中率类指标允许的缺失比例")
    bound_rate: float = Field(default=0.10, ge=0, le=1, description="Poisson 上界允许的失效比例")


class ExperimentConfig(BaseModel):
    """一次实验的完整配置"""

    command: Command = Field(description="实验命令")
    kernel: KernelSpec = Field(description="核描述")
    model: ModelSpec = Field(default_factory=ModelSpec, description="矩阵模型")
    n_list: List[int] = Field(default_factory=lambda: [500], description="矩阵规模列表")
    realizations: int = Field(default=10, description="每个 n 的实现次数")
    master_seed: int = Field(default=0, ge=0, description="主种子")
    moments: List[int] = Field(default_factory=lambda: [1, 2, 3], description="矩阶数")
    gammas: List[float] = Field(default_factory=list, description="密度扫描的 γ 列表")
    windows: List[List[float]] = Field(default_factory=list, description="μ_n 计数窗口 [a, b)")
    lattice_k: List[int] = Field(default_factory=lambda: [0], description="伪特征向量的格点 k")
    norms: List[Union[float, str]] = Field(default_factory=lambda: [2, "inf"], description="残差范数")
    correlation_k: List[int] = Field(default_factory=lambda: [1], description="α_{m,k} 的幂次 k")
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    tolerance: ToleranceSpec = Field(default_factory=ToleranceSpec)
    output_dir: Optional[str] = Field(default=None, description="输出目录，默认 ERM_OUTPUT_ROOT")
    threads: int = Field(default=1, description="并发实现数")
    strict: bool = Field(default=False, description="严格模式：逐样本校验恒等式")
    write_points: bool = Field(default=False, description="写出首个实现的点集")
    write_spectra: bool = Field(default=False, description="写出每个实现的谱")
    write_matrices: bool = Field(default=False, description="以二进制写出首个实现的矩阵")
    load_points: Optional[str] = Field(
        default=None, description="从点集 CSV 读入点，代替采样（环面模型，单个 n，单次实现）"
    )

    @field_validator("n_list")
    @classmethod
    def validate_n_list(cls, v):
        """n_list 非空且全部 >= 1"""
        if not v:
            raise ValueError("n_list 不能为空")
        if any(n < 1 for n in v):
            raise ValueError(f"n_list 中的矩阵规模必须 >= 1，当前值: {v}")
        return v

    @field_validator("realizations")
    @classmethod
    def validate_realizations(cls, v):
        if v < 1:
            raise ValueError(f"realizations 必须 >= 1，当前值: {v}")
        return v

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v):
        if v < 1:
            raise ValueError(f"threads 必须 >= 1，当前值: {v}")
        return v

    @field_validator("moments")
    @classmethod
    def validate_moments(cls, v):
        if not v or any(m < 1 for m in v):
            raise ValueError(f"moments 必须非空且每个阶数 >= 1，当前值: {v}")
        return v

    @field_validator("windows")
    @classmethod
    def validate_windows(cls, v):
        """每个窗口为 [a, b)，a < b"""
        for window in v:
            if len(window) != 2 or not window[0] < window[1]:
                raise ValueError(f"窗口必须为 [a, b) 且 a < b，当前值: {window}")
        return v

    @field_validator("norms")
    @classmethod
    def validate_norms(cls, v):
        for p in v:
            if isinstance(p, str):
                if p != "inf":
                    raise ValueError(f"范数只能是 >= 2 的数或 'inf'，当前值: {p}")
            elif p < 2:
                raise ValueError(f"范数只能是 >= 2 的数或 'inf'，当前值: {p}")
        return v


@dataclass(frozen=True)
class Diagnostic:
    """配置诊断：出错字段与违反的约束"""

    field: str
    constraint: str

    def __str__(self) -> str:
        return f"{self.field}: {self.constraint}"


def _semantic_checks(config: ExperimentConfig) -> List[Diagnostic]:
    # 延迟导入，避免 kernel_factory ↔ config 的循环依赖
    from ermlab.domain.experiments.kernel_factory import build_kernel_for

    diagnostics: List[Diagnostic] = []
    try:
        kernel = build_kernel_for(config)
    except ErmLabError as e:
        kernel = None
        diagnostics.append(Diagnostic("kernel.params", e.message))
    if kernel is not None and not kernel.hermitian:
        diagnostics.append(Diagnostic("kernel", f"{kernel.kernel_id} 非厄米，谱研究要求厄米核"))
    if config.command == "correlations" and kernel is not None and not kernel.is_real:
        diagnostics.append(Diagnostic("kernel", "correlations 要求实值核"))
    if config.model.kind == "scaled" and config.model.gamma is not None:
        too_small = [n for n in config.n_list if n < config.model.gamma]
        if too_small:
            diagnostics.append(
                Diagnostic("n_list", f"缩放模型要求 n >= gamma={config.model.gamma}，违反: {too_small}")
            )
    if config.command == "density-sweep" and not config.gammas:
        diagnostics.append(Diagnostic("gammas", "density-sweep 需要非空的 gammas"))
    if config.command in ("density-sweep", "level-set") and config.model.kind != "scaled":
        diagnostics.append(Diagnostic("model.kind", f"{config.command} 需要 scaled 模型"))
    if config.command == "poisson-bound":
        if config.model.kind != "scaled":
            diagnostics.append(Diagnostic("model.kind", "poisson-bound 需要 scaled 模型"))
        if config.kernel.d < 2:
            diagnostics.append(Diagnostic("kernel.params.d", "poisson-bound 要求 d >= 2"))
    if config.command in ("measure-compare", "eigenvector-residual", "correlations") and config.model.kind != "torus":
        diagnostics.append(Diagnostic("model.kind", f"{config.command} 需要 torus 模型"))
    if config.command == "eigenvector-residual" and len(config.lattice_k) != config.kernel.d:
        diagnostics.append(
            Diagnostic("lattice_k", f"格点维度 {len(config.lattice_k)} 与核维度 {config.kernel.d} 不一致")
        )
    if max(config.moments) > settings.MAX_MOMENT_ORDER and config.command in (
        "moment-convergence",
        "density-sweep",
    ) and config.model.kind == "scaled":
        diagnostics.append(
            Diagnostic("moments", f"满射求积的阶数上限为 {settings.MAX_MOMENT_ORDER}")
        )
    if config.load_points is not None:
        diagnostics.extend(_check_loaded_points(config))
    return diagnostics


def _check_loaded_points(config: ExperimentConfig) -> List[Diagnostic]:
    """读入的点集只替代环面模型的单次实现，规模与维度必须和配置一致"""
    diagnostics: List[Diagnostic] = []
    if config.model.kind != "torus":
        diagnostics.append(Diagnostic("model.kind", "load_points 只支持 torus 模型"))
    if config.realizations != 1:
        diagnostics.append(Diagnostic("realizations", "load_points 要求 realizations = 1"))
    try:
        pts = PointSetCsv.read(Path(config.load_points))
    except (FileNotFoundError, ValueError, ErmLabError) as e:
        diagnostics.append(Diagnostic("load_points", str(e)))
        return diagnostics
    if config.n_list != [pts.n]:
        diagnostics.append(Diagnostic("n_list", f"load_points 含 {pts.n} 个点，n_list 必须为 [{pts.n}]"))
    if pts.d != config.kernel.d:
        diagnostics.append(Diagnostic("load_points", f"点集维度 {pts.d} 与核维度 {config.kernel.d} 不一致"))
    return diagnostics


def validate(config: Union[ExperimentConfig, Dict[str, Any]]) -> List[Diagnostic]:
    """
    校验实验配置

    Returns:
        诊断列表；为空表示可以运行
    """
    if isinstance(config, ExperimentConfig):
        parsed = config
    else:
        try:
            parsed = ExperimentConfig.model_validate(config)
        except ValidationError as e:
            return [
                Diagnostic(".".join(str(part) for part in err["loc"]) or "<root>", err["msg"])
                for err in e.errors()
            ]
    return _semantic_checks(parsed)


class ExperimentConfigLoader:
    """实验配置加载器"""

    @staticmethod
    def load(config_path: Path) -> Dict[str, Any]:
        """
        读取 YAML / JSON 配置文档

        Raises:
            FileNotFoundError: 文件不存在
            ValueError: 文档格式错误或为空
        """
        if not config_path.exists():
            raise FileNotFoundError(f"实验配置文件不存在: {config_path}")
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"配置文件格式错误: {e}")
        if not isinstance(data, dict):
            raise ValueError(f"配置文件内容必须是映射: {config_path}")
        logger.info("成功读取实验配置: %s", config_path)
        return data

    @staticmethod
    def apply_overrides(data: Dict[str, Any], **overrides: Any) -> Dict[str, Any]:
        """命令行参数覆盖单个字段；值为 None 的参数忽略"""
        merged = dict(data)
        for key, value in overrides.items():
            if value is not None:
                merged[key] = value
        return merged
