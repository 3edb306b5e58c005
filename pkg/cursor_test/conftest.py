"""
pytest 公共配置：把项目根目录加入 sys.path，测试文件可直接 import ermlab
"""
import sys
from pathlib import Path

project_root = Path(__file__).resolve().parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))
