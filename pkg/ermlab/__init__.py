"""ERM 谱实验室"""

__version__ = "0.1.0"
