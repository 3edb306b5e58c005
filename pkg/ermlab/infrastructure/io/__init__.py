from ermlab.infrastructure.io.matrix_dump import dump_matrix, load_matrix
from ermlab.infrastructure.io.points_csv import PointSetCsv
from ermlab.infrastructure.io.tables import ResultWriter

__all__ = ["PointSetCsv", "ResultWriter", "dump_matrix", "load_matrix"]
