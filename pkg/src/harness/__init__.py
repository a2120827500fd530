from .bench import BenchRecord, BenchReport, config_hash, run_indexing_bench, run_learning_bench
from .persistence import load_index, read_index, save_index, write_index

__all__ = [
    'BenchRecord', 'BenchReport', 'config_hash', 'run_indexing_bench', 'run_learning_bench',
    'load_index', 'read_index', 'save_index', 'write_index',
]
