"""
Data utilities package
"""

from .data_processor import DataProcessor
from .ion_tables import ION_TABLES, estimate_rows, table_names, table_rows

__all__ = ['DataProcessor', 'ION_TABLES', 'estimate_rows', 'table_names', 'table_rows']
