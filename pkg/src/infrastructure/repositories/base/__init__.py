"""
Interfaces base de repositorios
"""

from src.infrastructure.repositories.base.dataset_repository_base import DatasetRepositoryBase
from src.infrastructure.repositories.base.report_repository_base import ReportRepositoryBase

__all__ = ["DatasetRepositoryBase", "ReportRepositoryBase"]
