"""Report document, text tables, summary card and pipeline."""

from .card_builder import CardValidator, ReportCardBuilder
from .pipeline import AnalysisOptions, analyze, run_analysis
from .report import Report, read_report, render_report, write_report

__all__ = [
    'CardValidator',
    'ReportCardBuilder',
    'AnalysisOptions',
    'analyze',
    'run_analysis',
    'Report',
    'read_report',
    'render_report',
    'write_report',
]
