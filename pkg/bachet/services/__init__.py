from .report_manager import ReportManager, read_report
