"""Services module."""
from .report_generator import (
    generate_certificate_report,
    generate_synthesis_report,
    generate_scan_report,
    save_report_to_file,
)

__all__ = [
    "generate_certificate_report",
    "generate_synthesis_report",
    "generate_scan_report",
    "save_report_to_file",
]
