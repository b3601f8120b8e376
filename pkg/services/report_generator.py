"""PDF summaries of certificates, synthesized potentials and path scans."""
import logging
import os
import tempfile
from datetime import datetime

from fpdf import FPDF

logger = logging.getLogger(__name__)

MAX_TABLE_ROWS = 25


class TransferReportPDF(FPDF):
    """Report page with a title header and page-number footer."""

    def __init__(self, title: str):
        super().__init__()
        self.report_title = title

    def header(self):
        self.set_font('Helvetica', 'B', 16)
        self.cell(0, 10, self.report_title, 0, 1, 'C')
        self.set_font('Helvetica', '', 10)
        self.cell(0, 5, f'Generated: {datetime.now().strftime("%Y-%m-%d %H:%M")}', 0, 1, 'C')
        self.ln(5)

    def footer(self):
        self.set_y(-15)
        self.set_font('Helvetica', 'I', 8)
        self.cell(0, 10, f'Page {self.page_no()}', 0, 0, 'C')

    def section(self, heading: str):
        self.set_font('Helvetica', 'B', 12)
        self.cell(0, 8, heading, 0, 1)
        self.set_font('Helvetica', '', 10)

    def lines(self, rows):
        for row in rows:
            self.cell(0, 6, row, 0, 1)
        self.ln(4)

    def table(self, headers: list[str], widths: list[int], rows: list[list[str]]):
        self.set_font('Helvetica', 'B', 9)
        for text, width in zip(headers, widths):
            self.cell(width, 7, text, 1, 0, 'C')
        self.ln()
        self.set_font('Helvetica', '', 9)
        for row in rows[:MAX_TABLE_ROWS]:
            for text, width in zip(row, widths):
                self.cell(width, 6, text, 1, 0, 'C')
            self.ln()
        if len(rows) > MAX_TABLE_ROWS:
            self.cell(0, 6, f'... {len(rows) - MAX_TABLE_ROWS} more rows omitted', 0, 1)
        self.ln(4)


def _fmt(value, digits: int = 12) -> str:
    if value is None:
        return '-'
    if isinstance(value, float):
        return f'{value:.{digits}g}'
    return str(value)


def _vector(values, digits: int = 8, limit: int = 12) -> str:
    shown = ', '.join(f'{float(x):.{digits}g}' for x in list(values)[:limit])
    return f'[{shown}{", ..." if len(values) > limit else ""}]'


def generate_certificate_report(certificate: dict, graph: dict | None = None) -> bytes:
    """
    Render a certificate (as produced by PSTCertificate.to_dict).

    Args:
        certificate: Certificate dict
        graph: Optional graph JSON dict of the certified instance

    Returns:
        PDF as bytes
    """
    pdf = TransferReportPDF('Perfect State Transfer Certificate')
    pdf.add_page()

    pdf.section('Decision')
    pdf.lines([
        f"Transfer {certificate['source']} -> {certificate['target']}: {certificate['status'].upper()}",
        f"Refusal reason: {certificate['refusal_reason']}",
        f"Minimal transfer time T: {_fmt(certificate.get('transfer_time'))}",
        f"Common denominator: {_fmt(certificate.get('common_denominator'))}, "
        f"multiplier: {_fmt(certificate.get('multiplier'))}",
        f"Fidelity at T: {_fmt(certificate.get('checked_fidelity'))}",
    ])
    if certificate.get('detail'):
        pdf.multi_cell(0, 5, certificate['detail'])
        pdf.ln(4)

    if graph is not None:
        pdf.section('Instance')
        pdf.lines([f"n = {graph['n']}, {len(graph['edges'])} edges"])
        if 'potential' in graph:
            pdf.lines([f"Q = {_vector(graph['potential'])}"])

    pdf.section('Spectral classes on the vertex pair')
    pdf.lines([
        f"E_u = +E_v: {_vector(certificate.get('plus', []))}",
        f"E_u = -E_v: {_vector(certificate.get('minus', []))}",
    ])

    ratios = certificate.get('ratios', [])
    if ratios:
        pdf.section('Gap ratios')
        pdf.table(
            ['Value', 'Fraction', 'Residual'],
            [60, 50, 50],
            [[_fmt(r['value']), f"{r['num']}/{r['den']}", f"{r['residual']:.2e}"] for r in ratios],
        )

    return bytes(pdf.output())


def generate_synthesis_report(result: dict) -> bytes:
    """Render a SynthesisResult dict: potential, odd/odd targets and verification."""
    pdf = TransferReportPDF('Twin Potential Synthesis')
    pdf.add_page()

    pdf.section('Result')
    pdf.lines([
        f"Twins {result['source']} -> {result['target']}",
        f"Transfer time: {_fmt(result['transfer_time'])}",
        f"Achieved fidelity: {_fmt(result['achieved_fidelity'])}",
        f"Newton iterations: {result['newton_iterations']}, residual {result['residual']:.2e}",
        f"max|Q| * t: {_fmt(result['potential_time_product'], 8)}",
        f"Seed {result['seed']}, scale {_fmt(result['scale'], 6)}, d_max {result['d_max']}",
    ])

    pdf.section('Target ratios (2p+1)/(2q+1)')
    pdf.lines([f"Denominator 2q+1 = {result['denominator']} (q = {result['q']})"])
    pdf.table(
        ['i', 'Numerator', 'p'],
        [20, 50, 50],
        [[str(i), str(num), str(p)] for i, (num, p) in enumerate(zip(result['numerators'], result['p']))],
    )

    pdf.section('Potential')
    pdf.table(
        ['Vertex', 'Q'],
        [30, 80],
        [[str(i), _fmt(x)] for i, x in enumerate(result['potential'])],
    )
    return bytes(pdf.output())


def generate_scan_report(report: dict, trials: list[dict] | None = None) -> bytes:
    """Render a path scan summary, optionally with the best-scoring trials."""
    pdf = TransferReportPDF('Path Transfer Scan')
    pdf.add_page()

    best = report['best']
    pdf.section('Summary')
    pdf.lines([
        f"P{report['n']}, {report['trials']} trials, potentials in [-{report['box']}, {report['box']}]"
        f"{' (mirror symmetric)' if report['symmetric'] else ''}",
        f"Seed {report['seed']}, t_max {_fmt(report['t_max'], 6)}",
        f"Best fidelity {_fmt(best['fidelity'])} at t = {_fmt(best['time'])}",
        f"Certificates refused: {report['refused']} / {report['trials']}",
        f"Below threshold {_fmt(report['threshold'])}: {'yes' if report['below_threshold'] else 'no'}",
    ])
    pdf.lines([f"Best potential: {_vector(report['best_potential'])}"])

    if trials:
        ranked = sorted(trials, key=lambda row: -row['fidelity'])
        pdf.section('Best trials')
        pdf.table(
            ['Trial', 'Fidelity', 'Time', 'Refusal'],
            [25, 50, 50, 55],
            [[str(row['trial']), _fmt(row['fidelity']), _fmt(row['time'], 8), row['refusal_reason']] for row in ranked],
        )
    return bytes(pdf.output())


def save_report_to_file(pdf_bytes: bytes, filename: str = None) -> str:
    """Save PDF bytes and return the path; bare names without a path go to the temp directory."""
    if filename is None:
        filename = f"pst_report_{datetime.now().strftime('%Y%m%d_%H%M%S')}.pdf"

    filepath = filename if os.path.dirname(filename) else os.path.join(tempfile.gettempdir(), filename)
    with open(filepath, 'wb') as f:
        f.write(pdf_bytes)
    logger.info("Saved report to %s", filepath)
    return filepath
